#include "radoforge/extension_axioms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_set>

#include "radoforge/combinatorics.hpp"

namespace radoforge {

namespace {

long double falling_factorial_ld(int n, int k) {
    long double acc = 1.0L;
    for (int i = 0; i < k; ++i) acc *= static_cast<long double>(n - i);
    return acc;
}

void require_budget(long double work, std::uint64_t budget) {
    if (work > static_cast<long double>(budget)) throw BudgetExceededError(work, budget);
}

std::vector<int> subset_of_mask(const std::vector<int>& s, std::uint64_t mask) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if ((mask >> i) & 1u) out.push_back(s[i]);
    return out;
}

} // namespace

std::vector<AtomicEntry> atomic_entry_list(const Signature& sig, int k) {
    std::vector<AtomicEntry> list;
    for (int rel = 0; rel < sig.relation_count(); ++rel) {
        const int a = sig.arity(rel);
        const std::uint64_t total = ipow_checked(static_cast<std::uint64_t>(k + 1), a);
        std::vector<int> idx(static_cast<std::size_t>(a));
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            bool has_zero = false;
            for (int j = a - 1; j >= 0; --j) {
                idx[static_cast<std::size_t>(j)] = static_cast<int>(c % static_cast<std::uint64_t>(k + 1));
                c /= static_cast<std::uint64_t>(k + 1);
                has_zero |= idx[static_cast<std::size_t>(j)] == 0;
            }
            if (has_zero) list.push_back({rel, idx});
        }
    }
    return list;
}

AtomicType atomic_type_from_mask(const Signature& sig, int k, std::uint64_t mask) {
    const auto list = atomic_entry_list(sig, k);
    AtomicType type{k, {}};
    for (std::size_t j = 0; j < list.size(); ++j)
        if ((mask >> j) & 1u) type.entries.push_back(list[j]);
    return type;
}

std::uint64_t mask_of_atomic_type(const Signature& sig, int k, const AtomicType& type) {
    const auto list = atomic_entry_list(sig, k);
    std::uint64_t mask = 0;
    for (const auto& entry : type.entries) {
        const auto it = std::lower_bound(list.begin(), list.end(), entry);
        if (it == list.end() || !(*it == entry))
            throw std::invalid_argument("atomic type entry is not a valid candidate for this signature");
        mask |= 1ULL << (it - list.begin());
    }
    return mask;
}

EAReport check_ea_graph(const Graph& g, int k, std::uint64_t budget) {
    const int n = g.vertex_count();
    if (k < 1 || k > n - 1) throw std::invalid_argument("check_ea_graph requires 1 <= k <= n-1");
    require_budget(binomial_ld(n, k) * std::pow(2.0L, k) * n, budget);

    const std::uint64_t patterns = 1ULL << k;
    std::vector<char> realized(patterns);
    // Adjacency mask of each candidate v over the sorted set s; bit i is
    // adjacency to s[i]. Returns the least unrealized mask, if any.
    const auto least_missing_for = [&](const std::vector<int>& s) -> std::optional<std::uint64_t> {
        std::fill(realized.begin(), realized.end(), 0);
        std::uint64_t found = 0;
        for (int v = 0; v < n && found < patterns; ++v) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            std::uint64_t mask = 0;
            for (int i = 0; i < k; ++i)
                mask |= static_cast<std::uint64_t>(g.adjacent(v, s[static_cast<std::size_t>(i)])) << i;
            if (!realized[mask]) {
                realized[mask] = 1;
                ++found;
            }
        }
        if (found == patterns) return std::nullopt;
        std::uint64_t missing = 0;
        while (realized[missing]) ++missing;
        return missing;
    };

    if (k == 2) {
        // Word-parallel scan: probe all four adjacency patterns against the
        // two neighbor rows at once; the generic path only reruns on failure
        // to recover the least witness.
        const int words = g.row_words();
        std::vector<std::uint64_t> live(static_cast<std::size_t>(words), ~0ULL);
        if (n & 63) live[static_cast<std::size_t>(words - 1)] = (1ULL << (n & 63)) - 1;
        for (int a = 0; a < n; ++a) {
            const auto ra = g.neighbor_row(a);
            for (int b = a + 1; b < n; ++b) {
                const auto rb = g.neighbor_row(b);
                bool f00 = false, f01 = false, f10 = false, f11 = false;
                for (int w = 0; w < words; ++w) {
                    std::uint64_t cl = live[static_cast<std::size_t>(w)];
                    if (w == (a >> 6)) cl &= ~(1ULL << (a & 63));
                    if (w == (b >> 6)) cl &= ~(1ULL << (b & 63));
                    const std::uint64_t A = ra[static_cast<std::size_t>(w)];
                    const std::uint64_t B = rb[static_cast<std::size_t>(w)];
                    f00 = f00 || ((~A & ~B & cl) != 0);
                    f01 = f01 || ((A & ~B & cl) != 0);
                    f10 = f10 || ((~A & B & cl) != 0);
                    f11 = f11 || ((A & B & cl) != 0);
                    if (f00 && f01 && f10 && f11) break;
                }
                if (!(f00 && f01 && f10 && f11)) {
                    const std::vector<int> s{a, b};
                    return {false, EAViolation{s, subset_of_mask(s, *least_missing_for(s))}};
                }
            }
        }
        return {true, std::nullopt};
    }

    std::vector<int> s = first_ksubset(k);
    do {
        if (const auto missing = least_missing_for(s))
            return {false, EAViolation{s, subset_of_mask(s, *missing)}};
    } while (next_ksubset(s, n));
    return {true, std::nullopt};
}

namespace {

// Hash for base-n encoded hyperedges (fits __int128 for all capacities the
// Hypergraph type admits at desk scale).
struct U128Hash {
    std::size_t operator()(unsigned __int128 x) const {
        std::uint64_t state = static_cast<std::uint64_t>(x) ^
                              (static_cast<std::uint64_t>(x >> 64) * 0x9E3779B97F4A7C15ULL);
        return static_cast<std::size_t>(splitmix64(state));
    }
};

} // namespace

EAReport check_ea_hypergraph(const Hypergraph& h, int k, std::uint64_t budget) {
    const int n = h.vertex_count();
    const int t = h.edge_arity();
    if (k < t - 1 || k > n - 1) throw std::invalid_argument("check_ea_hypergraph requires t-1 <= k <= n-1");
    const std::uint64_t q = binomial(k, t - 1);
    require_budget(binomial_ld(n, k) * std::pow(2.0L, static_cast<long double>(q)) * n * q, budget);
    if (q > 62) throw CapacityError("too many (t-1)-subsets per S to enumerate target families");

    // Base-n encoded edge set for O(1) membership.
    const auto encode = [n](std::span<const int> sorted) {
        unsigned __int128 code = 0;
        for (int v : sorted) code = code * static_cast<unsigned>(n) + static_cast<unsigned>(v);
        return code;
    };
    std::unordered_set<unsigned __int128, U128Hash> edge_codes;
    for (const auto& e : h.edges()) edge_codes.insert(encode(e));

    const std::uint64_t families = 1ULL << q;
    std::vector<int> s = first_ksubset(k);
    std::vector<std::uint64_t> masks;
    std::vector<int> probe(static_cast<std::size_t>(t));
    do {
        // (t-1)-subsets of S in lexicographic order, as index sets into s.
        std::vector<std::vector<int>> subs;
        std::vector<int> d = first_ksubset(t - 1);
        do {
            std::vector<int> verts;
            for (int i : d) verts.push_back(s[static_cast<std::size_t>(i)]);
            subs.push_back(std::move(verts));
        } while (next_ksubset(d, k));

        masks.clear();
        for (int v = 0; v < n; ++v) {
            if (std::find(s.begin(), s.end(), v) != s.end()) continue;
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < subs.size(); ++i) {
                probe.assign(subs[i].begin(), subs[i].end());
                probe.push_back(v);
                std::sort(probe.begin(), probe.end());
                if (edge_codes.contains(encode(probe))) mask |= 1ULL << i;
            }
            masks.push_back(mask);
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        if (masks.size() < families) {
            std::uint64_t missing = 0;
            for (std::uint64_t m : masks) {
                if (m != missing) break;
                ++missing;
            }
            std::vector<std::vector<int>> family;
            for (std::size_t i = 0; i < subs.size(); ++i)
                if ((missing >> i) & 1u) family.push_back(subs[i]);
            return {false, EAViolation{s, std::move(family)}};
        }
    } while (next_ksubset(s, n));
    return {true, std::nullopt};
}

EAReport check_ea_structure(const RelStructure& a, int k, std::uint64_t budget) {
    const int n = a.universe_size();
    const Signature& sig = a.sig();
    if (k < 1 || k > n - 1) throw std::invalid_argument("check_ea_structure requires 1 <= k <= n-1");
    long double type_space = 1.0L;
    for (int i = 0; i < sig.relation_count(); ++i)
        type_space *= std::pow(2.0L, std::pow(static_cast<long double>(k + 1), sig.arity(i)));
    require_budget(falling_factorial_ld(n, k) * type_space * n, budget);

    const auto entries = atomic_entry_list(sig, k);
    if (entries.size() > 62) throw CapacityError("atomic type space too large to enumerate");
    const std::uint64_t types = 1ULL << entries.size();

    std::vector<int> ys = first_distinct_tuple(k);
    std::vector<std::uint64_t> masks;
    std::vector<int> w;
    do {
        masks.clear();
        for (int v0 = 0; v0 < n; ++v0) {
            if (std::find(ys.begin(), ys.end(), v0) != ys.end()) continue;
            std::uint64_t mask = 0;
            for (std::size_t j = 0; j < entries.size(); ++j) {
                const auto& entry = entries[j];
                w.clear();
                for (int idx : entry.indices)
                    w.push_back(idx == 0 ? v0 : ys[static_cast<std::size_t>(idx - 1)]);
                if (a.has(entry.rel, w)) mask |= 1ULL << j;
            }
            masks.push_back(mask);
        }
        std::sort(masks.begin(), masks.end());
        masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
        if (masks.size() < types) {
            std::uint64_t missing = 0;
            for (std::uint64_t m : masks) {
                if (m != missing) break;
                ++missing;
            }
            return {false, EAViolation{ys, atomic_type_from_mask(sig, k, missing)}};
        }
    } while (next_distinct_tuple(ys, n));
    return {true, std::nullopt};
}

WilsonInterval wilson_interval(int successes, int trials, double z) {
    if (trials < 1) throw std::invalid_argument("wilson_interval requires at least one trial");
    const double nd = trials;
    const double phat = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (phat + z2 / (2.0 * nd)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

template <typename TrialFails>
EAFailureEstimate run_trials(int trials, int threads, const TrialFails& trial_fails) {
    if (trials < 1) throw std::invalid_argument("at least one trial required");
    threads = std::max(1, std::min(threads, trials));
    std::vector<int> failures(static_cast<std::size_t>(threads), 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    auto worker = [&](int tid) {
        try {
            for (int i = tid; i < trials; i += threads)
                if (trial_fails(i)) ++failures[static_cast<std::size_t>(tid)];
        } catch (...) {
            errors[static_cast<std::size_t>(tid)] = std::current_exception();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int tid = 0; tid < threads; ++tid) pool.emplace_back(worker, tid);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    int total = 0;
    for (int f : failures) total += f;
    EAFailureEstimate est;
    est.failures = total;
    est.trials = trials;
    est.rate = static_cast<double>(total) / trials;
    est.interval = wilson_interval(total, trials);
    return est;
}

} // namespace

EAFailureEstimate estimate_ea_failure_graph(int n, int k, int trials, Prng rng, std::uint64_t budget,
                                            int threads) {
    return run_trials(trials, threads, [&](int i) {
        return !check_ea_graph(sample_random_graph(n, rng.split(static_cast<std::uint64_t>(i))), k, budget)
                    .holds;
    });
}

EAFailureEstimate estimate_ea_failure_hypergraph(int n, int t, int k, int trials, Prng rng,
                                                 std::uint64_t budget, int threads) {
    return run_trials(trials, threads, [&](int i) {
        return !check_ea_hypergraph(
                    sample_random_hypergraph(n, t, rng.split(static_cast<std::uint64_t>(i))), k, budget)
                    .holds;
    });
}

EAFailureEstimate estimate_ea_failure_structure(const Signature& sig, int n, int k, int trials, Prng rng,
                                                std::uint64_t budget, int threads) {
    return run_trials(trials, threads, [&](int i) {
        return !check_ea_structure(
                    sample_random_structure(sig, n, rng.split(static_cast<std::uint64_t>(i))), k, budget)
                    .holds;
    });
}

} // namespace radoforge
