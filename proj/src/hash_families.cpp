#include "radoforge/hash_families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "radoforge/combinatorics.hpp"

namespace radoforge {

namespace {

constexpr int kMaxFamilyK = 4;
constexpr int kGreedyBatch = 8;    // 4 random + 4 repair candidates per round
constexpr int kGreedyRoundCap = 512;
constexpr int kBuildRetries = 8;
constexpr int kFallbackVerifyTrials = 20000;

void check_family_params(int n, int k, int min_n) {
    if (k < 1 || k > kMaxFamilyK)
        throw std::invalid_argument("family parameter k must be in 1..4");
    if (n < min_n)
        throw std::invalid_argument("ground set too small: need n >= " + std::to_string(min_n));
}

std::vector<std::uint64_t> random_subset(int n, Prng& rng) {
    std::vector<std::uint64_t> bits(static_cast<std::size_t>((n + 63) / 64), 0);
    for (int v = 0; v < n; ++v)
        if (rng.next_bit()) bits[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
    return bits;
}

bool in_subset(const std::vector<std::uint64_t>& bits, int v) {
    return (bits[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
}

// Sorted random k-subset of 0..n-1.
std::vector<int> random_ksubset(int n, int k, Prng& rng) {
    std::vector<int> s;
    while (static_cast<int>(s.size()) < k) {
        const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
    }
    std::sort(s.begin(), s.end());
    return s;
}

// Flat list of all k-subsets (k * C(n,k) entries) with a parallel mask of
// still-uncovered patterns per subset. Entries with mask 0 are compacted
// away between rounds.
struct CoverState {
    int k;
    std::vector<std::uint16_t> elems16; // valid when n <= 65535
    std::vector<std::uint16_t> masks;

    std::size_t count() const { return masks.size(); }
    void compact() {
        std::size_t out = 0;
        for (std::size_t i = 0; i < masks.size(); ++i) {
            if (masks[i] == 0) continue;
            masks[out] = masks[i];
            for (int j = 0; j < k; ++j)
                elems16[out * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
                    elems16[i * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
            ++out;
        }
        masks.resize(out);
        elems16.resize(out * static_cast<std::size_t>(k));
    }
};

} // namespace

UniversalSet build_universal_set(int n, int k, FamilyBackend backend, Prng rng, std::uint64_t budget) {
    check_family_params(n, k, 2 * k);
    if (n > 65535) throw CapacityError("universal-set builder supports ground sets up to 65535");

    UniversalSet u{n, k, {}};
    if (backend == FamilyBackend::randomized) {
        const int count = static_cast<int>(
            std::ceil(std::pow(2.0, k) * (k * std::log(n) + k * std::log(2.0) + 3.0)));
        for (int attempt = 0; attempt < kBuildRetries; ++attempt) {
            Prng attempt_rng = rng.split(static_cast<std::uint64_t>(attempt));
            u.sets.clear();
            for (int i = 0; i < count; ++i) u.sets.push_back(random_subset(n, attempt_rng));
            const long double verify_work = binomial_ld(n, k) * u.size();
            const bool ok = verify_work <= static_cast<long double>(budget)
                                ? verify_universal_set(u, budget)
                                : verify_universal_set_sampled(u, kFallbackVerifyTrials,
                                                               attempt_rng.split(~0ULL));
            if (ok) return u;
        }
        throw ConstructionFailureError("randomized universal-set construction kept failing verification");
    }

    // Greedy backend. Coverage constraints are all (S, pattern) pairs.
    CoverState cover{k, {}, {}};
    {
        std::vector<int> s = first_ksubset(k);
        do {
            for (int v : s) cover.elems16.push_back(static_cast<std::uint16_t>(v));
            cover.masks.push_back(static_cast<std::uint16_t>((1u << (1 << k)) - 1));
        } while (next_ksubset(s, n));
    }

    const auto trace_of = [&](const std::vector<std::uint64_t>& bits, std::size_t idx) {
        unsigned tr = 0;
        for (int j = 0; j < k; ++j)
            tr |= static_cast<unsigned>(in_subset(
                      bits, cover.elems16[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)]))
                  << j;
        return tr;
    };

    // Repair candidate: walk uncovered constraints from a random offset and
    // pin set membership on S to realize each subset's least uncovered
    // pattern whenever consistent with earlier pins.
    const auto repair_candidate = [&](Prng& crng) {
        std::vector<std::int8_t> state(static_cast<std::size_t>(n), -1);
        const std::size_t total = cover.count();
        const std::size_t offset = total ? static_cast<std::size_t>(crng.below(total)) : 0;
        for (std::size_t step = 0; step < total; ++step) {
            const std::size_t idx = (offset + step) % total;
            const unsigned pattern = static_cast<unsigned>(std::countr_zero(cover.masks[idx]));
            bool consistent = true;
            for (int j = 0; j < k && consistent; ++j) {
                const int v = cover.elems16[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
                const std::int8_t want = static_cast<std::int8_t>((pattern >> j) & 1u);
                consistent = state[static_cast<std::size_t>(v)] < 0 || state[static_cast<std::size_t>(v)] == want;
            }
            if (!consistent) continue;
            for (int j = 0; j < k; ++j) {
                const int v = cover.elems16[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
                state[static_cast<std::size_t>(v)] = static_cast<std::int8_t>((pattern >> j) & 1u);
            }
        }
        std::vector<std::uint64_t> bits(static_cast<std::size_t>((n + 63) / 64), 0);
        for (int v = 0; v < n; ++v) {
            const bool member = state[static_cast<std::size_t>(v)] < 0 ? crng.next_bit()
                                                                       : state[static_cast<std::size_t>(v)] == 1;
            if (member) bits[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
        }
        return bits;
    };

    for (int round = 0; round < kGreedyRoundCap && cover.count() > 0; ++round) {
        Prng round_rng = rng.split(static_cast<std::uint64_t>(round));
        std::vector<std::vector<std::uint64_t>> batch;
        for (int c = 0; c < kGreedyBatch / 2; ++c) batch.push_back(random_subset(n, round_rng));
        for (int c = 0; c < kGreedyBatch / 2; ++c) batch.push_back(repair_candidate(round_rng));

        std::size_t best_score = 0;
        std::size_t best = 0;
        for (std::size_t c = 0; c < batch.size(); ++c) {
            std::size_t score = 0;
            for (std::size_t idx = 0; idx < cover.count(); ++idx)
                if (cover.masks[idx] & (1u << trace_of(batch[c], idx))) ++score;
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        if (best_score == 0) continue; // all candidates useless this round; resample
        for (std::size_t idx = 0; idx < cover.count(); ++idx)
            cover.masks[idx] &= static_cast<std::uint16_t>(~(1u << trace_of(batch[best], idx)));
        cover.compact();
        u.sets.push_back(std::move(batch[best]));
    }
    if (cover.count() > 0)
        throw ConstructionFailureError("greedy universal-set construction did not converge");

    const long double verify_work = binomial_ld(n, k) * u.size();
    const bool ok = verify_work <= static_cast<long double>(budget)
                        ? verify_universal_set(u, budget)
                        : verify_universal_set_sampled(u, kFallbackVerifyTrials, rng.split(~1ULL));
    if (!ok) throw ConstructionFailureError("greedy universal set failed verification");
    return u;
}

bool verify_universal_set(const UniversalSet& u, std::uint64_t budget) {
    const long double work = binomial_ld(u.n, u.k) * std::max(u.size(), 1);
    if (work > static_cast<long double>(budget)) throw BudgetExceededError(work, budget);
    const unsigned all = (1u << (1 << u.k)) - 1;
    std::vector<int> s = first_ksubset(u.k);
    do {
        unsigned seen = 0;
        for (int i = 0; i < u.size() && seen != all; ++i) {
            unsigned tr = 0;
            for (int j = 0; j < u.k; ++j)
                tr |= static_cast<unsigned>(u.contains(i, s[static_cast<std::size_t>(j)])) << j;
            seen |= 1u << tr;
        }
        if (seen != all) return false;
    } while (next_ksubset(s, u.n));
    return true;
}

bool verify_universal_set_sampled(const UniversalSet& u, int trials, Prng rng) {
    if (trials < 1) throw std::invalid_argument("at least one trial required");
    for (int trial = 0; trial < trials; ++trial) {
        const auto s = random_ksubset(u.n, u.k, rng);
        const unsigned want = static_cast<unsigned>(rng.below(1ULL << u.k));
        bool found = false;
        for (int i = 0; i < u.size() && !found; ++i) {
            unsigned tr = 0;
            for (int j = 0; j < u.k; ++j)
                tr |= static_cast<unsigned>(u.contains(i, s[static_cast<std::size_t>(j)])) << j;
            found = tr == want;
        }
        if (!found) return false;
    }
    return true;
}

PerfectHashFamily build_perfect_hash_family(int n, int k, FamilyBackend backend, Prng rng,
                                            std::uint64_t budget) {
    check_family_params(n, k, k);
    if (n > 65535) throw CapacityError("perfect-hash builder supports ground sets up to 65535");

    const auto random_func = [&](Prng& crng) {
        std::vector<std::uint8_t> f(static_cast<std::size_t>(n));
        for (auto& value : f) value = static_cast<std::uint8_t>(1 + crng.below(static_cast<std::uint64_t>(k)));
        return f;
    };

    PerfectHashFamily fam{n, k, {}};
    if (backend == FamilyBackend::randomized) {
        const int count =
            static_cast<int>(std::ceil(std::exp(static_cast<double>(k)) * (k * std::log(n) + 3.0)));
        for (int attempt = 0; attempt < kBuildRetries; ++attempt) {
            Prng attempt_rng = rng.split(static_cast<std::uint64_t>(attempt));
            fam.funcs.clear();
            for (int i = 0; i < count; ++i) fam.funcs.push_back(random_func(attempt_rng));
            const long double verify_work = binomial_ld(n, k) * fam.size();
            const bool ok = verify_work <= static_cast<long double>(budget)
                                ? verify_perfect_hash_family(fam, budget)
                                : verify_perfect_hash_family_sampled(fam, kFallbackVerifyTrials,
                                                                     attempt_rng.split(~0ULL));
            if (ok) return fam;
        }
        throw ConstructionFailureError("randomized perfect-hash construction kept failing verification");
    }

    // Greedy backend: one constraint per k-subset (some member bijective).
    std::vector<std::uint16_t> elems;
    {
        std::vector<int> s = first_ksubset(k);
        do {
            for (int v : s) elems.push_back(static_cast<std::uint16_t>(v));
        } while (next_ksubset(s, n));
    }
    const std::uint16_t fullmask = static_cast<std::uint16_t>((1u << k) - 1);
    const auto bijective_on = [&](const std::vector<std::uint8_t>& f, std::size_t idx) {
        unsigned got = 0;
        for (int j = 0; j < k; ++j)
            got |= 1u << (f[elems[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)]] - 1);
        return got == fullmask;
    };

    const auto repair_candidate = [&](Prng& crng, std::size_t count) {
        std::vector<std::uint8_t> state(static_cast<std::size_t>(n), 0); // 0 = unassigned
        const std::size_t offset = count ? static_cast<std::size_t>(crng.below(count)) : 0;
        for (std::size_t step = 0; step < count; ++step) {
            const std::size_t idx = (offset + step) % count;
            unsigned used = 0;
            bool consistent = true;
            for (int j = 0; j < k && consistent; ++j) {
                const std::uint8_t v = state[elems[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)]];
                if (v == 0) continue;
                const unsigned bit = 1u << (v - 1);
                consistent = (used & bit) == 0;
                used |= bit;
            }
            if (!consistent) continue;
            unsigned next_value = 0;
            for (int j = 0; j < k; ++j) {
                const std::size_t vert = elems[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)];
                if (state[vert] != 0) continue;
                while (used & (1u << next_value)) ++next_value;
                used |= 1u << next_value;
                state[vert] = static_cast<std::uint8_t>(next_value + 1);
            }
        }
        std::vector<std::uint8_t> f(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            f[static_cast<std::size_t>(v)] =
                state[static_cast<std::size_t>(v)] != 0
                    ? state[static_cast<std::size_t>(v)]
                    : static_cast<std::uint8_t>(1 + crng.below(static_cast<std::uint64_t>(k)));
        return f;
    };

    for (int round = 0; round < kGreedyRoundCap && !elems.empty(); ++round) {
        Prng round_rng = rng.split(static_cast<std::uint64_t>(round));
        const std::size_t count = elems.size() / static_cast<std::size_t>(k);
        std::vector<std::vector<std::uint8_t>> batch;
        for (int c = 0; c < kGreedyBatch / 2; ++c) batch.push_back(random_func(round_rng));
        for (int c = 0; c < kGreedyBatch / 2; ++c) batch.push_back(repair_candidate(round_rng, count));

        std::size_t best_score = 0, best = 0;
        for (std::size_t c = 0; c < batch.size(); ++c) {
            std::size_t score = 0;
            for (std::size_t idx = 0; idx < count; ++idx)
                if (bijective_on(batch[c], idx)) ++score;
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        if (best_score == 0) continue;
        std::vector<std::uint16_t> remaining;
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (bijective_on(batch[best], idx)) continue;
            for (int j = 0; j < k; ++j)
                remaining.push_back(elems[idx * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)]);
        }
        elems = std::move(remaining);
        fam.funcs.push_back(std::move(batch[best]));
    }
    if (!elems.empty())
        throw ConstructionFailureError("greedy perfect-hash construction did not converge");

    const long double verify_work = binomial_ld(n, k) * fam.size();
    const bool ok = verify_work <= static_cast<long double>(budget)
                        ? verify_perfect_hash_family(fam, budget)
                        : verify_perfect_hash_family_sampled(fam, kFallbackVerifyTrials, rng.split(~1ULL));
    if (!ok) throw ConstructionFailureError("greedy perfect hash family failed verification");
    return fam;
}

bool verify_perfect_hash_family(const PerfectHashFamily& f, std::uint64_t budget) {
    const long double work = binomial_ld(f.n, f.k) * std::max(f.size(), 1);
    if (work > static_cast<long double>(budget)) throw BudgetExceededError(work, budget);
    const unsigned fullmask = (1u << f.k) - 1;
    std::vector<int> s = first_ksubset(f.k);
    do {
        bool found = false;
        for (int i = 0; i < f.size() && !found; ++i) {
            unsigned got = 0;
            for (int j = 0; j < f.k; ++j) got |= 1u << (f.value(i, s[static_cast<std::size_t>(j)]) - 1);
            found = got == fullmask;
        }
        if (!found) return false;
    } while (next_ksubset(s, f.n));
    return true;
}

bool verify_perfect_hash_family_sampled(const PerfectHashFamily& f, int trials, Prng rng) {
    if (trials < 1) throw std::invalid_argument("at least one trial required");
    const unsigned fullmask = (1u << f.k) - 1;
    for (int trial = 0; trial < trials; ++trial) {
        const auto s = random_ksubset(f.n, f.k, rng);
        bool found = false;
        for (int i = 0; i < f.size() && !found; ++i) {
            unsigned got = 0;
            for (int j = 0; j < f.k; ++j) got |= 1u << (f.value(i, s[static_cast<std::size_t>(j)]) - 1);
            found = got == fullmask;
        }
        if (!found) return false;
    }
    return true;
}

} // namespace radoforge
