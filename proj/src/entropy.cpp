#include "radoforge/entropy.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "radoforge/combinatorics.hpp"

namespace radoforge {

namespace {

std::vector<int> sorted_arities_desc(const Signature& sig) {
    std::vector<int> a;
    a.reserve(static_cast<std::size_t>(sig.relation_count()));
    for (const auto& rel : sig.relations()) a.push_back(rel.arity);
    std::sort(a.begin(), a.end(), std::greater<>());
    return a;
}

// All restricted growth strings of length a in lexicographic order; the
// string's values are 0-based class indices ordered by first occurrence.
std::vector<std::vector<int>> partitions_rgs(int a) {
    std::vector<std::vector<int>> out;
    std::vector<int> b(static_cast<std::size_t>(a), 0);
    for (;;) {
        out.push_back(b);
        int i = a - 1;
        for (; i >= 1; --i) {
            int prefix_max = 0;
            for (int j = 0; j < i; ++j) prefix_max = std::max(prefix_max, b[static_cast<std::size_t>(j)]);
            if (b[static_cast<std::size_t>(i)] <= prefix_max) break;
        }
        if (i < 1) return out;
        ++b[static_cast<std::size_t>(i)];
        std::fill(b.begin() + i + 1, b.end(), 0);
    }
}

int class_count(const std::vector<int>& rgs) {
    int m = -1;
    for (int v : rgs) m = std::max(m, v);
    return m + 1;
}

std::int64_t surj_sum(const Signature& sig, int k) {
    std::int64_t sum = 0;
    for (const auto& rel : sig.relations()) sum += surjection_count(rel.arity, k);
    return sum;
}

} // namespace

std::int64_t surjection_count(int a, int k) {
    if (a < 1 || a > 12 || k < 0 || k > 12)
        throw std::invalid_argument("surjection_count supports 1 <= a <= 12 and 0 <= k <= 12");
    __int128 total = 0;
    for (int j = 0; j <= k; ++j) {
        __int128 term = 1;
        for (int e = 0; e < a; ++e) term *= j;
        term *= static_cast<__int128>(binomial(k, j));
        total += ((k - j) % 2 == 0) ? term : -term;
    }
    if (total < 0 || total > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("surjection count out of int64 range");
    return static_cast<std::int64_t>(total);
}

bool geq_lex(const Signature& sigma, const Signature& tau) {
    const int t = sigma.relation_count();
    const int tp = tau.relation_count();
    if (t + tp > 16000) throw std::invalid_argument("too many relations for the power-sum route");
    const unsigned __int128 base = static_cast<unsigned>(t + tp);

    const auto power_sum = [&](const Signature& sig) {
        unsigned __int128 sum = 0;
        for (const auto& rel : sig.relations()) {
            unsigned __int128 pw = 1;
            for (int e = 0; e < rel.arity; ++e) pw *= base;
            sum += pw;
        }
        return sum;
    };
    const bool by_sums = power_sum(sigma) >= power_sum(tau);

    const auto sa = sorted_arities_desc(sigma);
    const auto ta = sorted_arities_desc(tau);
    const bool by_lex = !std::lexicographical_compare(sa.begin(), sa.end(), ta.begin(), ta.end());

    if (by_sums != by_lex)
        throw std::logic_error("lexicographic order definitions disagree (power sums vs sorted tuples)");
    return by_sums;
}

SurjOrderResult geq_surj(const Signature& sigma, const Signature& tau) {
    const int kmax = std::max(sigma.max_arity(), tau.max_arity());
    for (int k = 1; k <= kmax; ++k)
        if (surj_sum(sigma, k) < surj_sum(tau, k)) return {false, k};
    return {true, std::nullopt};
}

Classification classify(LogicClass gen, LogicClass adv, const Signature& sigma, const Signature& tau) {
    if (gen == LogicClass::FO || gen == LogicClass::LFP) {
        const auto res = geq_surj(sigma, tau);
        if (res.holds)
            return {Verdict::Exists,
                    "FO/LFP generator: sigma >=_S tau, the exactly-uniform quantifier-free "
                    "transduction exists and fools every adversary"};
        return {Verdict::NotExists, "FO/LFP generator: sigma >=_S tau fails at k=" +
                                        std::to_string(*res.violating_k) +
                                        ", the (c,k)-type count distinguisher applies"};
    }
    if (adv == LogicClass::FO || adv == LogicClass::LFP) {
        if (!sigma.all_unary())
            return {Verdict::Exists,
                    "LFP[+] generator vs FO/LFP adversary: sigma has a non-unary relation, so the "
                    "input can be canonized and a deterministic existentially-closed output built"};
        if (tau.all_unary() && sigma.unary_count() >= tau.unary_count())
            return {Verdict::Exists,
                    "LFP[+] generator vs FO/LFP adversary: both signatures all-unary and sigma has "
                    "at least as many unary relations; match them up"};
        return {Verdict::NotExists,
                "LFP[+] generator vs FO/LFP adversary: sigma all-unary with too little entropy; "
                "(c,1)-types are automorphism-invariant and the type-count argument applies"};
    }
    // Both logics LFP[+].
    if (geq_lex(sigma, tau))
        return {Verdict::Exists, "LFP[+] vs LFP[+]: sigma >=_L tau, canonize and refill"};
    if (!sigma.all_unary())
        return {Verdict::IffOWF,
                "LFP[+] vs LFP[+]: sigma <_L tau with a non-unary relation; existence is "
                "equivalent to ordinary length-increasing pseudorandom generators"};
    return {Verdict::NotExists, "LFP[+] vs LFP[+]: sigma all-unary and below tau in the "
                                "lexicographic order"};
}

QFTransduction build_statistical_transduction(const Signature& sigma, const Signature& tau) {
    const auto order = geq_surj(sigma, tau);
    if (!order.holds) throw OrderViolationError(*order.violating_k);

    // Canonical injections f_k: enumerate both sides in declaration /
    // restricted-growth order and match sequentially.
    std::map<std::pair<int, std::vector<int>>, std::pair<int, std::vector<int>>> route;
    for (int k = 1; k <= tau.max_arity(); ++k) {
        std::vector<std::pair<int, std::vector<int>>> sources;
        for (int i = 0; i < sigma.relation_count(); ++i)
            for (const auto& rgs : partitions_rgs(sigma.arity(i)))
                if (class_count(rgs) == k) sources.emplace_back(i, rgs);
        std::size_t pos = 0;
        for (int i = 0; i < tau.relation_count(); ++i)
            for (const auto& rgs : partitions_rgs(tau.arity(i))) {
                if (class_count(rgs) != k) continue;
                if (pos >= sources.size())
                    throw std::logic_error("injection ran out of sources despite the order holding");
                route[{i, rgs}] = sources[pos++];
            }
    }

    QFTransduction theta;
    theta.from = sigma;
    theta.to = tau;
    for (int i = 0; i < tau.relation_count(); ++i) {
        const int arity = tau.arity(i);
        std::vector<QFFormula> disjuncts;
        for (const auto& rgs : partitions_rgs(arity)) {
            const auto& [src_rel, src_rgs] = route.at({i, rgs});

            // Class representatives: first variable position per class.
            std::vector<int> rep(static_cast<std::size_t>(class_count(rgs)), -1);
            for (int p = 0; p < arity; ++p)
                if (rep[static_cast<std::size_t>(rgs[static_cast<std::size_t>(p)])] < 0)
                    rep[static_cast<std::size_t>(rgs[static_cast<std::size_t>(p)])] = p;

            std::vector<QFFormula> parts;
            for (int p = 0; p < arity; ++p)
                for (int q = p + 1; q < arity; ++q)
                    parts.push_back(rgs[static_cast<std::size_t>(p)] == rgs[static_cast<std::size_t>(q)]
                                        ? QFFormula::equal(p, q)
                                        : QFFormula::not_equal(p, q));

            std::vector<int> atom_vars;
            atom_vars.reserve(src_rgs.size());
            for (int cls : src_rgs) atom_vars.push_back(rep[static_cast<std::size_t>(cls)]);
            parts.push_back(QFFormula::atom(src_rel, std::move(atom_vars)));
            disjuncts.push_back(QFFormula::conjunction(std::move(parts)));
        }
        theta.formulas.push_back(QFFormula::disjunction(std::move(disjuncts)));
    }
    validate(theta);
    return theta;
}

std::vector<CKEntry> ck_entry_list(const Signature& sig, int c, int k) {
    if (c < 1 || k < 1 || k > c) throw std::invalid_argument("ck_entry_list needs 1 <= k <= c");
    std::vector<CKEntry> out;
    for (int rel = 0; rel < sig.relation_count(); ++rel) {
        const int a = sig.arity(rel);
        for (int kp = 1; kp <= std::min(k, a); ++kp) {
            std::vector<int> support_idx = first_ksubset(kp);
            do {
                std::vector<int> support;
                for (int idx : support_idx) support.push_back(idx + 1); // 1-based positions
                // All a-tuples over the support, lexicographic; keep the
                // surjective ones.
                std::vector<int> digits(static_cast<std::size_t>(a), 0);
                for (;;) {
                    unsigned seen = 0;
                    for (int d : digits) seen |= 1u << d;
                    if (seen == (1u << kp) - 1) {
                        CKEntry entry;
                        entry.rel = rel;
                        entry.support = support;
                        for (int d : digits) entry.surj.push_back(support[static_cast<std::size_t>(d)]);
                        out.push_back(std::move(entry));
                    }
                    int pos = a - 1;
                    while (pos >= 0 && digits[static_cast<std::size_t>(pos)] == kp - 1) --pos;
                    if (pos < 0) break;
                    ++digits[static_cast<std::size_t>(pos)];
                    std::fill(digits.begin() + pos + 1, digits.end(), 0);
                }
            } while (next_ksubset(support_idx, c));
        }
    }
    return out;
}

std::uint64_t ck_type_mask(const RelStructure& a, std::span<const int> ys, int k,
                           const std::vector<CKEntry>& entries) {
    if (entries.size() > 62) throw CapacityError("(c,k)-type space too large for mask form");
    std::uint64_t mask = 0;
    std::vector<int> tuple;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        tuple.clear();
        for (int pos : entries[e].surj) tuple.push_back(ys[static_cast<std::size_t>(pos - 1)]);
        if (a.has(entries[e].rel, tuple)) mask |= 1ULL << e;
    }
    return mask;
}

CKType ck_type_of(const RelStructure& a, std::span<const int> ys, int k) {
    const int c = static_cast<int>(ys.size());
    if (k < 1 || k > c) throw std::invalid_argument("ck_type_of needs 1 <= k <= |ys|");
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (ys[i] < 0 || ys[i] >= a.universe_size()) throw std::invalid_argument("element out of universe");
        for (std::size_t j = i + 1; j < ys.size(); ++j)
            if (ys[i] == ys[j]) throw std::invalid_argument("elements must be pairwise distinct");
    }
    const auto entries = ck_entry_list(a.sig(), c, k);
    const std::uint64_t mask = ck_type_mask(a, ys, k, entries);
    CKType type{c, k, {}};
    for (std::size_t e = 0; e < entries.size(); ++e)
        if ((mask >> e) & 1u) type.entries.push_back(entries[e]);
    return type;
}

std::uint64_t type_count_bound(const Signature& sig, int c, int k) {
    if (c < 0 || k < 0) throw std::invalid_argument("type_count_bound needs c, k >= 0");
    unsigned __int128 total = 0;
    for (int kp = 1; kp <= k; ++kp) {
        const unsigned __int128 chooses = binomial(c, kp);
        for (const auto& rel : sig.relations())
            total += static_cast<unsigned __int128>(surjection_count(rel.arity, kp)) * chooses;
        if (total > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("type-count exponent exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(total);
}

int find_distinguisher_c(const Signature& sigma, const Signature& tau, int k) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (surj_sum(sigma, k) >= surj_sum(tau, k))
        throw std::invalid_argument("k does not violate the surjective order for these signatures");
    constexpr int kCap = 1'000'000;
    for (int c = k; c <= kCap; ++c)
        if (type_count_bound(sigma, c, k) < type_count_bound(tau, c, k)) return c;
    throw Error("no distinguisher arity found below the safety cap");
}

TypeRealization eval_type_realization(const RelStructure& b, int c, int k, std::uint64_t budget) {
    const int n = b.universe_size();
    if (c < 1 || c > n) throw std::invalid_argument("need 1 <= c <= n");
    if (k < 1 || k > c) throw std::invalid_argument("need 1 <= k <= c");
    const auto entries = ck_entry_list(b.sig(), c, k);
    if (entries.size() > 62) throw CapacityError("(c,k)-type space too large to enumerate");

    long double work = static_cast<long double>(entries.size());
    for (int i = 0; i < c; ++i) work *= static_cast<long double>(n - i);
    if (work > static_cast<long double>(budget)) throw BudgetExceededError(work, budget);

    std::vector<std::uint64_t> masks;
    std::vector<int> ys = first_distinct_tuple(c);
    do {
        masks.push_back(ck_type_mask(b, ys, k, entries));
    } while (next_distinct_tuple(ys, n));

    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    const unsigned __int128 type_count = static_cast<unsigned __int128>(1) << entries.size();
    if (static_cast<unsigned __int128>(masks.size()) == type_count) return {true, std::nullopt};

    std::uint64_t missing = 0;
    for (std::uint64_t m : masks) {
        if (m != missing) break;
        ++missing;
    }
    CKType type{c, k, {}};
    for (std::size_t e = 0; e < entries.size(); ++e)
        if ((missing >> e) & 1u) type.entries.push_back(entries[e]);
    return {false, std::move(type)};
}

} // namespace radoforge
