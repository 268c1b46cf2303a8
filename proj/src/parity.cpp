#include "radoforge/parity.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "radoforge/combinatorics.hpp"

namespace radoforge {

namespace {

void check_distinct_in_range(const Graph& g, std::span<const int> vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (vs[i] < 0 || vs[i] >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (vs[i] == vs[j]) throw std::invalid_argument("vertices must be distinct");
    }
}

// Intersection of the neighbor rows of vs, then popcount parity / emptiness.
int intersection_parity(const Graph& g, std::span<const int> vs) {
    const int words = g.row_words();
    unsigned ones = 0;
    for (int w = 0; w < words; ++w) {
        std::uint64_t acc = ~0ULL;
        for (int v : vs) acc &= g.neighbor_row(v)[static_cast<std::size_t>(w)];
        ones += static_cast<unsigned>(std::popcount(acc));
    }
    return static_cast<int>(ones & 1u);
}

} // namespace

int common_neighbor_parity(const Graph& g, std::span<const int> vs) {
    if (vs.empty()) throw std::invalid_argument("common_neighbor_parity needs a nonempty vertex set");
    check_distinct_in_range(g, vs);
    return intersection_parity(g, vs);
}

ParityPattern parity_pattern_b(const Graph& g, std::span<const int> s, int v) {
    if (s.empty()) throw std::invalid_argument("parity pattern needs a nonempty S");
    check_distinct_in_range(g, s);
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    if (std::find(s.begin(), s.end(), v) != s.end()) throw std::invalid_argument("v must lie outside S");

    ParityPattern pattern;
    pattern.base.assign(s.begin(), s.end());
    std::sort(pattern.base.begin(), pattern.base.end());

    const int words = g.row_words();
    const std::uint32_t subsets = 1u << pattern.base.size();
    for (std::uint32_t b = 1; b < subsets; ++b) {
        unsigned ones = 0;
        for (int w = 0; w < words; ++w) {
            // Seeding with row(v) keeps the padding past n zero even where
            // ~row flips it.
            std::uint64_t acc = g.neighbor_row(v)[static_cast<std::size_t>(w)];
            for (std::size_t i = 0; i < pattern.base.size(); ++i) {
                const auto row = g.neighbor_row(pattern.base[i])[static_cast<std::size_t>(w)];
                acc &= ((b >> i) & 1u) ? row : ~row;
            }
            ones += static_cast<unsigned>(std::popcount(acc));
        }
        if (ones & 1u) pattern.members.push_back(b);
    }
    return pattern;
}

ParityPattern parity_pattern_c(const Graph& g, std::span<const int> s, int v) {
    if (s.empty()) throw std::invalid_argument("parity pattern needs a nonempty S");
    check_distinct_in_range(g, s);
    if (v < 0 || v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
    if (std::find(s.begin(), s.end(), v) != s.end()) throw std::invalid_argument("v must lie outside S");

    ParityPattern pattern;
    pattern.base.assign(s.begin(), s.end());
    std::sort(pattern.base.begin(), pattern.base.end());

    std::vector<int> probe;
    const std::uint32_t subsets = 1u << pattern.base.size();
    for (std::uint32_t c = 1; c < subsets; ++c) {
        probe.assign(1, v);
        for (std::size_t i = 0; i < pattern.base.size(); ++i)
            if ((c >> i) & 1u) probe.push_back(pattern.base[i]);
        if (intersection_parity(g, probe)) pattern.members.push_back(c);
    }
    return pattern;
}

std::optional<int> find_parity_extension(const Graph& g, std::span<const int> s,
                                         const ParityPattern& target) {
    std::vector<int> sorted(s.begin(), s.end());
    std::sort(sorted.begin(), sorted.end());
    if (target.base != sorted) throw std::invalid_argument("target pattern base must equal S");
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (std::find(s.begin(), s.end(), v) != s.end()) continue;
        if (parity_pattern_c(g, s, v) == target) return v;
    }
    return std::nullopt;
}

Hypergraph apply_parity_transduction(const Graph& g, int t) {
    const int n = g.vertex_count();
    if (t < 2 || t > n) throw std::invalid_argument("edge arity must satisfy 2 <= t <= n");
    Hypergraph h(n, t);
    std::vector<int> subset = first_ksubset(t);
    do {
        if (intersection_parity(g, subset)) h.add_edge(subset);
    } while (next_ksubset(subset, n));
    return h;
}

} // namespace radoforge
