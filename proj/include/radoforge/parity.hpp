#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "radoforge/structures.hpp"

namespace radoforge {

/// A family of nonempty subsets of a base set S, stored as sorted bitmasks
/// over the positions of the sorted base.
struct ParityPattern {
    std::vector<int> base;
    std::vector<std::uint32_t> members;
    bool operator==(const ParityPattern&) const = default;
};

/// Parity of |{y : y adjacent to every v in vs}|. y ranges over the whole
/// universe; irreflexivity keeps members of vs from witnessing themselves.
int common_neighbor_parity(const Graph& g, std::span<const int> vs);

/// B(v): nonempty B subseteq S with an odd number of vertices adjacent to
/// every vertex of {v} u B and non-adjacent to every vertex of S \ B.
ParityPattern parity_pattern_b(const Graph& g, std::span<const int> s, int v);

/// C(v): nonempty C subseteq S with common_neighbor_parity({v} u C) odd.
ParityPattern parity_pattern_c(const Graph& g, std::span<const int> s, int v);

/// Least v outside S whose C-pattern equals `target` (whose base must be S).
std::optional<int> find_parity_extension(const Graph& g, std::span<const int> s,
                                         const ParityPattern& target);

/// The parity transduction: {v_1..v_t} is a hyperedge iff the number of
/// common neighbors of v_1..v_t is odd.
Hypergraph apply_parity_transduction(const Graph& g, int t);

} // namespace radoforge
