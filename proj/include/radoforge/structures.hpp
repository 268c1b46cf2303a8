#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "radoforge/combinatorics.hpp"
#include "radoforge/prng.hpp"
#include "radoforge/signature.hpp"

namespace radoforge {

/// Per-relation dense storage cap: n^arity must stay below 2^40 cells.
inline constexpr std::uint64_t kCellCap = 1ULL << 40;

/// Finite relational structure over universe {0..n-1}. Each relation is a
/// dense bitset indexed by the base-n tuple encoding
///   encode(x_1..x_a) = sum x_j * n^(a-j)
/// (first coordinate most significant), which also fixes the canonical
/// serialization order.
class RelStructure {
  public:
    RelStructure(Signature sig, int n);

    const Signature& sig() const { return sig_; }
    int universe_size() const { return n_; }

    std::uint64_t cell_count(int rel) const { return cells_[static_cast<std::size_t>(rel)]; }
    std::uint64_t encode(int rel, std::span<const int> tuple) const;
    void decode(int rel, std::uint64_t code, std::span<int> tuple_out) const;

    bool has(int rel, std::span<const int> tuple) const { return has_code(rel, encode(rel, tuple)); }
    void set(int rel, std::span<const int> tuple, bool present) { set_code(rel, encode(rel, tuple), present); }
    bool has_code(int rel, std::uint64_t code) const {
        return (bits_[static_cast<std::size_t>(rel)][code >> 6] >> (code & 63)) & 1u;
    }
    void set_code(int rel, std::uint64_t code, bool present);

    std::uint64_t tuple_count(int rel) const;

    bool operator==(const RelStructure&) const = default;

  private:
    Signature sig_;
    int n_ = 0;
    std::vector<std::uint64_t> cells_;
    std::vector<std::vector<std::uint64_t>> bits_;
};

/// Simple undirected graph; adjacency stored as one bit row per vertex for
/// fast neighborhood intersection.
class Graph {
  public:
    explicit Graph(int n);

    int vertex_count() const { return n_; }
    bool adjacent(int u, int v) const { return adj_.get(u, v); }
    void set_edge(int u, int v, bool present);
    std::span<const std::uint64_t> neighbor_row(int v) const { return adj_.row(v); }
    int row_words() const { return adj_.row_words(); }

    std::size_t edge_count() const;
    std::vector<std::pair<int, int>> edges() const; // u<v, sorted

    bool operator==(const Graph&) const = default;

  private:
    int n_ = 0;
    BitMatrix adj_;
};

/// t-uniform hypergraph; edges are sorted t-subsets kept in a lexicographic
/// set (the canonical serialization order).
class Hypergraph {
  public:
    Hypergraph(int n, int t);

    int vertex_count() const { return n_; }
    int edge_arity() const { return t_; }

    void add_edge(std::span<const int> vertices);
    bool has_edge(std::span<const int> vertices) const;
    const std::set<std::vector<int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool operator==(const Hypergraph&) const = default;

  private:
    std::vector<int> normalized(std::span<const int> vertices) const;

    int n_ = 0, t_ = 2;
    std::set<std::vector<int>> edges_;
};

/// Uniform samplers: every candidate tuple/edge is included independently
/// with probability 1/2. Pure in (inputs, seed, stream); the Prng is taken
/// by value so repeated calls with the same generator agree byte for byte.
RelStructure sample_random_structure(const Signature& sig, int n, Prng rng);
Graph sample_random_graph(int n, Prng rng);
Hypergraph sample_random_hypergraph(int n, int t, Prng rng);

} // namespace radoforge
