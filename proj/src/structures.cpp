#include "radoforge/structures.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "radoforge/errors.hpp"

namespace radoforge {

RelStructure::RelStructure(Signature sig, int n) : sig_(std::move(sig)), n_(n) {
    if (n < 1) throw std::invalid_argument("universe size must be at least 1");
    cells_.reserve(static_cast<std::size_t>(sig_.relation_count()));
    bits_.reserve(static_cast<std::size_t>(sig_.relation_count()));
    for (int i = 0; i < sig_.relation_count(); ++i) {
        unsigned __int128 cells = 1;
        for (int j = 0; j < sig_.arity(i); ++j) cells *= static_cast<unsigned>(n);
        if (cells > kCellCap)
            throw CapacityError("relation " + sig_.relation(i).name + " needs " +
                                std::to_string(static_cast<double>(cells)) + " cells, cap is 2^40");
        cells_.push_back(static_cast<std::uint64_t>(cells));
        bits_.emplace_back((static_cast<std::uint64_t>(cells) + 63) / 64, 0);
    }
}

std::uint64_t RelStructure::encode(int rel, std::span<const int> tuple) const {
    const int a = sig_.arity(rel);
    if (static_cast<int>(tuple.size()) != a)
        throw std::invalid_argument("tuple length does not match relation arity");
    std::uint64_t code = 0;
    for (int j = 0; j < a; ++j) {
        if (tuple[j] < 0 || tuple[j] >= n_) throw std::invalid_argument("tuple coordinate out of universe");
        code = code * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(tuple[j]);
    }
    return code;
}

void RelStructure::decode(int rel, std::uint64_t code, std::span<int> tuple_out) const {
    const int a = sig_.arity(rel);
    for (int j = a - 1; j >= 0; --j) {
        tuple_out[j] = static_cast<int>(code % static_cast<std::uint64_t>(n_));
        code /= static_cast<std::uint64_t>(n_);
    }
}

void RelStructure::set_code(int rel, std::uint64_t code, bool present) {
    std::uint64_t& w = bits_[static_cast<std::size_t>(rel)][code >> 6];
    const std::uint64_t m = 1ULL << (code & 63);
    w = present ? (w | m) : (w & ~m);
}

std::uint64_t RelStructure::tuple_count(int rel) const {
    std::uint64_t count = 0;
    for (std::uint64_t w : bits_[static_cast<std::size_t>(rel)]) count += static_cast<std::uint64_t>(std::popcount(w));
    return count;
}

Graph::Graph(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
    if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) > kCellCap)
        throw CapacityError("adjacency matrix exceeds the 2^40 cell cap");
    adj_ = BitMatrix(n, n);
}

void Graph::set_edge(int u, int v, bool present) {
    if (u == v) throw std::invalid_argument("graphs are irreflexive");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
    adj_.set(u, v, present);
    adj_.set(v, u, present);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (int v = 0; v < n_; ++v)
        for (std::uint64_t w : adj_.row(v)) twice += static_cast<std::size_t>(std::popcount(w));
    return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

Hypergraph::Hypergraph(int n, int t) : n_(n), t_(t) {
    if (n < 1) throw std::invalid_argument("vertex count must be at least 1");
    if (t < 2 || t > n) throw std::invalid_argument("edge arity must satisfy 2 <= t <= n");
}

std::vector<int> Hypergraph::normalized(std::span<const int> vertices) const {
    if (static_cast<int>(vertices.size()) != t_)
        throw std::invalid_argument("hyperedge has wrong arity");
    std::vector<int> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < t_; ++i) {
        if (sorted[static_cast<std::size_t>(i)] < 0 || sorted[static_cast<std::size_t>(i)] >= n_)
            throw std::invalid_argument("hyperedge vertex out of range");
        if (i > 0 && sorted[static_cast<std::size_t>(i)] == sorted[static_cast<std::size_t>(i - 1)])
            throw std::invalid_argument("hyperedge vertices must be distinct");
    }
    return sorted;
}

void Hypergraph::add_edge(std::span<const int> vertices) { edges_.insert(normalized(vertices)); }

bool Hypergraph::has_edge(std::span<const int> vertices) const {
    return edges_.contains(normalized(vertices));
}

RelStructure sample_random_structure(const Signature& sig, int n, Prng rng) {
    RelStructure a(sig, n);
    for (int rel = 0; rel < sig.relation_count(); ++rel)
        for (std::uint64_t code = 0; code < a.cell_count(rel); ++code)
            if (rng.next_bit()) a.set_code(rel, code, true);
    return a;
}

Graph sample_random_graph(int n, Prng rng) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bit()) g.set_edge(u, v, true);
    return g;
}

Hypergraph sample_random_hypergraph(int n, int t, Prng rng) {
    Hypergraph h(n, t);
    std::vector<int> subset = first_ksubset(t);
    do {
        if (rng.next_bit()) h.add_edge(subset);
    } while (next_ksubset(subset, n));
    return h;
}

} // namespace radoforge
