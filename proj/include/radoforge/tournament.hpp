#pragma once

#include <cstdint>
#include <span>

#include "radoforge/combinatorics.hpp"
#include "radoforge/errors.hpp"
#include "radoforge/prng.hpp"

namespace radoforge {

/// Complete orientation of K_m: for i != j exactly one of i->j, j->i.
class Tournament {
  public:
    Tournament() = default;
    explicit Tournament(int m);

    int size() const { return m_; }
    /// True iff the directed edge i -> j is present.
    bool orient(int i, int j) const { return out_.get(i, j); }
    void set_orient(int i, int j, bool i_to_j);
    /// Bitset of {u : u -> v}.
    std::span<const std::uint64_t> in_neighbors(int v) const { return in_.row(v); }
    int row_words() const { return in_.row_words(); }

    bool operator==(const Tournament&) const = default;

  private:
    int m_ = 0;
    BitMatrix out_, in_;
};

/// Uniformly random orientation.
Tournament random_tournament(int m, Prng rng);

/// True iff every k-subset S of vertices has a common dominator, i.e. a
/// vertex with a directed edge towards every member of S. Work C(m,k)*m.
bool verify_tournament_domination(const Tournament& t, int k,
                                  std::uint64_t budget = kDefaultWorkBudget);

/// Randomized search with verification: sample orientations of K_{2^(3k)}
/// until one dominates all k-subsets. Every returned tournament has passed
/// verify_tournament_domination. Requires k <= 4.
Tournament find_dominating_tournament(int k, Prng rng, int max_tries = 256,
                                      std::uint64_t budget = kDefaultWorkBudget);

} // namespace radoforge
