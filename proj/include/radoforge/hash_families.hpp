#pragma once

#include <cstdint>
#include <vector>

#include "radoforge/errors.hpp"
#include "radoforge/prng.hpp"

namespace radoforge {

/// Family of subsets of {0..n-1} whose traces on every k-subset S realize
/// all 2^k patterns. Sets are stored as bitsets over the ground set.
struct UniversalSet {
    int n = 0, k = 0;
    std::vector<std::vector<std::uint64_t>> sets;

    int size() const { return static_cast<int>(sets.size()); }
    bool contains(int set_idx, int v) const {
        return (sets[static_cast<std::size_t>(set_idx)][static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1u;
    }
};

/// Family of functions {0..n-1} -> {1..k} such that every k-subset is mapped
/// bijectively by at least one member.
struct PerfectHashFamily {
    int n = 0, k = 0;
    std::vector<std::vector<std::uint8_t>> funcs;

    int size() const { return static_cast<int>(funcs.size()); }
    int value(int func_idx, int v) const {
        return funcs[static_cast<std::size_t>(func_idx)][static_cast<std::size_t>(v)];
    }
};

enum class FamilyBackend { greedy, randomized };

/// Construction backends (k <= 4, n >= 2k). Correctness rests on the final
/// verification pass, not on the construction:
///   greedy     - repeatedly add the best-of-batch candidate (random plus
///                repair candidates aimed at still-uncovered constraints)
///                until every (S, pattern) pair is covered;
///   randomized - sample ceil(2^k (k ln n + k ln 2 + 3)) uniform subsets.
/// Every returned family has passed its verifier (exhaustive when within
/// budget, sampled otherwise).
UniversalSet build_universal_set(int n, int k, FamilyBackend backend, Prng rng,
                                 std::uint64_t budget = kDefaultWorkBudget);

/// Exhaustive check of the universal-set property; work C(n,k)*|U|.
bool verify_universal_set(const UniversalSet& u, std::uint64_t budget = kDefaultWorkBudget);
/// Statistical check: `trials` random (S, pattern) probes.
bool verify_universal_set_sampled(const UniversalSet& u, int trials, Prng rng);

/// PHF construction (k <= 4, n >= k); randomized size ceil(e^k (k ln n + 3)).
PerfectHashFamily build_perfect_hash_family(int n, int k, FamilyBackend backend, Prng rng,
                                            std::uint64_t budget = kDefaultWorkBudget);

/// Exhaustive check of the perfect-hashing property; work C(n,k)*|F|.
bool verify_perfect_hash_family(const PerfectHashFamily& f, std::uint64_t budget = kDefaultWorkBudget);
bool verify_perfect_hash_family_sampled(const PerfectHashFamily& f, int trials, Prng rng);

} // namespace radoforge
