#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "radoforge/errors.hpp"
#include "radoforge/prng.hpp"
#include "radoforge/structures.hpp"

namespace radoforge {

/// One requirement of a k-atomic type: relation `rel` must hold on the tuple
/// obtained by substituting the new element for index 0 and the l-th fixed
/// element for index l. Index 0 appears at least once.
struct AtomicEntry {
    int rel = 0;
    std::vector<int> indices; // values in 0..k, length = arity of rel
    auto operator<=>(const AtomicEntry&) const = default;
};

/// A k-atomic type: the set of required entries (all unlisted candidate
/// entries are required NOT to hold).
struct AtomicType {
    int k = 0;
    std::vector<AtomicEntry> entries; // sorted canonically
    bool operator==(const AtomicType&) const = default;
};

/// Canonical enumeration of all candidate entries for (sig, k): relations in
/// declaration order, index tuples in ascending base-(k+1) order, keeping
/// only tuples that contain 0. A type is a subset of this list; the bitmask
/// form sets bit j for the j-th entry of the list.
std::vector<AtomicEntry> atomic_entry_list(const Signature& sig, int k);
AtomicType atomic_type_from_mask(const Signature& sig, int k, std::uint64_t mask);
std::uint64_t mask_of_atomic_type(const Signature& sig, int k, const AtomicType& type);

/// Violation witnesses. `elements` is the sorted set S for graphs and
/// hypergraphs, and the ordered tuple (v_1..v_k) for structures. The target
/// is the unrealizable extension demand:
///   graphs      - the subset T of S (sorted),
///   hypergraphs - the family of (t-1)-subsets of S (sorted tuples, sorted),
///   structures  - the k-atomic type.
struct EAViolation {
    std::vector<int> elements;
    std::variant<std::vector<int>, std::vector<std::vector<int>>, AtomicType> target;
};

struct EAReport {
    bool holds = false;
    std::optional<EAViolation> violation;
};

/// Exhaustive extension-axiom checkers. Witnesses are deterministic: the
/// first S (respectively ordered tuple) in lexicographic order that fails,
/// with the least missing target in the documented enumeration (subsets of S
/// and families as ascending bitmasks, atomic types as ascending masks over
/// atomic_entry_list). Work estimates, checked against `budget` before any
/// work happens:
///   graph:      C(n,k) * 2^k * n
///   hypergraph: C(n,k) * 2^C(k,t-1) * n * C(k,t-1)
///   structure:  (n)_k * 2^(sum (k+1)^a_i) * n
EAReport check_ea_graph(const Graph& g, int k, std::uint64_t budget = kDefaultWorkBudget);
EAReport check_ea_hypergraph(const Hypergraph& h, int k, std::uint64_t budget = kDefaultWorkBudget);
EAReport check_ea_structure(const RelStructure& a, int k, std::uint64_t budget = kDefaultWorkBudget);

struct WilsonInterval {
    double low = 0.0, high = 1.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(int successes, int trials, double z = 1.959963984540054);

struct EAFailureEstimate {
    int failures = 0;
    int trials = 0;
    double rate = 0.0;
    WilsonInterval interval;
};

/// Monte Carlo failure-rate estimates: sample `trials` random inputs (one
/// child stream per trial, so results do not depend on thread count) and
/// count how many fail the corresponding checker.
EAFailureEstimate estimate_ea_failure_graph(int n, int k, int trials, Prng rng,
                                            std::uint64_t budget = kDefaultWorkBudget, int threads = 1);
EAFailureEstimate estimate_ea_failure_hypergraph(int n, int t, int k, int trials, Prng rng,
                                                 std::uint64_t budget = kDefaultWorkBudget, int threads = 1);
EAFailureEstimate estimate_ea_failure_structure(const Signature& sig, int n, int k, int trials, Prng rng,
                                                std::uint64_t budget = kDefaultWorkBudget, int threads = 1);

} // namespace radoforge
