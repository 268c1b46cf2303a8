#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radoforge/errors.hpp"
#include "radoforge/extension_axioms.hpp"
#include "radoforge/hash_families.hpp"
#include "radoforge/prng.hpp"
#include "radoforge/structures.hpp"
#include "radoforge/tournament.hpp"

namespace radoforge {

/// Audit record of a finished construction: the verified tournament, the
/// part layout (contiguous index blocks), and the per-element pattern
/// assignment. Re-deriving the graph/structure from the certificate
/// reproduces it bit-exactly. Serializes to a versioned text block
/// ("RADO-CERT v1").
struct RadoCertificate {
    enum class Kind { graph, structure };

    Kind kind = Kind::graph;
    int n = 0, k = 0;
    Signature sig; // structure kind only
    Tournament tournament;
    std::vector<int> part_start; // size m+1, part j = [part_start[j], part_start[j+1])

    // graph kind: pattern(v) = uset.sets[uset_pattern[v]]
    UniversalSet uset;
    std::vector<int> uset_pattern;

    // structure kind: pattern(v) = (fstar[p.first], atomic type with mask p.second)
    PerfectHashFamily phf;
    std::vector<std::pair<int, std::vector<int>>> fstar; // (phf index, permutation of 1..k)
    std::vector<std::pair<int, std::uint64_t>> struct_pattern;

    int part_of(int v) const;
    /// Composed table of fstar member i: v -> perm[phf_func(v)].
    std::vector<std::uint8_t> fstar_table(int i) const;
};

struct RadoGraphResult {
    Graph graph;
    RadoCertificate certificate;
};

struct RadoStructureResult {
    RelStructure structure;
    RadoCertificate certificate;
};

/// Deterministic (seed-reproducible) construction of an n-vertex graph
/// satisfying EA_k: verified dominating tournament on 2^(3k) vertices,
/// verified (n,k)-universal set, contiguous parts cycling through the
/// universal set, and the cross-part edge rule oriented by the tournament
/// (same-part pairs get no edge). Feasibility requires floor(n / 2^(3k))
/// >= |U| and is checked against the family actually built; the error
/// reports the minimal feasible n for it. The result is post-verified with
/// check_ea_graph whenever that fits the budget.
RadoGraphResult rado_graph(int n, int k, Prng rng, FamilyBackend backend = FamilyBackend::greedy,
                           std::uint64_t budget = kDefaultWorkBudget);

/// Structure analogue: verified perfect hash family closed under
/// permutations of [k], patterns ranging over (closure member, k-atomic
/// type) pairs. A tuple is present iff its part indices have a unique
/// tournament-dominating index, exactly one tuple element lies in that
/// part, and the element's assigned type contains a matching entry;
/// otherwise the tuple is absent.
RadoStructureResult rado_structure(const Signature& sig, int n, int k, Prng rng,
                                   FamilyBackend backend = FamilyBackend::greedy,
                                   std::uint64_t budget = kDefaultWorkBudget);

/// Certificate soundness: recompute the object from its certificate alone.
Graph graph_from_certificate(const RadoCertificate& cert);
RelStructure structure_from_certificate(const RadoCertificate& cert);

std::string serialize(const RadoCertificate& cert);
RadoCertificate parse_certificate(std::string_view text);

} // namespace radoforge
