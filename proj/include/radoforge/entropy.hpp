#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radoforge/errors.hpp"
#include "radoforge/qf_formula.hpp"
#include "radoforge/signature.hpp"
#include "radoforge/structures.hpp"

namespace radoforge {

/// T(a,k): number of surjections from an a-set onto a k-set, via the
/// inclusion-exclusion sum sum_{j=0..k} (-1)^(k-j) j^a C(k,j). Exact
/// integer arithmetic; requires 1 <= a <= 12 and 0 <= k <= 12.
std::int64_t surjection_count(int a, int k);

/// Lexicographic entropy order sigma >=_L tau. Computed both by the
/// base-(t+t') power-sum inequality and by descending-sorted lexicographic
/// comparison of arity tuples; the two routes are asserted to agree.
bool geq_lex(const Signature& sigma, const Signature& tau);

struct SurjOrderResult {
    bool holds = false;
    std::optional<int> violating_k; // least violating k when !holds
};

/// Surjective entropy order sigma >=_S tau: for all k >= 1 the T(a_i,k)
/// sums dominate. Checking k up to max(max arity) suffices since T(a,k)=0
/// for k > a.
SurjOrderResult geq_surj(const Signature& sigma, const Signature& tau);

enum class LogicClass { FO, LFP, LFPparity };
enum class Verdict { Exists, NotExists, IffOWF };

struct Classification {
    Verdict verdict = Verdict::NotExists;
    std::string reason;
};

/// Existence of an (L1, L2)-pseudorandom transduction from sigma to tau,
/// by generator/adversary logic pair:
///   gen FO or LFP (any adversary):    Exists iff sigma >=_S tau
///   gen LFP[+], adv FO or LFP:        Exists iff sigma has a non-unary
///                                     relation, or both are all-unary and
///                                     sigma has at least as many relations
///   gen LFP[+], adv LFP[+]:           Exists if sigma >=_L tau; IffOWF if
///                                     sigma <_L tau and sigma not
///                                     all-unary; NotExists otherwise
Classification classify(LogicClass gen, LogicClass adv, const Signature& sigma, const Signature& tau);

/// Synthesizes the exactly-uniform quantifier-free transduction that exists
/// whenever sigma >=_S tau: for each target relation and each equivalence
/// pattern of its variables (k classes), route to a distinct
/// (source relation, pattern) pair through canonical injections f_k
/// (first-fit over source relations in declaration order, patterns in
/// restricted-growth-string order, k ascending). Applying the result to a
/// uniform sigma-structure yields exactly the uniform tau-distribution.
/// Throws OrderViolationError (with the least violating k) otherwise.
QFTransduction build_statistical_transduction(const Signature& sigma, const Signature& tau);

/// One fact of a (c,k)-type: relation `rel` holds on the tuple
/// (y_{surj[0]}, ..., y_{surj[a-1]}); `support` is the sorted set of
/// positions used (1-based, size <= k) and surj maps coordinates onto it
/// surjectively.
struct CKEntry {
    int rel = 0;
    std::vector<int> support;
    std::vector<int> surj;
    auto operator<=>(const CKEntry&) const = default;
};

struct CKType {
    int c = 0, k = 0;
    std::vector<CKEntry> entries;
    bool operator==(const CKType&) const = default;
};

/// Canonical enumeration of candidate entries: relations in declaration
/// order; supports by size then lexicographically; surjections in
/// lexicographic order. Types as bitmasks set bit j for the j-th entry.
std::vector<CKEntry> ck_entry_list(const Signature& sig, int c, int k);

/// The (c,k)-type of an ordered tuple of distinct elements (c = ys.size()).
CKType ck_type_of(const RelStructure& a, std::span<const int> ys, int k);
std::uint64_t ck_type_mask(const RelStructure& a, std::span<const int> ys, int k,
                           const std::vector<CKEntry>& entries);

/// log2 of the number of possible (c,k)-types:
/// sum_{k'=1..k} sum_i T(a_i,k') C(c,k'). Throws std::overflow_error
/// beyond 64 bits (callers compare exponents, never materialize 2^exp).
std::uint64_t type_count_bound(const Signature& sig, int c, int k);

/// Least c >= k whose sigma-side type exponent drops below tau's, given a
/// k violating sigma >=_S tau. The C(c,k) coefficient gap guarantees
/// termination; a hard cap of 10^6 guards against misuse.
int find_distinguisher_c(const Signature& sigma, const Signature& tau, int k);

struct TypeRealization {
    bool all_realized = false;
    std::optional<CKType> missing; // least unrealized type when !all_realized
};

/// Does every (c,k)-type occur as the type of some ordered distinct c-tuple
/// of B? Work (n)_c * |entries|, budget-checked.
TypeRealization eval_type_realization(const RelStructure& b, int c, int k,
                                      std::uint64_t budget = kDefaultWorkBudget);

} // namespace radoforge
