#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace radoforge {

/// Base class for all radoforge-specific failures. Precondition violations
/// use plain std::invalid_argument instead.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed text input. `line` is 1-based; 0 means "not line-specific".
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("parse error at line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

/// An operation would exceed its work budget (counts of elementary checks,
/// see the per-operation work formulas in extension_axioms.hpp et al.).
struct BudgetExceededError : Error {
    long double required;
    std::uint64_t budget;
    BudgetExceededError(long double required_, std::uint64_t budget_)
        : Error("work budget exceeded: requires about " + std::to_string(static_cast<double>(required_)) +
                " elementary checks, budget is " + std::to_string(budget_)),
          required(required_), budget(budget_) {}
};

/// Requested construction cannot fit the parameters (e.g. too few elements
/// per part). Carries the smallest n that would be feasible with the
/// ingredient families actually built.
struct InfeasibleParametersError : Error {
    std::uint64_t minimum_feasible_n;
    InfeasibleParametersError(const std::string& what_, std::uint64_t min_n)
        : Error(what_ + " (minimum feasible n: " + std::to_string(min_n) + ")"),
          minimum_feasible_n(min_n) {}
};

/// Randomized search gave up after its retry budget.
struct ConstructionFailureError : Error {
    using Error::Error;
};

/// Dense storage limits: per-relation cell cap 2^40, arity cap 8.
struct CapacityError : Error {
    using Error::Error;
};

/// Thrown by build_statistical_transduction when the surjective entropy
/// order does not hold; reports the least violating k.
struct OrderViolationError : Error {
    int violating_k;
    OrderViolationError(int k)
        : Error("signatures violate the surjective entropy order at k=" + std::to_string(k)),
          violating_k(k) {}
};

/// Default work budget in elementary checks. Exponential checkers refuse
/// (loudly) instead of silently truncating when an instance exceeds this.
inline constexpr std::uint64_t kDefaultWorkBudget = 10'000'000'000ULL;

} // namespace radoforge
