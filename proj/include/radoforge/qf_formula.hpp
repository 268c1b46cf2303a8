#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "radoforge/signature.hpp"
#include "radoforge/structures.hpp"

namespace radoforge {

/// Quantifier-free formula over a source signature: relation atoms, equality
/// atoms, boolean constants, negation, conjunction, disjunction. Variables
/// are 0-based indices into the owning formula's free-variable tuple.
class QFFormula {
  public:
    enum class Kind { constant, equality, atom, negation, conjunction, disjunction };

    static QFFormula constant(bool value);
    static QFFormula equal(int a, int b);
    static QFFormula not_equal(int a, int b); // negation(equal)
    static QFFormula atom(int rel, std::vector<int> vars);
    static QFFormula negation(QFFormula f);
    static QFFormula conjunction(std::vector<QFFormula> parts);
    static QFFormula disjunction(std::vector<QFFormula> parts);

    Kind kind() const { return kind_; }
    bool constant_value() const { return value_; }
    int lhs() const { return lhs_; }
    int rhs() const { return rhs_; }
    int relation() const { return rel_; }
    const std::vector<int>& vars() const { return vars_; }
    const std::vector<QFFormula>& children() const { return children_; }

    /// Largest variable index used, or -1 for a closed formula.
    int max_var() const;

    bool evaluate(const RelStructure& a, std::span<const int> binding) const;

    bool operator==(const QFFormula&) const = default;

  private:
    QFFormula() = default;

    Kind kind_ = Kind::constant;
    bool value_ = false;
    int lhs_ = 0, rhs_ = 0;
    int rel_ = 0;
    std::vector<int> vars_;
    std::vector<QFFormula> children_;
};

/// Quantifier-free transduction: one formula per target relation, with
/// free-variable count equal to that relation's arity.
struct QFTransduction {
    Signature from, to;
    std::vector<QFFormula> formulas;

    bool operator==(const QFTransduction&) const = default;
};

void validate(const QFTransduction& theta);

/// Same universe; each target tuple holds iff its formula evaluates true
/// under the tuple binding. The input signature must equal theta.from.
RelStructure apply_qf_transduction(const QFTransduction& theta, const RelStructure& a);

/// S-expression body syntax, e.g.
///   (or (and (neq x1 x2) (atom R1 x1 x2 x1)) (and (eq x1 x2) (atom R2 x1)))
/// with variables x1, x2, ... (1-based) and leaves true / false. The full
/// transduction serializes as
///   QF-TRANSDUCTION v1 / FROM / R <name> <arity>... / TO / ... /
///   FORMULA <target-relation> / <s-expression>
std::string to_sexpr(const QFFormula& f, const Signature& from);
QFFormula parse_sexpr(std::string_view text, const Signature& from, int free_vars);

std::string serialize(const QFTransduction& theta);
QFTransduction parse_transduction(std::string_view text);

} // namespace radoforge
