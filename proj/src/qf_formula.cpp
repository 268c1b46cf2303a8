#include "radoforge/qf_formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "radoforge/errors.hpp"

namespace radoforge {

QFFormula QFFormula::constant(bool value) {
    QFFormula f;
    f.kind_ = Kind::constant;
    f.value_ = value;
    return f;
}

QFFormula QFFormula::equal(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative variable index");
    QFFormula f;
    f.kind_ = Kind::equality;
    f.lhs_ = a;
    f.rhs_ = b;
    return f;
}

QFFormula QFFormula::not_equal(int a, int b) { return negation(equal(a, b)); }

QFFormula QFFormula::atom(int rel, std::vector<int> vars) {
    if (rel < 0) throw std::invalid_argument("negative relation index");
    for (int v : vars)
        if (v < 0) throw std::invalid_argument("negative variable index");
    QFFormula f;
    f.kind_ = Kind::atom;
    f.rel_ = rel;
    f.vars_ = std::move(vars);
    return f;
}

QFFormula QFFormula::negation(QFFormula inner) {
    QFFormula f;
    f.kind_ = Kind::negation;
    f.children_.push_back(std::move(inner));
    return f;
}

QFFormula QFFormula::conjunction(std::vector<QFFormula> parts) {
    if (parts.empty()) return constant(true);
    if (parts.size() == 1) return std::move(parts.front());
    QFFormula f;
    f.kind_ = Kind::conjunction;
    f.children_ = std::move(parts);
    return f;
}

QFFormula QFFormula::disjunction(std::vector<QFFormula> parts) {
    if (parts.empty()) return constant(false);
    if (parts.size() == 1) return std::move(parts.front());
    QFFormula f;
    f.kind_ = Kind::disjunction;
    f.children_ = std::move(parts);
    return f;
}

int QFFormula::max_var() const {
    switch (kind_) {
        case Kind::constant:
            return -1;
        case Kind::equality:
            return std::max(lhs_, rhs_);
        case Kind::atom: {
            int m = -1;
            for (int v : vars_) m = std::max(m, v);
            return m;
        }
        default: {
            int m = -1;
            for (const auto& child : children_) m = std::max(m, child.max_var());
            return m;
        }
    }
}

bool QFFormula::evaluate(const RelStructure& a, std::span<const int> binding) const {
    switch (kind_) {
        case Kind::constant:
            return value_;
        case Kind::equality:
            return binding[static_cast<std::size_t>(lhs_)] == binding[static_cast<std::size_t>(rhs_)];
        case Kind::atom: {
            std::vector<int> tuple(vars_.size());
            for (std::size_t i = 0; i < vars_.size(); ++i)
                tuple[i] = binding[static_cast<std::size_t>(vars_[i])];
            return a.has(rel_, tuple);
        }
        case Kind::negation:
            return !children_.front().evaluate(a, binding);
        case Kind::conjunction:
            return std::all_of(children_.begin(), children_.end(),
                               [&](const QFFormula& c) { return c.evaluate(a, binding); });
        case Kind::disjunction:
            return std::any_of(children_.begin(), children_.end(),
                               [&](const QFFormula& c) { return c.evaluate(a, binding); });
    }
    return false;
}

void validate(const QFTransduction& theta) {
    if (static_cast<int>(theta.formulas.size()) != theta.to.relation_count())
        throw std::invalid_argument("transduction needs one formula per target relation");
    for (int i = 0; i < theta.to.relation_count(); ++i) {
        const auto& f = theta.formulas[static_cast<std::size_t>(i)];
        if (f.max_var() >= theta.to.arity(i))
            throw std::invalid_argument("formula for " + theta.to.relation(i).name +
                                        " uses a variable beyond the relation's arity");
        // Relation indices and atom arities must match the source signature.
        const auto check_atoms = [&](const QFFormula& g, const auto& self) -> void {
            if (g.kind() == QFFormula::Kind::atom) {
                if (g.relation() >= theta.from.relation_count())
                    throw std::invalid_argument("atom references a relation outside the source signature");
                if (static_cast<int>(g.vars().size()) != theta.from.arity(g.relation()))
                    throw std::invalid_argument("atom arity mismatch for relation " +
                                                theta.from.relation(g.relation()).name);
            }
            for (const auto& child : g.children()) self(child, self);
        };
        check_atoms(f, check_atoms);
    }
}

RelStructure apply_qf_transduction(const QFTransduction& theta, const RelStructure& a) {
    if (!(a.sig() == theta.from))
        throw std::invalid_argument("structure signature does not match the transduction source");
    validate(theta);
    const int n = a.universe_size();
    RelStructure b(theta.to, n);
    std::vector<int> binding;
    for (int rel = 0; rel < theta.to.relation_count(); ++rel) {
        binding.assign(static_cast<std::size_t>(theta.to.arity(rel)), 0);
        for (std::uint64_t code = 0; code < b.cell_count(rel); ++code) {
            b.decode(rel, code, binding);
            if (theta.formulas[static_cast<std::size_t>(rel)].evaluate(a, binding))
                b.set_code(rel, code, true);
        }
    }
    return b;
}

std::string to_sexpr(const QFFormula& f, const Signature& from) {
    switch (f.kind()) {
        case QFFormula::Kind::constant:
            return f.constant_value() ? "true" : "false";
        case QFFormula::Kind::equality:
            return "(eq x" + std::to_string(f.lhs() + 1) + " x" + std::to_string(f.rhs() + 1) + ")";
        case QFFormula::Kind::atom: {
            std::string out = "(atom " + from.relation(f.relation()).name;
            for (int v : f.vars()) out += " x" + std::to_string(v + 1);
            return out + ")";
        }
        case QFFormula::Kind::negation: {
            const auto& inner = f.children().front();
            if (inner.kind() == QFFormula::Kind::equality)
                return "(neq x" + std::to_string(inner.lhs() + 1) + " x" + std::to_string(inner.rhs() + 1) +
                       ")";
            return "(not " + to_sexpr(inner, from) + ")";
        }
        case QFFormula::Kind::conjunction:
        case QFFormula::Kind::disjunction: {
            std::string out = f.kind() == QFFormula::Kind::conjunction ? "(and" : "(or";
            for (const auto& child : f.children()) out += " " + to_sexpr(child, from);
            return out + ")";
        }
    }
    return "false";
}

namespace {

struct SexprToken {
    enum class Type { open, close, word } type;
    std::string text;
};

std::vector<SexprToken> tokenize_sexpr(std::string_view text) {
    std::vector<SexprToken> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '(') {
            tokens.push_back({SexprToken::Type::open, "("});
            ++i;
        } else if (c == ')') {
            tokens.push_back({SexprToken::Type::close, ")"});
            ++i;
        } else {
            std::size_t j = i;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
                   text[j] != '(' && text[j] != ')')
                ++j;
            tokens.push_back({SexprToken::Type::word, std::string(text.substr(i, j - i))});
            i = j;
        }
    }
    return tokens;
}

class SexprParser {
  public:
    SexprParser(std::vector<SexprToken> tokens, const Signature& from, int free_vars)
        : tokens_(std::move(tokens)), from_(from), free_vars_(free_vars) {}

    QFFormula parse() {
        QFFormula f = parse_expr();
        if (pos_ != tokens_.size()) throw ParseError(0, "trailing tokens after formula");
        return f;
    }

  private:
    const SexprToken& peek() {
        if (pos_ >= tokens_.size()) throw ParseError(0, "unexpected end of formula");
        return tokens_[pos_];
    }
    SexprToken take() {
        const SexprToken& t = peek();
        ++pos_;
        return t;
    }

    int parse_var(const std::string& word) {
        if (word.size() < 2 || word[0] != 'x') throw ParseError(0, "expected variable like x1, got '" + word + "'");
        int idx = 0;
        for (std::size_t i = 1; i < word.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(word[i])))
                throw ParseError(0, "expected variable like x1, got '" + word + "'");
            idx = idx * 10 + (word[i] - '0');
        }
        if (idx < 1 || idx > free_vars_)
            throw ParseError(0, "variable " + word + " outside the declared free variables");
        return idx - 1;
    }

    QFFormula parse_expr() {
        SexprToken t = take();
        if (t.type == SexprToken::Type::word) {
            if (t.text == "true") return QFFormula::constant(true);
            if (t.text == "false") return QFFormula::constant(false);
            throw ParseError(0, "unexpected token '" + t.text + "'");
        }
        if (t.type == SexprToken::Type::close) throw ParseError(0, "unexpected ')'");
        const std::string head = take_word();
        if (head == "eq" || head == "neq") {
            const int a = parse_var(take_word());
            const int b = parse_var(take_word());
            expect_close();
            return head == "eq" ? QFFormula::equal(a, b) : QFFormula::not_equal(a, b);
        }
        if (head == "atom") {
            const std::string rel_name = take_word();
            const int rel = from_.index_of(rel_name);
            if (rel < 0) throw ParseError(0, "unknown relation '" + rel_name + "'");
            std::vector<int> vars;
            while (peek().type == SexprToken::Type::word) vars.push_back(parse_var(take().text));
            expect_close();
            if (static_cast<int>(vars.size()) != from_.arity(rel))
                throw ParseError(0, "atom arity mismatch for relation " + rel_name);
            return QFFormula::atom(rel, std::move(vars));
        }
        if (head == "not") {
            QFFormula inner = parse_expr();
            expect_close();
            return QFFormula::negation(std::move(inner));
        }
        if (head == "and" || head == "or") {
            std::vector<QFFormula> parts;
            while (peek().type != SexprToken::Type::close) parts.push_back(parse_expr());
            expect_close();
            if (parts.empty()) throw ParseError(0, "'" + head + "' needs at least one operand");
            return head == "and" ? QFFormula::conjunction(std::move(parts))
                                 : QFFormula::disjunction(std::move(parts));
        }
        throw ParseError(0, "unknown operator '" + head + "'");
    }

    std::string take_word() {
        SexprToken t = take();
        if (t.type != SexprToken::Type::word) throw ParseError(0, "expected a word token");
        return t.text;
    }
    void expect_close() {
        if (take().type != SexprToken::Type::close) throw ParseError(0, "expected ')'");
    }

    std::vector<SexprToken> tokens_;
    const Signature& from_;
    int free_vars_;
    std::size_t pos_ = 0;
};

} // namespace

QFFormula parse_sexpr(std::string_view text, const Signature& from, int free_vars) {
    return SexprParser(tokenize_sexpr(text), from, free_vars).parse();
}

std::string serialize(const QFTransduction& theta) {
    validate(theta);
    std::string out = "QF-TRANSDUCTION v1\nFROM\n";
    for (const auto& rel : theta.from.relations())
        out += "R " + rel.name + " " + std::to_string(rel.arity) + "\n";
    out += "TO\n";
    for (const auto& rel : theta.to.relations())
        out += "R " + rel.name + " " + std::to_string(rel.arity) + "\n";
    for (int i = 0; i < theta.to.relation_count(); ++i) {
        out += "FORMULA " + theta.to.relation(i).name + "\n";
        out += to_sexpr(theta.formulas[static_cast<std::size_t>(i)], theta.from) + "\n";
    }
    return out;
}

QFTransduction parse_transduction(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    const auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    if (!next_line() || line != "QF-TRANSDUCTION v1")
        throw ParseError(line_no, "expected 'QF-TRANSDUCTION v1' header");
    if (!next_line() || line != "FROM") throw ParseError(line_no, "expected FROM section");

    const auto parse_rel_line = [&](std::vector<RelationSymbol>& rels) {
        std::istringstream ss(line);
        std::string word, name;
        int arity;
        if (!(ss >> word >> name >> arity) || word != "R")
            throw ParseError(line_no, "expected 'R <name> <arity>'");
        rels.push_back({name, arity});
    };

    std::vector<RelationSymbol> from_rels, to_rels;
    while (next_line() && line != "TO") parse_rel_line(from_rels);
    if (line != "TO") throw ParseError(line_no, "expected TO section");
    while (next_line() && line.rfind("FORMULA", 0) != 0) parse_rel_line(to_rels);

    QFTransduction theta;
    try {
        theta.from = Signature(std::move(from_rels));
        theta.to = Signature(std::move(to_rels));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }

    // `line` currently holds the first FORMULA header (or an error).
    for (int i = 0; i < theta.to.relation_count(); ++i) {
        std::istringstream ss(line);
        std::string word, name;
        if (!(ss >> word >> name) || word != "FORMULA")
            throw ParseError(line_no, "expected 'FORMULA <target-relation>'");
        if (name != theta.to.relation(i).name)
            throw ParseError(line_no, "formula blocks must follow the TO declaration order");
        // Body: every line until the next FORMULA header or end of input.
        std::string body;
        bool saw_next_header = false;
        while (next_line()) {
            if (line.rfind("FORMULA", 0) == 0) {
                saw_next_header = true;
                break;
            }
            body += line + "\n";
        }
        try {
            theta.formulas.push_back(parse_sexpr(body, theta.from, theta.to.arity(i)));
        } catch (const ParseError& e) {
            throw ParseError(line_no, std::string("in formula for ") + theta.to.relation(i).name + ": " +
                                          e.what());
        }
        if (!saw_next_header && i + 1 < theta.to.relation_count())
            throw ParseError(line_no, "missing formula blocks for later target relations");
    }
    validate(theta);
    return theta;
}

} // namespace radoforge
