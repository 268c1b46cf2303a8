#include "radoforge/signature.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace radoforge {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

} // namespace

Signature::Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
    std::unordered_set<std::string> seen;
    for (const auto& rel : relations_) {
        if (!is_identifier(rel.name))
            throw std::invalid_argument("relation name is not an identifier: '" + rel.name + "'");
        if (rel.arity < 1 || rel.arity > kMaxArity)
            throw std::invalid_argument("relation arity out of range 1.." + std::to_string(kMaxArity) +
                                        ": " + rel.name);
        if (!seen.insert(rel.name).second)
            throw std::invalid_argument("duplicate relation name: " + rel.name);
    }
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& rel : relations_) m = std::max(m, rel.arity);
    return m;
}

bool Signature::all_unary() const {
    return std::all_of(relations_.begin(), relations_.end(),
                       [](const RelationSymbol& r) { return r.arity == 1; });
}

int Signature::unary_count() const {
    return static_cast<int>(std::count_if(relations_.begin(), relations_.end(),
                                          [](const RelationSymbol& r) { return r.arity == 1; }));
}

int Signature::index_of(const std::string& name) const {
    for (int i = 0; i < relation_count(); ++i)
        if (relations_[static_cast<std::size_t>(i)].name == name) return i;
    return -1;
}

Signature Signature::parse_compact(const std::string& text) {
    std::vector<RelationSymbol> rels;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::istringstream ps(part);
        std::string name;
        int arity;
        if (!(ps >> name >> arity))
            throw std::invalid_argument("bad signature fragment '" + part +
                                        "' (expected \"<name> <arity>\")");
        std::string extra;
        if (ps >> extra)
            throw std::invalid_argument("trailing tokens in signature fragment '" + part + "'");
        rels.push_back({name, arity});
    }
    if (rels.empty()) throw std::invalid_argument("empty signature");
    return Signature(std::move(rels));
}

std::string Signature::compact() const {
    std::string out;
    for (int i = 0; i < relation_count(); ++i) {
        if (i) out += "; ";
        out += relations_[static_cast<std::size_t>(i)].name + " " +
               std::to_string(relations_[static_cast<std::size_t>(i)].arity);
    }
    return out;
}

Signature signature_of_arities(const std::vector<int>& arities) {
    std::vector<RelationSymbol> rels;
    rels.reserve(arities.size());
    for (std::size_t i = 0; i < arities.size(); ++i)
        rels.push_back({"r" + std::to_string(i + 1), arities[i]});
    return Signature(std::move(rels));
}

} // namespace radoforge
