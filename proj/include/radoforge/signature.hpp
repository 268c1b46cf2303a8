#pragma once

#include <string>
#include <vector>

namespace radoforge {

inline constexpr int kMaxArity = 8;

struct RelationSymbol {
    std::string name;
    int arity = 1;
    bool operator==(const RelationSymbol&) const = default;
};

/// Ordered list of named relation arities. Names are identifiers
/// ([A-Za-z_][A-Za-z0-9_]*), pairwise distinct; arities in 1..8.
class Signature {
  public:
    Signature() = default;
    explicit Signature(std::vector<RelationSymbol> relations);

    int relation_count() const { return static_cast<int>(relations_.size()); }
    const RelationSymbol& relation(int i) const { return relations_[static_cast<std::size_t>(i)]; }
    const std::vector<RelationSymbol>& relations() const { return relations_; }
    int arity(int i) const { return relations_[static_cast<std::size_t>(i)].arity; }

    int max_arity() const;
    bool all_unary() const;
    int unary_count() const;
    int index_of(const std::string& name) const; // -1 when absent

    bool operator==(const Signature&) const = default;

    /// One-liner form used on the command line: "R 3; S 1; T 1".
    static Signature parse_compact(const std::string& text);
    std::string compact() const;

  private:
    std::vector<RelationSymbol> relations_;
};

/// Convenience for tests and internal callers: arities only, names r1, r2, ...
Signature signature_of_arities(const std::vector<int>& arities);

} // namespace radoforge
