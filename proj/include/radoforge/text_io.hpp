#pragma once

#include <string>
#include <string_view>

#include "radoforge/signature.hpp"
#include "radoforge/structures.hpp"

namespace radoforge {

/// Canonical text formats (UTF-8, LF line endings):
///
///   GRAPH n=<n>            followed by one "u v" line per edge, u<v, sorted
///   HYPERGRAPH n=<n> t=<t> followed by one sorted t-tuple per line, sorted
///   R <name> <arity>       one line per relation, declaration order
///   STRUCTURE n=<n>        then per relation "REL <name> <arity>" and one
///                          ordered tuple per line, sorted by encoding
///
/// parse(serialize(x)) == x; serialization is canonical.

std::string serialize(const Graph& g);
std::string serialize(const Hypergraph& h);
std::string serialize(const Signature& sig);
std::string serialize(const RelStructure& a);

Graph parse_graph(std::string_view text);
Hypergraph parse_hypergraph(std::string_view text);
Signature parse_signature(std::string_view text);
RelStructure parse_structure(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace radoforge
