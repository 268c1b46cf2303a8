#include "radoforge/text_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "radoforge/errors.hpp"

namespace radoforge {

namespace {

// Line-oriented cursor over the input; keeps the 1-based line number for
// error reporting and skips blank lines.
class LineReader {
  public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_no_;
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (!line.empty()) return true;
        }
        return false;
    }

    int line_no() const { return line_no_; }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
};

std::vector<std::string> tokens_of(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream ss{std::string(line)};
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

long parse_int(std::string_view tok, int line) {
    long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return value;
}

// "key=value" with a fixed key.
long parse_kv(std::string_view tok, std::string_view key, int line) {
    const std::size_t eq = tok.find('=');
    if (eq == std::string_view::npos || tok.substr(0, eq) != key)
        throw ParseError(line, "expected '" + std::string(key) + "=<int>', got '" + std::string(tok) + "'");
    return parse_int(tok.substr(eq + 1), line);
}

} // namespace

std::string serialize(const Graph& g) {
    std::string out = "GRAPH n=" + std::to_string(g.vertex_count()) + "\n";
    for (const auto& [u, v] : g.edges()) out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

std::string serialize(const Hypergraph& h) {
    std::string out = "HYPERGRAPH n=" + std::to_string(h.vertex_count()) +
                      " t=" + std::to_string(h.edge_arity()) + "\n";
    for (const auto& edge : h.edges()) {
        for (std::size_t i = 0; i < edge.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(edge[i]);
        }
        out += '\n';
    }
    return out;
}

std::string serialize(const Signature& sig) {
    std::string out;
    for (const auto& rel : sig.relations())
        out += "R " + rel.name + " " + std::to_string(rel.arity) + "\n";
    return out;
}

std::string serialize(const RelStructure& a) {
    std::string out = "STRUCTURE n=" + std::to_string(a.universe_size()) + "\n";
    std::vector<int> tuple;
    for (int rel = 0; rel < a.sig().relation_count(); ++rel) {
        const auto& sym = a.sig().relation(rel);
        out += "REL " + sym.name + " " + std::to_string(sym.arity) + "\n";
        tuple.assign(static_cast<std::size_t>(sym.arity), 0);
        for (std::uint64_t code = 0; code < a.cell_count(rel); ++code) {
            if (!a.has_code(rel, code)) continue;
            a.decode(rel, code, tuple);
            for (int j = 0; j < sym.arity; ++j) {
                if (j) out += ' ';
                out += std::to_string(tuple[static_cast<std::size_t>(j)]);
            }
            out += '\n';
        }
    }
    return out;
}

Graph parse_graph(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    if (!reader.next(line)) throw ParseError(1, "empty input, expected GRAPH header");
    auto header = tokens_of(line);
    if (header.size() != 2 || header[0] != "GRAPH")
        throw ParseError(reader.line_no(), "expected 'GRAPH n=<n>' header");
    const long n = parse_kv(header[1], "n", reader.line_no());
    if (n < 1) throw ParseError(reader.line_no(), "vertex count must be positive");
    Graph g(static_cast<int>(n));
    while (reader.next(line)) {
        auto toks = tokens_of(line);
        if (toks.size() != 2) throw ParseError(reader.line_no(), "expected 'u v' edge line");
        const long u = parse_int(toks[0], reader.line_no());
        const long v = parse_int(toks[1], reader.line_no());
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(reader.line_no(), "vertex out of range");
        if (u >= v) throw ParseError(reader.line_no(), "edge lines must satisfy u < v");
        g.set_edge(static_cast<int>(u), static_cast<int>(v), true);
    }
    return g;
}

Hypergraph parse_hypergraph(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    if (!reader.next(line)) throw ParseError(1, "empty input, expected HYPERGRAPH header");
    auto header = tokens_of(line);
    if (header.size() != 3 || header[0] != "HYPERGRAPH")
        throw ParseError(reader.line_no(), "expected 'HYPERGRAPH n=<n> t=<t>' header");
    const long n = parse_kv(header[1], "n", reader.line_no());
    const long t = parse_kv(header[2], "t", reader.line_no());
    if (n < 1 || t < 2 || t > n) throw ParseError(reader.line_no(), "need n >= 1 and 2 <= t <= n");
    Hypergraph h(static_cast<int>(n), static_cast<int>(t));
    std::vector<int> edge;
    while (reader.next(line)) {
        auto toks = tokens_of(line);
        if (static_cast<long>(toks.size()) != t)
            throw ParseError(reader.line_no(), "hyperedge line must have exactly t vertices");
        edge.clear();
        for (const auto& tok : toks) {
            const long v = parse_int(tok, reader.line_no());
            if (v < 0 || v >= n) throw ParseError(reader.line_no(), "vertex out of range");
            edge.push_back(static_cast<int>(v));
        }
        for (std::size_t i = 1; i < edge.size(); ++i)
            if (edge[i - 1] >= edge[i])
                throw ParseError(reader.line_no(), "hyperedge vertices must be strictly increasing");
        h.add_edge(edge);
    }
    return h;
}

Signature parse_signature(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    std::vector<RelationSymbol> rels;
    while (reader.next(line)) {
        auto toks = tokens_of(line);
        if (toks.size() != 3 || toks[0] != "R")
            throw ParseError(reader.line_no(), "expected 'R <name> <arity>'");
        rels.push_back({toks[1], static_cast<int>(parse_int(toks[2], reader.line_no()))});
    }
    if (rels.empty()) throw ParseError(1, "empty signature");
    try {
        return Signature(std::move(rels));
    } catch (const std::invalid_argument& e) {
        throw ParseError(reader.line_no(), e.what());
    }
}

RelStructure parse_structure(std::string_view text) {
    LineReader reader(text);
    std::string_view line;
    if (!reader.next(line)) throw ParseError(1, "empty input, expected STRUCTURE header");
    auto header = tokens_of(line);
    if (header.size() != 2 || header[0] != "STRUCTURE")
        throw ParseError(reader.line_no(), "expected 'STRUCTURE n=<n>' header");
    const long n = parse_kv(header[1], "n", reader.line_no());
    if (n < 1) throw ParseError(reader.line_no(), "universe size must be positive");

    // First pass over the remaining lines: group them into REL blocks.
    std::vector<RelationSymbol> rels;
    std::vector<std::vector<std::pair<int, std::vector<long>>>> blocks; // (line, tuple)
    while (reader.next(line)) {
        auto toks = tokens_of(line);
        if (toks[0] == "REL") {
            if (toks.size() != 3) throw ParseError(reader.line_no(), "expected 'REL <name> <arity>'");
            rels.push_back({toks[1], static_cast<int>(parse_int(toks[2], reader.line_no()))});
            blocks.emplace_back();
            continue;
        }
        if (rels.empty()) throw ParseError(reader.line_no(), "tuple line before any REL block");
        std::vector<long> tuple;
        for (const auto& tok : toks) tuple.push_back(parse_int(tok, reader.line_no()));
        blocks.back().emplace_back(reader.line_no(), std::move(tuple));
    }

    Signature sig = [&] {
        try {
            return Signature(rels);
        } catch (const std::invalid_argument& e) {
            throw ParseError(reader.line_no(), e.what());
        }
    }();
    RelStructure a(sig, static_cast<int>(n));
    std::vector<int> tuple;
    for (int rel = 0; rel < sig.relation_count(); ++rel) {
        for (const auto& [line_no, raw] : blocks[static_cast<std::size_t>(rel)]) {
            if (static_cast<int>(raw.size()) != sig.arity(rel))
                throw ParseError(line_no, "tuple length does not match relation arity");
            tuple.clear();
            for (long v : raw) {
                if (v < 0 || v >= n) throw ParseError(line_no, "tuple coordinate out of universe");
                tuple.push_back(static_cast<int>(v));
            }
            a.set(rel, tuple, true);
        }
    }
    return a;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << contents;
    if (!out) throw Error("write failed: " + path);
}

} // namespace radoforge
