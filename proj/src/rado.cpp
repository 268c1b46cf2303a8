#include "radoforge/rado.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "radoforge/combinatorics.hpp"

namespace radoforge {

namespace {

constexpr std::uint64_t kNoFeasibleN = ~0ULL;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return p > kNoFeasibleN ? kNoFeasibleN : static_cast<std::uint64_t>(p);
}

std::vector<int> contiguous_part_starts(int n, int parts) {
    // Part sizes floor(n/parts) or ceil(n/parts), larger parts first.
    std::vector<int> start(static_cast<std::size_t>(parts) + 1, 0);
    const int base = n / parts;
    const int rem = n % parts;
    for (int j = 0; j < parts; ++j)
        start[static_cast<std::size_t>(j) + 1] = start[static_cast<std::size_t>(j)] + base + (j < rem ? 1 : 0);
    return start;
}

std::vector<int> expand_part_of(const std::vector<int>& part_start, int n) {
    std::vector<int> part_of(static_cast<std::size_t>(n));
    for (std::size_t j = 0; j + 1 < part_start.size(); ++j)
        for (int v = part_start[j]; v < part_start[j + 1]; ++v) part_of[static_cast<std::size_t>(v)] = static_cast<int>(j);
    return part_of;
}

Graph graph_from_parts(int n, const Tournament& tour, const std::vector<int>& part_of,
                       const UniversalSet& uset, const std::vector<int>& pattern) {
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        const int pu = part_of[static_cast<std::size_t>(u)];
        for (int v = u + 1; v < n; ++v) {
            const int pv = part_of[static_cast<std::size_t>(v)];
            if (pu == pv) continue; // same-part pairs carry no edge
            const bool edge = tour.orient(pv, pu)
                                  ? uset.contains(pattern[static_cast<std::size_t>(v)], u)
                                  : uset.contains(pattern[static_cast<std::size_t>(u)], v);
            if (edge) g.set_edge(u, v, true);
        }
    }
    return g;
}

RelStructure structure_from_parts(const Signature& sig, int n, int k, const Tournament& tour,
                                  const std::vector<int>& part_of,
                                  const std::vector<std::vector<std::uint8_t>>& fstar_tables,
                                  const std::vector<std::pair<int, std::uint64_t>>& pattern,
                                  const std::vector<AtomicEntry>& entries) {
    // Entry bit positions grouped by relation, so the membership rule only
    // scans candidates of the tuple's own relation.
    std::vector<std::vector<std::size_t>> rel_entries(static_cast<std::size_t>(sig.relation_count()));
    for (std::size_t e = 0; e < entries.size(); ++e)
        rel_entries[static_cast<std::size_t>(entries[e].rel)].push_back(e);

    RelStructure a(sig, n);
    std::vector<int> tuple;
    std::vector<int> parts_seen;
    for (int rel = 0; rel < sig.relation_count(); ++rel) {
        const int arity = sig.arity(rel);
        tuple.assign(static_cast<std::size_t>(arity), 0);
        for (std::uint64_t code = 0; code < a.cell_count(rel); ++code) {
            a.decode(rel, code, tuple);

            parts_seen.clear();
            for (int l = 0; l < arity; ++l) {
                const int p = part_of[static_cast<std::size_t>(tuple[static_cast<std::size_t>(l)])];
                if (std::find(parts_seen.begin(), parts_seen.end(), p) == parts_seen.end())
                    parts_seen.push_back(p);
            }
            // At most one part index can dominate all the others.
            int dominating = -1;
            for (int p : parts_seen) {
                bool dominates = true;
                for (int q : parts_seen)
                    if (q != p && !tour.orient(p, q)) {
                        dominates = false;
                        break;
                    }
                if (dominates) {
                    dominating = p;
                    break;
                }
            }
            if (dominating < 0) continue;

            int v0 = -1;
            bool unique = true;
            for (int l = 0; l < arity && unique; ++l) {
                const int u = tuple[static_cast<std::size_t>(l)];
                if (part_of[static_cast<std::size_t>(u)] != dominating) continue;
                if (v0 < 0)
                    v0 = u;
                else if (v0 != u)
                    unique = false;
            }
            if (!unique || v0 < 0) continue;

            const auto& [fstar_idx, type_mask] = pattern[static_cast<std::size_t>(v0)];
            const auto& f = fstar_tables[static_cast<std::size_t>(fstar_idx)];
            bool present = false;
            for (std::size_t e : rel_entries[static_cast<std::size_t>(rel)]) {
                if (!((type_mask >> e) & 1u)) continue;
                const auto& idx = entries[e].indices;
                bool consistent = true;
                for (int l = 0; l < arity && consistent; ++l) {
                    const int u = tuple[static_cast<std::size_t>(l)];
                    consistent = idx[static_cast<std::size_t>(l)] == 0
                                     ? u == v0
                                     : f[static_cast<std::size_t>(u)] == idx[static_cast<std::size_t>(l)];
                }
                if (consistent) {
                    present = true;
                    break;
                }
            }
            if (present) a.set_code(rel, code, true);
        }
    }
    return a;
}

} // namespace

int RadoCertificate::part_of(int v) const {
    const auto it = std::upper_bound(part_start.begin(), part_start.end(), v);
    return static_cast<int>(it - part_start.begin()) - 1;
}

std::vector<std::uint8_t> RadoCertificate::fstar_table(int i) const {
    const auto& [f_idx, perm] = fstar[static_cast<std::size_t>(i)];
    std::vector<std::uint8_t> table(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        table[static_cast<std::size_t>(v)] =
            static_cast<std::uint8_t>(perm[static_cast<std::size_t>(phf.value(f_idx, v) - 1)]);
    return table;
}

RadoGraphResult rado_graph(int n, int k, Prng rng, FamilyBackend backend, std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("rado_graph requires n >= 1");
    if (k < 1 || k > 4) throw std::invalid_argument("rado_graph supports 1 <= k <= 4");
    const int m = 1 << (3 * k);
    // Necessary bound before building anything: every part must hold at
    // least |U| >= 2^k elements, and the universal-set builder needs 2k.
    const std::uint64_t crude_min = std::max<std::uint64_t>(sat_mul(static_cast<std::uint64_t>(m), 1ULL << k),
                                                            static_cast<std::uint64_t>(2 * k));
    if (static_cast<std::uint64_t>(n) < crude_min)
        throw InfeasibleParametersError("n too small for the part layout", crude_min);

    Tournament tour = find_dominating_tournament(k, rng.split(1), 256, budget);
    UniversalSet uset = build_universal_set(n, k, backend, rng.split(2), budget);
    if (n / m < uset.size())
        throw InfeasibleParametersError("parts cannot cover the universal set",
                                        sat_mul(static_cast<std::uint64_t>(m),
                                                static_cast<std::uint64_t>(uset.size())));

    RadoCertificate cert;
    cert.kind = RadoCertificate::Kind::graph;
    cert.n = n;
    cert.k = k;
    cert.tournament = tour;
    cert.part_start = contiguous_part_starts(n, m);
    cert.uset = uset;
    cert.uset_pattern.resize(static_cast<std::size_t>(n));
    const auto part_of = expand_part_of(cert.part_start, n);
    for (int v = 0; v < n; ++v) {
        const int start = cert.part_start[static_cast<std::size_t>(part_of[static_cast<std::size_t>(v)])];
        cert.uset_pattern[static_cast<std::size_t>(v)] = (v - start) % uset.size();
    }

    Graph g = graph_from_parts(n, tour, part_of, uset, cert.uset_pattern);
    const long double verify_work = binomial_ld(n, k) * std::pow(2.0L, k) * n;
    if (verify_work <= static_cast<long double>(budget) && !check_ea_graph(g, k, budget).holds)
        throw std::logic_error("rado_graph output failed its extension-axiom verification");
    return {std::move(g), std::move(cert)};
}

RadoStructureResult rado_structure(const Signature& sig, int n, int k, Prng rng, FamilyBackend backend,
                                   std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("rado_structure requires n >= 1");
    if (k < 1 || k > 4) throw std::invalid_argument("rado_structure supports 1 <= k <= 4");
    if (sig.relation_count() < 1) throw std::invalid_argument("signature must have at least one relation");
    const int m = 1 << (3 * k);

    const auto entries = atomic_entry_list(sig, k);
    if (entries.size() > 50)
        throw InfeasibleParametersError("atomic type space too large for any desk-scale n", kNoFeasibleN);
    const std::uint64_t type_count = 1ULL << entries.size();

    const std::uint64_t crude_min =
        std::max<std::uint64_t>(sat_mul(static_cast<std::uint64_t>(m), type_count),
                                static_cast<std::uint64_t>(2 * k));
    if (static_cast<std::uint64_t>(n) < crude_min)
        throw InfeasibleParametersError("n too small for the part layout", crude_min);

    Tournament tour = find_dominating_tournament(k, rng.split(1), 256, budget);
    PerfectHashFamily phf = build_perfect_hash_family(n, k, backend, rng.split(2), budget);

    // Permutation closure F*: for every f and every permutation pi of [k],
    // the table pi o f. Duplicates keep their first occurrence.
    std::vector<std::pair<int, std::vector<int>>> fstar;
    std::vector<std::vector<std::uint8_t>> fstar_tables;
    {
        std::vector<int> perm(static_cast<std::size_t>(k));
        for (int f = 0; f < phf.size(); ++f) {
            std::iota(perm.begin(), perm.end(), 1);
            do {
                std::vector<std::uint8_t> table(static_cast<std::size_t>(n));
                for (int v = 0; v < n; ++v)
                    table[static_cast<std::size_t>(v)] =
                        static_cast<std::uint8_t>(perm[static_cast<std::size_t>(phf.value(f, v) - 1)]);
                if (std::find(fstar_tables.begin(), fstar_tables.end(), table) == fstar_tables.end()) {
                    fstar_tables.push_back(std::move(table));
                    fstar.emplace_back(f, perm);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }

    const std::uint64_t range = sat_mul(static_cast<std::uint64_t>(fstar.size()), type_count);
    if (static_cast<std::uint64_t>(n / m) < range)
        throw InfeasibleParametersError("parts cannot cover all (hash, type) patterns",
                                        sat_mul(static_cast<std::uint64_t>(m), range));

    RadoCertificate cert;
    cert.kind = RadoCertificate::Kind::structure;
    cert.n = n;
    cert.k = k;
    cert.sig = sig;
    cert.tournament = tour;
    cert.part_start = contiguous_part_starts(n, m);
    cert.phf = phf;
    cert.fstar = fstar;
    cert.struct_pattern.resize(static_cast<std::size_t>(n));
    const auto part_of = expand_part_of(cert.part_start, n);
    for (int v = 0; v < n; ++v) {
        const int start = cert.part_start[static_cast<std::size_t>(part_of[static_cast<std::size_t>(v)])];
        const std::uint64_t r = static_cast<std::uint64_t>(v - start) % range;
        cert.struct_pattern[static_cast<std::size_t>(v)] = {static_cast<int>(r >> entries.size()),
                                                            r & (type_count - 1)};
    }

    RelStructure a = structure_from_parts(sig, n, k, tour, part_of, fstar_tables, cert.struct_pattern, entries);
    long double type_space = 1.0L;
    for (int i = 0; i < sig.relation_count(); ++i)
        type_space *= std::pow(2.0L, std::pow(static_cast<long double>(k + 1), sig.arity(i)));
    long double verify_work = type_space * n;
    for (int i = 0; i < k; ++i) verify_work *= static_cast<long double>(n - i);
    if (verify_work <= static_cast<long double>(budget) && !check_ea_structure(a, k, budget).holds)
        throw std::logic_error("rado_structure output failed its extension-axiom verification");
    return {std::move(a), std::move(cert)};
}

Graph graph_from_certificate(const RadoCertificate& cert) {
    if (cert.kind != RadoCertificate::Kind::graph)
        throw std::invalid_argument("certificate does not describe a graph");
    return graph_from_parts(cert.n, cert.tournament, expand_part_of(cert.part_start, cert.n), cert.uset,
                            cert.uset_pattern);
}

RelStructure structure_from_certificate(const RadoCertificate& cert) {
    if (cert.kind != RadoCertificate::Kind::structure)
        throw std::invalid_argument("certificate does not describe a structure");
    std::vector<std::vector<std::uint8_t>> tables;
    for (int i = 0; i < static_cast<int>(cert.fstar.size()); ++i) tables.push_back(cert.fstar_table(i));
    return structure_from_parts(cert.sig, cert.n, cert.k, cert.tournament,
                                expand_part_of(cert.part_start, cert.n), tables, cert.struct_pattern,
                                atomic_entry_list(cert.sig, cert.k));
}

std::string serialize(const RadoCertificate& cert) {
    std::ostringstream out;
    out << "RADO-CERT v1\n";
    out << "KIND " << (cert.kind == RadoCertificate::Kind::graph ? "graph" : "structure") << "\n";
    if (cert.kind == RadoCertificate::Kind::structure) {
        out << "SIG " << cert.sig.relation_count() << "\n";
        for (const auto& rel : cert.sig.relations()) out << "R " << rel.name << " " << rel.arity << "\n";
    }
    out << "N " << cert.n << "\nK " << cert.k << "\n";
    const int m = cert.tournament.size();
    out << "TOURNAMENT " << m << "\n";
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) out << (i != j && cert.tournament.orient(i, j) ? '1' : '0');
        out << "\n";
    }
    out << "PARTS " << (cert.part_start.size() - 1) << "\n";
    for (std::size_t j = 0; j < cert.part_start.size(); ++j)
        out << cert.part_start[j] << (j + 1 < cert.part_start.size() ? ' ' : '\n');
    if (cert.kind == RadoCertificate::Kind::graph) {
        out << "USET " << cert.uset.size() << "\n";
        for (int i = 0; i < cert.uset.size(); ++i) {
            bool any = false;
            for (int v = 0; v < cert.n; ++v) {
                if (!cert.uset.contains(i, v)) continue;
                if (any) out << ' ';
                out << v;
                any = true;
            }
            if (!any) out << '-';
            out << "\n";
        }
        out << "PATTERN\n";
        for (std::size_t v = 0; v < cert.uset_pattern.size(); ++v)
            out << cert.uset_pattern[v] << (v + 1 < cert.uset_pattern.size() ? ' ' : '\n');
    } else {
        out << "PHF " << cert.phf.size() << "\n";
        for (int i = 0; i < cert.phf.size(); ++i) {
            for (int v = 0; v < cert.n; ++v) out << int(cert.phf.value(i, v)) << (v + 1 < cert.n ? ' ' : '\n');
        }
        out << "FSTAR " << cert.fstar.size() << "\n";
        for (const auto& [f, perm] : cert.fstar) {
            out << f;
            for (int p : perm) out << ' ' << p;
            out << "\n";
        }
        out << "PATTERN\n";
        for (std::size_t v = 0; v < cert.struct_pattern.size(); ++v)
            out << cert.struct_pattern[v].first << '/' << cert.struct_pattern[v].second
                << (v + 1 < cert.struct_pattern.size() ? ' ' : '\n');
    }
    return out.str();
}

namespace {

// Token-level reader for the certificate format; keeps a line counter by
// consuming the text line by line.
struct CertReader {
    std::istringstream in;
    int line = 0;
    std::string current;
    std::istringstream current_stream;

    explicit CertReader(std::string_view text) : in(std::string(text)) {}

    std::string next_line() {
        while (std::getline(in, current)) {
            ++line;
            if (!current.empty() && current.back() == '\r') current.pop_back();
            if (!current.empty()) return current;
        }
        throw ParseError(line, "unexpected end of certificate");
    }

    template <typename T>
    T expect_value(const std::string& key) {
        std::istringstream ss(next_line());
        std::string word;
        T value;
        if (!(ss >> word >> value) || word != key)
            throw ParseError(line, "expected '" + key + " <value>'");
        return value;
    }
};

} // namespace

RadoCertificate parse_certificate(std::string_view text) {
    CertReader r(text);
    if (r.next_line() != "RADO-CERT v1") throw ParseError(r.line, "expected 'RADO-CERT v1' header");
    const std::string kind = r.expect_value<std::string>("KIND");
    RadoCertificate cert;
    if (kind == "graph")
        cert.kind = RadoCertificate::Kind::graph;
    else if (kind == "structure")
        cert.kind = RadoCertificate::Kind::structure;
    else
        throw ParseError(r.line, "KIND must be graph or structure");

    if (cert.kind == RadoCertificate::Kind::structure) {
        const int rels = r.expect_value<int>("SIG");
        std::vector<RelationSymbol> syms;
        for (int i = 0; i < rels; ++i) {
            std::istringstream ss(r.next_line());
            std::string word, name;
            int arity;
            if (!(ss >> word >> name >> arity) || word != "R")
                throw ParseError(r.line, "expected 'R <name> <arity>'");
            syms.push_back({name, arity});
        }
        cert.sig = Signature(std::move(syms));
    }

    cert.n = r.expect_value<int>("N");
    cert.k = r.expect_value<int>("K");
    if (cert.n < 1 || cert.k < 1) throw ParseError(r.line, "N and K must be positive");

    const int m = r.expect_value<int>("TOURNAMENT");
    if (m < 1) throw ParseError(r.line, "tournament size must be positive");
    cert.tournament = Tournament(m);
    std::vector<std::string> rows;
    for (int i = 0; i < m; ++i) {
        rows.push_back(r.next_line());
        if (static_cast<int>(rows.back().size()) != m)
            throw ParseError(r.line, "tournament row has wrong length");
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const bool fwd = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == '1';
            const bool bwd = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] == '1';
            if (i == j) {
                if (fwd) throw ParseError(r.line, "tournament has a self-loop");
                continue;
            }
            if (fwd == bwd) throw ParseError(r.line, "tournament orientation is not antisymmetric");
            if (i < j) cert.tournament.set_orient(i, j, fwd);
        }

    const int parts = r.expect_value<int>("PARTS");
    if (parts != m) throw ParseError(r.line, "part count must equal tournament size");
    {
        std::istringstream ss(r.next_line());
        int v;
        while (ss >> v) cert.part_start.push_back(v);
        if (static_cast<int>(cert.part_start.size()) != parts + 1 || cert.part_start.front() != 0 ||
            cert.part_start.back() != cert.n || !std::is_sorted(cert.part_start.begin(), cert.part_start.end()))
            throw ParseError(r.line, "part boundaries must be sorted, start at 0 and end at n");
    }

    if (cert.kind == RadoCertificate::Kind::graph) {
        const int usets = r.expect_value<int>("USET");
        cert.uset.n = cert.n;
        cert.uset.k = cert.k;
        for (int i = 0; i < usets; ++i) {
            std::istringstream ss(r.next_line());
            std::vector<std::uint64_t> bits(static_cast<std::size_t>((cert.n + 63) / 64), 0);
            std::string tok;
            while (ss >> tok) {
                if (tok == "-") break;
                const int v = std::stoi(tok);
                if (v < 0 || v >= cert.n) throw ParseError(r.line, "universal-set member out of range");
                bits[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
            }
            cert.uset.sets.push_back(std::move(bits));
        }
        if (r.next_line() != "PATTERN") throw ParseError(r.line, "expected PATTERN section");
        std::istringstream ss(r.next_line());
        int idx;
        while (ss >> idx) {
            if (idx < 0 || idx >= usets) throw ParseError(r.line, "pattern index out of range");
            cert.uset_pattern.push_back(idx);
        }
        if (static_cast<int>(cert.uset_pattern.size()) != cert.n)
            throw ParseError(r.line, "pattern must assign every element");
    } else {
        const int funcs = r.expect_value<int>("PHF");
        cert.phf.n = cert.n;
        cert.phf.k = cert.k;
        for (int i = 0; i < funcs; ++i) {
            std::istringstream ss(r.next_line());
            std::vector<std::uint8_t> f;
            int v;
            while (ss >> v) {
                if (v < 1 || v > cert.k) throw ParseError(r.line, "hash value out of range 1..k");
                f.push_back(static_cast<std::uint8_t>(v));
            }
            if (static_cast<int>(f.size()) != cert.n)
                throw ParseError(r.line, "hash function must assign every element");
            cert.phf.funcs.push_back(std::move(f));
        }
        const int closure = r.expect_value<int>("FSTAR");
        for (int i = 0; i < closure; ++i) {
            std::istringstream ss(r.next_line());
            int f;
            if (!(ss >> f) || f < 0 || f >= funcs) throw ParseError(r.line, "fstar function index out of range");
            std::vector<int> perm;
            int p;
            while (ss >> p) perm.push_back(p);
            if (static_cast<int>(perm.size()) != cert.k)
                throw ParseError(r.line, "fstar permutation has wrong length");
            cert.fstar.emplace_back(f, std::move(perm));
        }
        if (r.next_line() != "PATTERN") throw ParseError(r.line, "expected PATTERN section");
        std::istringstream ss(r.next_line());
        std::string tok;
        while (ss >> tok) {
            const std::size_t slash = tok.find('/');
            if (slash == std::string::npos) throw ParseError(r.line, "pattern entries are '<fstar>/<mask>'");
            const int fi = std::stoi(tok.substr(0, slash));
            const std::uint64_t mask = std::stoull(tok.substr(slash + 1));
            if (fi < 0 || fi >= closure) throw ParseError(r.line, "pattern fstar index out of range");
            cert.struct_pattern.emplace_back(fi, mask);
        }
        if (static_cast<int>(cert.struct_pattern.size()) != cert.n)
            throw ParseError(r.line, "pattern must assign every element");
    }
    return cert;
}

} // namespace radoforge
