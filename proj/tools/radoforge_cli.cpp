#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "radoforge/entropy.hpp"
#include "radoforge/errors.hpp"
#include "radoforge/extension_axioms.hpp"
#include "radoforge/parity.hpp"
#include "radoforge/prng.hpp"
#include "radoforge/qf_formula.hpp"
#include "radoforge/rado.hpp"
#include "radoforge/structures.hpp"
#include "radoforge/text_io.hpp"

namespace rf = radoforge;
using ordered_json = nlohmann::ordered_json;

namespace {

// Exit codes: 0 success / property holds, 1 property violated,
// 2 usage or parse error, 3 infeasible parameters / budget / construction.
constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct Report {
    ordered_json data = ordered_json::object();
    bool json_mode = false;

    template <typename T>
    void put(const std::string& key, const T& value) {
        data[key] = value;
    }

    void emit(std::ostream& out) const {
        if (json_mode) {
            out << data.dump(2) << "\n";
            return;
        }
        for (const auto& [key, value] : data.items()) {
            if (value.is_string())
                out << key << ": " << value.get<std::string>() << "\n";
            else
                out << key << ": " << value.dump() << "\n";
        }
    }
};

std::uint64_t resolve_budget(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("RADOFORGE_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("RADOFORGE_BUDGET is not a valid integer");
        }
    }
    return rf::kDefaultWorkBudget;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

rf::FamilyBackend backend_of(const std::string& name) {
    if (name == "greedy") return rf::FamilyBackend::greedy;
    if (name == "randomized") return rf::FamilyBackend::randomized;
    throw std::invalid_argument("backend must be greedy or randomized");
}

std::string join_ints(const std::vector<int>& xs, const char* sep = " ") {
    if (xs.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

std::string describe_target(const rf::Signature* sig, const rf::EAViolation& v) {
    if (const auto* subset = std::get_if<std::vector<int>>(&v.target)) return join_ints(*subset);
    if (const auto* family = std::get_if<std::vector<std::vector<int>>>(&v.target)) {
        if (family->empty()) return "-";
        std::string out;
        for (std::size_t i = 0; i < family->size(); ++i) {
            if (i) out += "; ";
            out += join_ints((*family)[i]);
        }
        return out;
    }
    const auto& type = std::get<rf::AtomicType>(v.target);
    if (type.entries.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < type.entries.size(); ++i) {
        if (i) out += "; ";
        out += sig ? sig->relation(type.entries[i].rel).name : ("r" + std::to_string(type.entries[i].rel));
        out += "(" + join_ints(type.entries[i].indices, ",") + ")";
    }
    return out;
}

void put_violation(Report& report, const rf::Signature* sig, const rf::EAViolation& v) {
    report.put("witness_set", join_ints(v.elements));
    report.put("witness_target", describe_target(sig, v));
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

int finish(Report& report, const Timer& timer, std::ostream& out, int code) {
    report.put("wall_time_ms", timer.ms());
    report.emit(out);
    return code;
}

// Writes the object to `-o` when given, otherwise to stdout with the report
// rerouted to stderr so pipelines stay clean.
int finish_with_payload(Report& report, const Timer& timer, const std::optional<std::string>& out_path,
                        const std::string& payload, int code) {
    if (out_path) {
        rf::write_file(*out_path, payload);
        report.put("output", *out_path);
        return finish(report, timer, std::cout, code);
    }
    std::cout << payload;
    return finish(report, timer, std::cerr, code);
}

enum class InputKind { graph, hypergraph, structure };

InputKind detect_kind(const std::string& text) {
    if (text.rfind("GRAPH", 0) == 0) return InputKind::graph;
    if (text.rfind("HYPERGRAPH", 0) == 0) return InputKind::hypergraph;
    if (text.rfind("STRUCTURE", 0) == 0) return InputKind::structure;
    throw rf::ParseError(1, "input must start with GRAPH, HYPERGRAPH or STRUCTURE");
}

rf::LogicClass logic_of(const std::string& name) {
    if (name == "FO") return rf::LogicClass::FO;
    if (name == "LFP") return rf::LogicClass::LFP;
    if (name == "LFPparity" || name == "LFP+" || name == "LFP[+]") return rf::LogicClass::LFPparity;
    throw std::invalid_argument("logic must be FO, LFP or LFPparity");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radoforge: finite existentially-closed graphs and structures, parity transductions, "
                 "and entropy-order classification"};
    app.require_subcommand(1);

    bool json_mode = false;
    app.add_flag("--json", json_mode, "emit the run report as JSON");

    Timer timer;
    std::function<int(Report&)> action;

    // ---- generate ----------------------------------------------------
    auto* generate = app.add_subcommand("generate", "construct graphs/structures and write them out");
    generate->require_subcommand(1);

    struct GenOpts {
        int n = 0, k = 0, t = 3;
        std::optional<std::uint64_t> seed, budget;
        std::string backend = "greedy";
        std::string sig_text;
        std::optional<int> verify_k;
        std::optional<std::string> out, cert_out;
    };
    auto gen_opts = std::make_shared<GenOpts>();

    const auto add_common_gen_flags = [&](CLI::App* cmd, bool with_sig, bool with_backend) {
        cmd->add_option("--seed", gen_opts->seed, "PRNG seed (random when omitted, always reported)");
        cmd->add_option("--budget", gen_opts->budget, "work budget override");
        cmd->add_option("--verify-k", gen_opts->verify_k, "run the matching EA checker at this k");
        cmd->add_option("-o,--output", gen_opts->out, "output file (stdout when omitted)");
        if (with_sig) cmd->add_option("--sig", gen_opts->sig_text, "signature, e.g. \"R 2; S 1\"")->required();
        if (with_backend)
            cmd->add_option("--backend", gen_opts->backend, "family backend: greedy|randomized");
    };

    const auto run_verify = [](Report& report, const rf::Signature* sig, int vk,
                               const std::function<rf::EAReport(int)>& checker) -> int {
        const rf::EAReport ea = checker(vk);
        report.put("verify_k", vk);
        report.put("ea_holds", ea.holds);
        if (!ea.holds) {
            put_violation(report, sig, *ea.violation);
            return kExitViolated;
        }
        return kExitOk;
    };

    {
        auto* cmd = generate->add_subcommand("rado-graph", "deterministic graph satisfying EA_k");
        cmd->add_option("--n", gen_opts->n, "vertex count")->required();
        cmd->add_option("--k", gen_opts->k, "extension-axiom parameter")->required();
        add_common_gen_flags(cmd, false, true);
        cmd->add_option("--cert", gen_opts->cert_out, "also write the construction certificate");
        cmd->callback([&, gen_opts] {
            action = [&, gen_opts](Report& report) {
                const auto seed = resolve_seed(gen_opts->seed);
                const auto budget = resolve_budget(gen_opts->budget);
                report.put("n", gen_opts->n);
                report.put("k", gen_opts->k);
                report.put("seed", seed);
                report.put("backend", gen_opts->backend);
                auto result = rf::rado_graph(gen_opts->n, gen_opts->k, rf::Prng(seed),
                                             backend_of(gen_opts->backend), budget);
                report.put("edges", result.graph.edge_count());
                report.put("universal_set_size", result.certificate.uset.size());
                if (gen_opts->cert_out) {
                    rf::write_file(*gen_opts->cert_out, rf::serialize(result.certificate));
                    report.put("certificate", *gen_opts->cert_out);
                }
                int code = kExitOk;
                if (gen_opts->verify_k)
                    code = run_verify(report, nullptr, *gen_opts->verify_k, [&](int vk) {
                        return rf::check_ea_graph(result.graph, vk, budget);
                    });
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish_with_payload(report, timer, gen_opts->out, rf::serialize(result.graph), code);
            };
        });
    }
    {
        auto* cmd = generate->add_subcommand("rado-structure", "deterministic structure satisfying EA^sigma_k");
        cmd->add_option("--n", gen_opts->n, "universe size")->required();
        cmd->add_option("--k", gen_opts->k, "extension-axiom parameter")->required();
        add_common_gen_flags(cmd, true, true);
        cmd->add_option("--cert", gen_opts->cert_out, "also write the construction certificate");
        cmd->callback([&, gen_opts] {
            action = [&, gen_opts](Report& report) {
                const auto seed = resolve_seed(gen_opts->seed);
                const auto budget = resolve_budget(gen_opts->budget);
                const auto sig = rf::Signature::parse_compact(gen_opts->sig_text);
                report.put("sig", sig.compact());
                report.put("n", gen_opts->n);
                report.put("k", gen_opts->k);
                report.put("seed", seed);
                report.put("backend", gen_opts->backend);
                auto result = rf::rado_structure(sig, gen_opts->n, gen_opts->k, rf::Prng(seed),
                                                 backend_of(gen_opts->backend), budget);
                report.put("hash_family_size", result.certificate.phf.size());
                if (gen_opts->cert_out) {
                    rf::write_file(*gen_opts->cert_out, rf::serialize(result.certificate));
                    report.put("certificate", *gen_opts->cert_out);
                }
                int code = kExitOk;
                if (gen_opts->verify_k)
                    code = run_verify(report, &sig, *gen_opts->verify_k, [&](int vk) {
                        return rf::check_ea_structure(result.structure, vk, budget);
                    });
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish_with_payload(report, timer, gen_opts->out, rf::serialize(result.structure), code);
            };
        });
    }
    {
        auto* cmd = generate->add_subcommand("random-graph", "G(n,1/2) sample");
        cmd->add_option("--n", gen_opts->n, "vertex count")->required();
        add_common_gen_flags(cmd, false, false);
        cmd->callback([&, gen_opts] {
            action = [&, gen_opts](Report& report) {
                const auto seed = resolve_seed(gen_opts->seed);
                const auto budget = resolve_budget(gen_opts->budget);
                report.put("n", gen_opts->n);
                report.put("seed", seed);
                const auto g = rf::sample_random_graph(gen_opts->n, rf::Prng(seed));
                report.put("edges", g.edge_count());
                int code = kExitOk;
                if (gen_opts->verify_k)
                    code = run_verify(report, nullptr, *gen_opts->verify_k,
                                      [&](int vk) { return rf::check_ea_graph(g, vk, budget); });
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish_with_payload(report, timer, gen_opts->out, rf::serialize(g), code);
            };
        });
    }
    {
        auto* cmd = generate->add_subcommand("random-structure", "uniform Str[sigma,n] sample");
        cmd->add_option("--n", gen_opts->n, "universe size")->required();
        add_common_gen_flags(cmd, true, false);
        cmd->callback([&, gen_opts] {
            action = [&, gen_opts](Report& report) {
                const auto seed = resolve_seed(gen_opts->seed);
                const auto budget = resolve_budget(gen_opts->budget);
                const auto sig = rf::Signature::parse_compact(gen_opts->sig_text);
                report.put("sig", sig.compact());
                report.put("n", gen_opts->n);
                report.put("seed", seed);
                const auto a = rf::sample_random_structure(sig, gen_opts->n, rf::Prng(seed));
                int code = kExitOk;
                if (gen_opts->verify_k)
                    code = run_verify(report, &sig, *gen_opts->verify_k,
                                      [&](int vk) { return rf::check_ea_structure(a, vk, budget); });
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish_with_payload(report, timer, gen_opts->out, rf::serialize(a), code);
            };
        });
    }
    {
        auto* cmd = generate->add_subcommand("random-hypergraph", "G_t(n,1/2) sample");
        cmd->add_option("--n", gen_opts->n, "vertex count")->required();
        cmd->add_option("--t", gen_opts->t, "edge arity")->required();
        add_common_gen_flags(cmd, false, false);
        cmd->callback([&, gen_opts] {
            action = [&, gen_opts](Report& report) {
                const auto seed = resolve_seed(gen_opts->seed);
                const auto budget = resolve_budget(gen_opts->budget);
                report.put("n", gen_opts->n);
                report.put("t", gen_opts->t);
                report.put("seed", seed);
                const auto h = rf::sample_random_hypergraph(gen_opts->n, gen_opts->t, rf::Prng(seed));
                report.put("edges", h.edge_count());
                int code = kExitOk;
                if (gen_opts->verify_k)
                    code = run_verify(report, nullptr, *gen_opts->verify_k,
                                      [&](int vk) { return rf::check_ea_hypergraph(h, vk, budget); });
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish_with_payload(report, timer, gen_opts->out, rf::serialize(h), code);
            };
        });
    }

    // ---- check -------------------------------------------------------
    auto* check = app.add_subcommand("check", "exhaustive extension-axiom checks");
    check->require_subcommand(1);
    {
        struct CheckOpts {
            int k = 0;
            std::string input;
            std::optional<std::uint64_t> budget;
        };
        auto opts = std::make_shared<CheckOpts>();
        auto* cmd = check->add_subcommand("ea", "check EA_k on a graph/hypergraph/structure file");
        cmd->add_option("--k", opts->k, "extension-axiom parameter")->required();
        cmd->add_option("--input", opts->input, "input file")->required();
        cmd->add_option("--budget", opts->budget, "work budget override");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto budget = resolve_budget(opts->budget);
                const std::string text = rf::read_file(opts->input);
                report.put("input", opts->input);
                report.put("k", opts->k);
                rf::EAReport ea;
                const rf::Signature* sig = nullptr;
                rf::Signature sig_storage;
                switch (detect_kind(text)) {
                    case InputKind::graph:
                        report.put("kind", "graph");
                        ea = rf::check_ea_graph(rf::parse_graph(text), opts->k, budget);
                        break;
                    case InputKind::hypergraph:
                        report.put("kind", "hypergraph");
                        ea = rf::check_ea_hypergraph(rf::parse_hypergraph(text), opts->k, budget);
                        break;
                    case InputKind::structure: {
                        report.put("kind", "structure");
                        const auto a = rf::parse_structure(text);
                        sig_storage = a.sig();
                        sig = &sig_storage;
                        ea = rf::check_ea_structure(a, opts->k, budget);
                        break;
                    }
                }
                report.put("holds", ea.holds);
                if (!ea.holds) put_violation(report, sig, *ea.violation);
                report.put("outcome", ea.holds ? "ok" : "violated");
                return finish(report, timer, std::cout, ea.holds ? kExitOk : kExitViolated);
            };
        });
    }

    // ---- estimate ------------------------------------------------------
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo property estimation");
    estimate->require_subcommand(1);
    {
        struct EstOpts {
            std::string kind;
            int n = 0, k = 0, t = 3, trials = 0, threads = 1;
            std::string sig_text;
            std::optional<std::uint64_t> seed, budget;
        };
        auto opts = std::make_shared<EstOpts>();
        auto* cmd = estimate->add_subcommand("ea-failure", "EA failure rate over random samples");
        cmd->add_option("--kind", opts->kind, "graph|hypergraph|structure")->required();
        cmd->add_option("--n", opts->n, "size")->required();
        cmd->add_option("--k", opts->k, "extension-axiom parameter")->required();
        cmd->add_option("--t", opts->t, "hyperedge arity (hypergraph kind)");
        cmd->add_option("--sig", opts->sig_text, "signature (structure kind)");
        cmd->add_option("--trials", opts->trials, "number of samples")->required();
        cmd->add_option("--seed", opts->seed, "PRNG seed");
        cmd->add_option("--threads", opts->threads, "parallel trial workers");
        cmd->add_option("--budget", opts->budget, "work budget override");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto seed = resolve_seed(opts->seed);
                const auto budget = resolve_budget(opts->budget);
                report.put("kind", opts->kind);
                report.put("n", opts->n);
                report.put("k", opts->k);
                report.put("trials", opts->trials);
                report.put("seed", seed);
                rf::EAFailureEstimate est;
                if (opts->kind == "graph") {
                    est = rf::estimate_ea_failure_graph(opts->n, opts->k, opts->trials, rf::Prng(seed),
                                                        budget, opts->threads);
                } else if (opts->kind == "hypergraph") {
                    report.put("t", opts->t);
                    est = rf::estimate_ea_failure_hypergraph(opts->n, opts->t, opts->k, opts->trials,
                                                             rf::Prng(seed), budget, opts->threads);
                } else if (opts->kind == "structure") {
                    const auto sig = rf::Signature::parse_compact(opts->sig_text);
                    report.put("sig", sig.compact());
                    est = rf::estimate_ea_failure_structure(sig, opts->n, opts->k, opts->trials,
                                                            rf::Prng(seed), budget, opts->threads);
                } else {
                    throw std::invalid_argument("--kind must be graph, hypergraph or structure");
                }
                report.put("failures", est.failures);
                report.put("failure_rate", est.rate);
                report.put("wilson_low", est.interval.low);
                report.put("wilson_high", est.interval.high);
                report.put("outcome", "ok");
                return finish(report, timer, std::cout, kExitOk);
            };
        });
    }

    // ---- transduce -----------------------------------------------------
    auto* transduce = app.add_subcommand("transduce", "apply transductions");
    transduce->require_subcommand(1);
    {
        struct ParOpts {
            int t = 3;
            std::string input;
            std::optional<std::string> out;
        };
        auto opts = std::make_shared<ParOpts>();
        auto* cmd = transduce->add_subcommand("parity", "graph -> t-hypergraph parity transduction");
        cmd->add_option("--t", opts->t, "hyperedge arity")->required();
        cmd->add_option("--input", opts->input, "graph file")->required();
        cmd->add_option("-o,--output", opts->out, "output file (stdout when omitted)");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto g = rf::parse_graph(rf::read_file(opts->input));
                report.put("input", opts->input);
                report.put("t", opts->t);
                const auto h = rf::apply_parity_transduction(g, opts->t);
                report.put("edges", h.edge_count());
                report.put("outcome", "ok");
                return finish_with_payload(report, timer, opts->out, rf::serialize(h), kExitOk);
            };
        });
    }
    {
        struct QfOpts {
            std::string file, input;
            std::optional<std::string> out;
        };
        auto opts = std::make_shared<QfOpts>();
        auto* cmd = transduce->add_subcommand("qf", "apply a quantifier-free transduction file");
        cmd->add_option("--transduction-file", opts->file, "QF-TRANSDUCTION file")->required();
        cmd->add_option("--input", opts->input, "source structure file")->required();
        cmd->add_option("-o,--output", opts->out, "output file (stdout when omitted)");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto theta = rf::parse_transduction(rf::read_file(opts->file));
                const auto a = rf::parse_structure(rf::read_file(opts->input));
                report.put("transduction", opts->file);
                report.put("input", opts->input);
                const auto b = rf::apply_qf_transduction(theta, a);
                report.put("outcome", "ok");
                return finish_with_payload(report, timer, opts->out, rf::serialize(b), kExitOk);
            };
        });
    }

    // ---- classify --------------------------------------------------------
    {
        struct ClsOpts {
            std::string gen, adv, from, to;
        };
        auto opts = std::make_shared<ClsOpts>();
        auto* cmd = app.add_subcommand("classify", "pseudorandom-transduction existence oracle");
        cmd->add_option("--gen", opts->gen, "generator logic: FO|LFP|LFPparity")->required();
        cmd->add_option("--adv", opts->adv, "adversary logic: FO|LFP|LFPparity")->required();
        cmd->add_option("--sig-from", opts->from, "source signature")->required();
        cmd->add_option("--sig-to", opts->to, "target signature")->required();
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto sigma = rf::Signature::parse_compact(opts->from);
                const auto tau = rf::Signature::parse_compact(opts->to);
                report.put("gen", opts->gen);
                report.put("adv", opts->adv);
                report.put("sig_from", sigma.compact());
                report.put("sig_to", tau.compact());
                const auto cls = rf::classify(logic_of(opts->gen), logic_of(opts->adv), sigma, tau);
                const char* verdict = cls.verdict == rf::Verdict::Exists      ? "Exists"
                                      : cls.verdict == rf::Verdict::NotExists ? "NotExists"
                                                                              : "IffOWF";
                report.put("verdict", verdict);
                report.put("reason", cls.reason);
                report.put("outcome", "ok");
                return finish(report, timer, std::cout, kExitOk);
            };
        });
    }

    // ---- synthesize --------------------------------------------------------
    {
        struct SynOpts {
            std::string from, to;
            std::optional<std::string> out;
        };
        auto opts = std::make_shared<SynOpts>();
        auto* syn = app.add_subcommand("synthesize", "derive transductions");
        syn->require_subcommand(1);
        auto* cmd = syn->add_subcommand("stat-transduction",
                                        "exactly-uniform quantifier-free transduction (needs sigma >=_S tau)");
        cmd->add_option("--from", opts->from, "source signature")->required();
        cmd->add_option("--to", opts->to, "target signature")->required();
        cmd->add_option("-o,--output", opts->out, "output file (stdout when omitted)");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto sigma = rf::Signature::parse_compact(opts->from);
                const auto tau = rf::Signature::parse_compact(opts->to);
                report.put("sig_from", sigma.compact());
                report.put("sig_to", tau.compact());
                const auto theta = rf::build_statistical_transduction(sigma, tau);
                report.put("formulas", theta.formulas.size());
                report.put("outcome", "ok");
                return finish_with_payload(report, timer, opts->out, rf::serialize(theta), kExitOk);
            };
        });
    }

    // ---- distinguish ---------------------------------------------------
    {
        struct DisOpts {
            std::string from, to;
            int k = 0;
            std::optional<int> c;
            std::optional<std::string> input;
            std::optional<std::uint64_t> budget;
        };
        auto opts = std::make_shared<DisOpts>();
        auto* dis = app.add_subcommand("distinguish", "type-count distinguishers");
        dis->require_subcommand(1);
        auto* cmd = dis->add_subcommand("typecount",
                                        "exponent comparison at a violating k, optionally testing a structure");
        cmd->add_option("--sig-from", opts->from, "source signature")->required();
        cmd->add_option("--sig-to", opts->to, "target signature")->required();
        cmd->add_option("--k", opts->k, "violating index for sigma >=_S tau")->required();
        cmd->add_option("--c", opts->c, "tuple arity (least sufficient c when omitted)");
        cmd->add_option("--input", opts->input, "structure file to test for full type realization");
        cmd->add_option("--budget", opts->budget, "work budget override");
        cmd->callback([&, opts] {
            action = [&, opts](Report& report) {
                const auto sigma = rf::Signature::parse_compact(opts->from);
                const auto tau = rf::Signature::parse_compact(opts->to);
                report.put("sig_from", sigma.compact());
                report.put("sig_to", tau.compact());
                report.put("k", opts->k);
                const int c = opts->c ? *opts->c : rf::find_distinguisher_c(sigma, tau, opts->k);
                report.put("c", c);
                report.put("log2_types_from", rf::type_count_bound(sigma, c, opts->k));
                report.put("log2_types_to", rf::type_count_bound(tau, c, opts->k));
                int code = kExitOk;
                if (opts->input) {
                    const auto b = rf::parse_structure(rf::read_file(*opts->input));
                    const auto real = rf::eval_type_realization(b, c, opts->k, resolve_budget(opts->budget));
                    report.put("input", *opts->input);
                    report.put("all_realized", real.all_realized);
                    if (!real.all_realized) {
                        std::string desc;
                        for (std::size_t i = 0; i < real.missing->entries.size(); ++i) {
                            const auto& entry = real.missing->entries[i];
                            if (i) desc += "; ";
                            desc += b.sig().relation(entry.rel).name + "(" + join_ints(entry.surj, ",") + ")";
                        }
                        report.put("missing_type", desc.empty() ? "-" : desc);
                        code = kExitViolated;
                    }
                }
                report.put("outcome", code == kExitOk ? "ok" : "violated");
                return finish(report, timer, std::cout, code);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Report report;
    report.json_mode = json_mode;
    std::string command;
    for (int i = 1; i < argc; ++i) {
        if (argv[i][0] == '-') break;
        if (!command.empty()) command += ' ';
        command += argv[i];
    }
    report.put("command", command);

    const auto fail = [&](const char* outcome, const std::exception& e, int code) {
        report.put("outcome", outcome);
        report.put("error", e.what());
        return finish(report, timer, std::cerr, code);
    };
    try {
        return action(report);
    } catch (const rf::ParseError& e) {
        return fail("parse-error", e, kExitUsage);
    } catch (const rf::BudgetExceededError& e) {
        report.put("required_work", static_cast<double>(e.required));
        return fail("budget-exceeded", e, kExitInfeasible);
    } catch (const rf::InfeasibleParametersError& e) {
        report.put("minimum_feasible_n", e.minimum_feasible_n);
        return fail("infeasible", e, kExitInfeasible);
    } catch (const rf::OrderViolationError& e) {
        report.put("violating_k", e.violating_k);
        return fail("order-violation", e, kExitInfeasible);
    } catch (const rf::ConstructionFailureError& e) {
        return fail("construction-failed", e, kExitInfeasible);
    } catch (const rf::CapacityError& e) {
        return fail("capacity", e, kExitInfeasible);
    } catch (const std::invalid_argument& e) {
        return fail("usage-error", e, kExitUsage);
    } catch (const std::exception& e) {
        return fail("error", e, kExitInfeasible);
    }
}
