// eanet: construct, check, and certify expansive automata networks, and
// export the orthogonal arrays and codes they induce.

#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ean/coding.hpp"
#include "ean/constructions.hpp"
#include "ean/digraph.hpp"
#include "ean/expansivity.hpp"
#include "ean/io.hpp"
#include "ean/network.hpp"

using namespace ean;

namespace {

// CommandOutcome contract: 0 = holds/succeeded, 1 = fails/exhausted,
// 2 = input or usage error, 3 = resource cap exceeded.
int exit_code_for(const Error& e) {
    switch (e.code()) {
        case errc::cap_exceeded:
            return 3;
        case errc::not_expansive:
        case errc::not_bijective:
        case errc::no_linear_solution:
        case errc::not_coverable:
        case errc::alphabet_too_small:
        case errc::bush_bound_violated:
        case errc::not_super_expansive:
            return 1;
        default:
            return 2;
    }
}

std::string config_str(const Network& f, std::uint64_t index) {
    return Configuration::from_index(index, f.n(), f.q()).str();
}

// Parse only the header to enforce the state cap before materializing a
// table body.
Network load_network(const std::string& path, const Caps& caps) {
    const std::string text = read_file(path);
    {
        std::istringstream head(text);
        std::string kind;
        std::uint32_t n = 0, q = 0;
        for (int i = 0; i < 3; ++i) {
            std::string line;
            std::getline(head, line);
            std::istringstream ls(line);
            std::string key, value;
            ls >> key >> value;
            if (key == "kind:") kind = value;
            if (key == "n:") n = std::uint32_t(std::stoul(value));
            if (key == "q:") q = std::uint32_t(std::stoul(value));
        }
        if (kind == "table" && n >= 1 && q >= 2)
            require(checked_power(q, n) <= caps.max_states, errc::cap_exceeded,
                    "table body exceeds --max-states");
    }
    std::istringstream in(text);
    return parse_network(in);
}

std::vector<std::uint32_t> parse_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ','))
        if (!part.empty()) out.push_back(std::uint32_t(std::stoul(part)));
    return out;
}

void print_depths(const ExpansivityReport& r) {
    std::cout << "vertex depths:";
    for (const auto& d : r.vertex_depth) {
        if (d)
            std::cout << ' ' << *d;
        else
            std::cout << " -";
    }
    std::cout << '\n';
}

int run_check(const std::string& path, const std::string& mode, const Caps& caps) {
    const Network f = load_network(path, caps);

    if (mode == "linear-criterion") {
        require(f.is_linear(), errc::bad_params, "mode linear-criterion needs a linear network");
        const auto r = check_expansive_linear(f.matrix());
        std::cout << "mode: linear-criterion\n";
        std::cout << "det(M) = " << r.det_m << '\n';
        for (std::uint32_t u = 0; u < r.det_n.size(); ++u)
            std::cout << "det(N_" << (u + 1) << ") = " << r.det_n[u] << '\n';
        std::cout << "verdict: " << (r.holds ? "expansive" : "not expansive") << '\n';
        return r.holds ? 0 : 1;
    }

    if (mode == "super") {
        const auto r = check_super_expansive(f, caps);
        std::cout << "mode: super\n";
        if (!r.gate.empty()) std::cout << "gate: " << r.gate << '\n';
        if (r.failing) {
            std::cout << "failing observation:";
            for (auto [v, t] : r.failing->cells) std::cout << " (" << v << "," << t << ")";
            std::cout << '\n';
        }
        std::cout << "verdict: " << (r.holds ? "super-expansive" : "not super-expansive") << '\n';
        return r.holds ? 0 : 1;
    }

    if (mode == "strong") {
        std::cout << "mode: strong\n";
        const auto base = check_expansive(f, ObservedOutput::trace_from_one, caps);
        print_depths(base);
        if (!base.holds) {
            std::cout << "verdict: not expansive\n";
            return 1;
        }
        std::uint64_t time = 0;
        for (const auto& d : base.vertex_depth) time = std::max(time, d.value());
        std::cout << "T(f) = " << time << '\n';
        const bool strong = time == f.n();
        std::cout << "verdict: " << (strong ? "strongly expansive" : "not strongly expansive")
                  << '\n';
        return strong ? 0 : 1;
    }

    ObservedOutput kind = ObservedOutput::trace_from_one;
    if (mode == "weak") kind = ObservedOutput::trace_from_zero;
    if (mode == "quasi") kind = ObservedOutput::neighborhood_from_zero;
    const auto r = check_expansive(f, kind, caps);
    std::cout << "mode: " << mode << '\n';
    print_depths(r);
    if (r.holds) {
        if (mode == "expansive") {
            std::uint64_t time = 0;
            for (const auto& d : r.vertex_depth) time = std::max(time, d.value());
            std::cout << "T(f) = " << time << '\n';
        }
        std::cout << "verdict: " << mode << '\n';
        return 0;
    }
    std::cout << "witness vertex: " << *r.witness_vertex << '\n';
    std::cout << "merged pair: " << config_str(f, r.merged_pair->first) << ' '
              << config_str(f, r.merged_pair->second) << '\n';
    std::cout << "verdict: not " << mode << '\n';
    return 1;
}

int run_graph(const std::string& path, const std::string& require_prop) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    const Digraph d = parse_graph(in);

    const bool strong = d.is_strong();
    const auto decomposition = d.cycle_decomposition();
    std::cout << "n: " << d.n() << '\n';
    std::cout << "strong: " << (strong ? "yes" : "no") << '\n';
    std::cout << "coverable: " << (decomposition ? "yes" : "no") << '\n';
    std::cout << "term-rank: " << d.term_rank() << '\n';
    if (decomposition) {
        std::cout << "decomposition:";
        for (const auto& cycle : *decomposition) {
            std::cout << " (";
            for (std::size_t i = 0; i < cycle.size(); ++i)
                std::cout << (i ? " " : "") << cycle[i];
            std::cout << ")";
        }
        std::cout << '\n';
    } else {
        std::cout << "decomposition: none\n";
    }

    if (require_prop == "strong" && !strong) return 1;
    if (require_prop == "coverable" && !decomposition) return 1;
    return 0;
}

int write_construction(const ConstructionReport& report, const std::string& out_path,
                       const Caps& caps) {
    std::ostringstream sidecar;
    sidecar << "construction: " << report.name << '\n';
    sidecar << "params: " << report.params << '\n';
    if (report.seed) sidecar << "seed: " << *report.seed << '\n';
    bool all_ok = true;
    for (const auto& claim : report.claims) {
        const bool actual = verify_claim(report.network, claim.predicate, caps);
        const bool ok = actual == claim.expected;
        all_ok = all_ok && ok;
        sidecar << "claim " << claim.predicate << ": expected=" << (claim.expected ? "yes" : "no")
                << " actual=" << (actual ? "yes" : "no") << (ok ? " ok" : " MISMATCH") << '\n';
    }
    for (const auto& note : report.notes) sidecar << "note: " << note << '\n';

    write_file(out_path, format_network(report.network));
    write_file(out_path + ".report", sidecar.str());
    std::cout << sidecar.str();
    std::cout << "wrote " << out_path << '\n';
    return all_ok ? 0 : 1;
}

int run_metrics(const std::string& path, bool want_time, bool want_frequency, const Caps& caps) {
    const Network f = load_network(path, caps);
    if (want_time) {
        const auto r = expansion_time_report(f, caps);
        std::cout << "T = " << r.time << '\n';
        std::cout << "worst pair: x=" << config_str(f, r.x) << " y=" << config_str(f, r.y)
                  << " vertex=" << r.vertex << " tau=" << r.time << '\n';
    }
    if (want_frequency) {
        const auto r = expansion_frequency_report(f, caps);
        std::cout << "phi = " << r.phi << '\n';
        std::cout << "minimizing pair: x=" << config_str(f, r.x) << " y=" << config_str(f, r.y)
                  << " vertex=" << r.vertex << '\n';
    }
    return 0;
}

int run_code(const std::string& path, bool do_export, const std::string& out_path,
             std::optional<std::uint32_t> strength, bool do_distance, const Caps& caps) {
    const Network f = load_network(path, caps);
    const OrthogonalArray array = orbit_array(f, caps);

    if (strength) {
        const bool ok = check_oa(array, *strength, caps);
        std::cout << "strength " << *strength << ": " << (ok ? "yes" : "no") << '\n';
        return ok ? 0 : 1;
    }
    if (do_distance) {
        const Code code = code_from_array(array);
        std::cout << "d = " << code.min_distance() << '\n';
        return 0;
    }
    if (do_export) {
        const Code code = code_from_array(array);
        std::optional<Matrix> generator;
        if (f.is_linear() && f.matrix().ring().is_math_field() &&
            check_super_expansive_linear(f.matrix(), caps).holds)
            generator = generator_matrix(f.matrix(), caps);
        const std::string text = format_code(code, generator);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            write_file(out_path, text);
            std::cout << text.substr(0, text.find('\n') + 1);
            std::cout << "wrote " << out_path << '\n';
        }
        return 0;
    }
    fail(errc::bad_params, "choose one of --export, --strength, --distance");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expansive automata network toolkit"};
    app.require_subcommand(1);

    Caps caps;
    app.add_option("--max-states", caps.max_states, "state-space cap for exhaustive scans")
        ->capture_default_str();
    app.add_option("--max-observations", caps.max_observations,
                   "cap on enumerated observation subsets")
        ->capture_default_str();

    // check
    auto* check = app.add_subcommand("check", "run an expansivity predicate with certificate");
    std::string check_file, check_mode = "expansive";
    check->add_option("file", check_file, "network file")->required();
    check->add_option("--mode", check_mode, "predicate to check")
        ->check(CLI::IsMember({"expansive", "weak", "quasi", "strong", "super", "linear-criterion"}));

    // graph
    auto* graph = app.add_subcommand("graph", "query a digraph");
    std::string graph_file, graph_require;
    graph->add_option("file", graph_file, "graph file")->required();
    graph->add_option("--require", graph_require, "exit 1 unless the property holds")
        ->check(CLI::IsMember({"strong", "coverable"}));

    // construct
    auto* construct = app.add_subcommand("construct", "build a network with a verified claim set");
    std::string cname, cout_path, cgraph, cloops, clengths, cout_links, cin_links;
    std::uint32_t cn = 0, cq = 0, cbudget = 100;
    std::uint64_t cseed = 0;
    construct->add_option("name", cname, "construction name")
        ->required()
        ->check(CLI::IsMember({"twisted-lex", "primitive-mult", "cycle-with-loops",
                               "cycle-of-cycles", "star-two-loops", "nonsingular", "random-linear",
                               "super-search"}));
    construct->add_option("-o,--out", cout_path, "output network file")->required();
    construct->add_option("--n", cn, "number of vertices");
    construct->add_option("--q", cq, "alphabet size");
    construct->add_option("--seed", cseed, "RNG seed")->capture_default_str();
    construct->add_option("--budget", cbudget, "search budget")->capture_default_str();
    construct->add_option("--graph", cgraph, "graph file (nonsingular, random-linear)");
    construct->add_option("--loops", cloops, "loop vertices, comma separated (cycle-with-loops)");
    construct->add_option("--lengths", clengths, "cycle lengths (cycle-of-cycles)");
    construct->add_option("--out-links", cout_links, "out-link positions (cycle-of-cycles)");
    construct->add_option("--in-links", cin_links, "in-link positions (cycle-of-cycles)");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "expansion time and frequency");
    std::string metrics_file;
    bool want_time = false, want_frequency = false;
    metrics->add_option("file", metrics_file, "network file")->required();
    metrics->add_flag("--time", want_time, "expansion time with its worst pair");
    metrics->add_flag("--frequency", want_frequency, "expansion frequency with its minimizing pair");

    // code
    auto* code = app.add_subcommand("code", "orbit array and code exports");
    std::string code_file, code_out;
    bool code_export = false, code_distance = false;
    std::optional<std::uint32_t> code_strength;
    std::uint32_t strength_value = 0;
    code->add_option("file", code_file, "network file")->required();
    code->add_flag("--export", code_export, "emit the code file");
    auto* strength_opt = code->add_option("--strength", strength_value, "check strength s at index 1");
    code->add_flag("--distance", code_distance, "print the minimum distance");
    code->add_option("-o,--out", code_out, "output code file");

    // search
    auto* search = app.add_subcommand("search", "randomized super-expansive search");
    std::uint32_t sn = 0, sq = 0, sbudget = 100;
    std::uint64_t sseed = 0;
    std::string sout;
    search->add_option("--n", sn, "number of vertices")->required();
    search->add_option("--q", sq, "alphabet size")->required();
    search->add_option("--seed", sseed, "RNG seed")->capture_default_str();
    search->add_option("--budget", sbudget, "number of samples")->capture_default_str();
    search->add_option("-o,--out", sout, "output network file");

    try {
        app.parse(argc, argv);

        if (*check) return run_check(check_file, check_mode, caps);
        if (*graph) return run_graph(graph_file, graph_require);

        if (*construct) {
            if (cname == "twisted-lex") return write_construction(twisted_lex_network(cn, cq, caps), cout_path, caps);
            if (cname == "primitive-mult")
                return write_construction(primitive_mult_network(cn, cq), cout_path, caps);
            if (cname == "star-two-loops")
                return write_construction(star_two_loops_network(cq, caps), cout_path, caps);
            if (cname == "cycle-with-loops") {
                const auto loops_list = parse_list(cloops);
                const std::set<std::uint32_t> loops(loops_list.begin(), loops_list.end());
                const Matrix m = cycle_with_loops_network(cn, loops, cq, caps);
                ConstructionReport report(Network::linear(m), "cycle-with-loops",
                                          "n=" + std::to_string(cn) + " q=" + std::to_string(cq));
                report.claims.push_back({"expansive", true});
                return write_construction(report, cout_path, caps);
            }
            if (cname == "cycle-of-cycles") {
                const auto lengths = parse_list(clengths);
                const auto outs = parse_list(cout_links);
                const auto ins = parse_list(cin_links);
                require(outs.size() == lengths.size() && ins.size() == lengths.size(),
                        errc::bad_params, "--lengths, --out-links, --in-links must align");
                CycleOfCycles shape;
                for (std::size_t i = 0; i < lengths.size(); ++i)
                    shape.parts.push_back({lengths[i], outs[i], ins[i]});
                return write_construction(cycle_of_cycles_network(shape, cq), cout_path, caps);
            }
            if (cname == "nonsingular") {
                require(!cgraph.empty(), errc::bad_params, "nonsingular needs --graph");
                std::istringstream in(read_file(cgraph));
                const Matrix m = nonsingular_matrix_for_graph(parse_graph(in), cq);
                ConstructionReport report(Network::linear(m), "nonsingular",
                                          "q=" + std::to_string(cq) + " graph=" + cgraph);
                report.claims.push_back({"bijective", true});
                return write_construction(report, cout_path, caps);
            }
            if (cname == "random-linear") {
                require(!cgraph.empty(), errc::bad_params, "random-linear needs --graph");
                std::istringstream in(read_file(cgraph));
                return write_construction(random_linear_strategy(parse_graph(in), cq, cseed),
                                          cout_path, caps);
            }
            // super-search
            const auto found = super_expansive_search(cn, cq, cseed, cbudget, caps);
            if (!found) {
                std::cout << "search exhausted after " << cbudget << " samples (seed " << cseed
                          << ")\n";
                return 1;
            }
            ConstructionReport report(Network::linear(*found), "super-search",
                                      "n=" + std::to_string(cn) + " q=" + std::to_string(cq));
            report.seed = cseed;
            report.claims.push_back({"super-expansive", true});
            return write_construction(report, cout_path, caps);
        }

        if (*metrics) {
            require(want_time || want_frequency, errc::bad_params,
                    "choose --time and/or --frequency");
            return run_metrics(metrics_file, want_time, want_frequency, caps);
        }

        if (*code) {
            if (strength_opt->count()) code_strength = strength_value;
            return run_code(code_file, code_export, code_out, code_strength, code_distance, caps);
        }

        if (*search) {
            const auto found = super_expansive_search(sn, sq, sseed, sbudget, caps);
            if (!found) {
                std::cout << "search exhausted after " << sbudget << " samples (seed " << sseed
                          << ")\n";
                return 1;
            }
            std::cout << "found after seed " << sseed << '\n';
            std::cout << format_matrix(*found);
            if (!sout.empty()) {
                ConstructionReport report(Network::linear(*found), "super-search",
                                          "n=" + std::to_string(sn) + " q=" + std::to_string(sq));
                report.seed = sseed;
                report.claims.push_back({"super-expansive", true});
                return write_construction(report, sout, caps);
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
