// Command-line workbench: graph/problem generation, model runs, LCL analysis,
// the bipartite 3-coloring session, separation suites, and replay.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lab/adversary.hpp"
#include "lab/color3.hpp"
#include "lab/lcl.hpp"
#include "lab/pathlab.hpp"

using namespace lab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

std::vector<int> make_order(const Graph& g, const std::string& spec, unsigned seed) {
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    if (spec == "random") {
        std::mt19937_64 rng(seed);
        std::shuffle(order.begin(), order.end(), rng);
    } else if (spec == "farfirst") {
        // greedy adversarial order: always reveal a node maximizing the
        // distance to everything revealed so far
        std::vector<int> out;
        std::vector<char> used(g.n, 0);
        std::vector<int> dist(g.n, std::numeric_limits<int>::max());
        for (int step = 0; step < g.n; ++step) {
            int best = -1;
            for (int v = 0; v < g.n; ++v)
                if (!used[v] && (best < 0 || dist[v] > dist[best] ||
                                 (dist[v] == dist[best] && v < best)))
                    best = v;
            out.push_back(best);
            used[best] = 1;
            std::vector<int> d = distances_from(g, best);
            for (int v = 0; v < g.n; ++v)
                if (d[v] >= 0) dist[v] = std::min(dist[v], d[v]);
        }
        order = out;
    } else if (spec == "comb") {
        std::vector<int> out;
        for (int stride : {7, 3, 1})
            for (int v = 0; v < g.n; ++v)
                if (v % 7 == 0 ? stride == 7 : (v % 3 == 0 ? stride == 3 : stride == 1))
                    out.push_back(v);
        order = out;
    } else if (spec == "sequential") {
        // keep identity
    } else {
        order = parse_reveal_script(slurp(spec));
    }
    return order;
}

int cmd_gen(const std::string& what, const std::vector<int>& args, const std::string& out_path) {
    Graph g;
    if (what == "path" && args.size() == 1)
        g = gen_path(args[0]);
    else if (what == "cycle" && args.size() == 1)
        g = gen_cycle(args[0]);
    else if (what == "grid" && args.size() == 2)
        g = gen_grid(args[0], args[1]);
    else if (what == "tree" && args.size() == 2)
        g = gen_complete_tree(args[0], args[1]);
    else if (what == "layered" && args.size() == 3)
        g = gen_layered_tree({args[0], args[1], args[2]}).g;
    else
        throw std::invalid_argument("unknown generator or wrong argument count");
    emit(format_graph(g), out_path);
    return 0;
}

Labeling parse_labels(const std::string& text, int n) {
    Labeling out(n, "");
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == '#') continue;
        if (tok != "label") continue;
        int v;
        std::string l;
        if (ls >> v >> l && v >= 0 && v < n) out[v] = l;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"locality-lab: executable locality models, LCL analysis, and adversaries"};
    app.require_subcommand(1);

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    std::string gen_kind, gen_out;
    std::vector<int> gen_args;
    gen->add_option("kind", gen_kind, "path|cycle|grid|tree|layered")->required();
    gen->add_option("args", gen_args, "size arguments")->required();
    gen->add_option("--out", gen_out, "output file");

    // --- color3 ---
    auto* color3 = app.add_subcommand("color3", "online 3-coloring of a bipartite graph");
    std::string c3_graph, c3_order = "random", c3_out;
    unsigned c3_seed = 1;
    color3->add_option("--graph", c3_graph, "graph spec or file")->required();
    color3->add_option("--order", c3_order, "random|farfirst|comb|sequential|<script file>");
    color3->add_option("--seed", c3_seed, "RNG seed");
    color3->add_option("--out", c3_out, "output file");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "check a labeling against a problem");
    std::string v_problem, v_graph, v_labels;
    verify->add_option("--problem", v_problem, "LCL problem file")->required();
    verify->add_option("--graph", v_graph, "graph spec or file")->required();
    verify->add_option("--labels", v_labels, "labels file (label <v> <l> lines)")->required();

    // --- analyze ---
    auto* analyze = app.add_subcommand("analyze", "path-inflexible decomposition of a rooted LCL");
    std::string a_problem, a_out;
    bool a_cert = false;
    int a_cert_T = 1;
    analyze->add_option("--problem", a_problem, "LCL problem file (or 'twohalf')")->required();
    analyze->add_flag("--certificate", a_cert, "also try to extract a solvability certificate");
    analyze->add_option("--T", a_cert_T, "locality for the certificate attempt");
    analyze->add_option("--out", a_out, "output file");

    // --- certificate ---
    auto* cert = app.add_subcommand("certificate", "extract a fast-solvability certificate");
    std::string ce_problem, ce_out, ce_alg = "greedy";
    int ce_T = 1;
    cert->add_option("--problem", ce_problem, "LCL problem file (or a fixture name)")->required();
    cert->add_option("--T", ce_T, "claimed locality of the online algorithm");
    cert->add_option("--alg", ce_alg, "greedy|firstfit");
    cert->add_option("--out", ce_out, "output file");

    // --- separate ---
    auto* sep = app.add_subcommand("separate", "run a separation suite or the generic adversary");
    std::string s_problem, s_model, s_out;
    int s_T = 1, s_x = -1;
    unsigned s_seed = 1;
    sep->add_option("--problem", s_problem,
                    "twohalf|weak-reconstruction|cycle-detection|leader-election|"
                    "nested-orientation|3coloring-paths|<lcl file>")
        ->required();
    sep->add_option("--model", s_model, "target model (informational)");
    sep->add_option("--T", s_T, "locality of the algorithm under attack");
    sep->add_option("--x", s_x, "core-path length override for the generic adversary");
    sep->add_option("--seed", s_seed, "RNG seed");
    sep->add_option("--out", s_out, "output file");

    // --- run ---
    auto* run = app.add_subcommand("run", "run a named algorithm in a model");
    std::string r_graph, r_model = "online", r_alg = "greedy3", r_order = "sequential",
                r_edits, r_out;
    int r_T = 1;
    unsigned r_seed = 1;
    run->add_option("--graph", r_graph, "graph spec or file");
    run->add_option("--model", r_model, "local|slocal|dynamic|dynamic-pm|online");
    run->add_option("--alg", r_alg, "greedy3|greedy5|mis|leader|nested|cycle|weakrec");
    run->add_option("--order", r_order, "random|farfirst|comb|sequential|<script>");
    run->add_option("--edits", r_edits, "edit script file (dynamic models)");
    run->add_option("--T", r_T, "locality");
    run->add_option("--seed", r_seed, "RNG seed");
    run->add_option("--out", r_out, "output file");

    // --- replay ---
    auto* replay = app.add_subcommand("replay", "re-check a saved witness");
    std::string rp_file, rp_problem;
    replay->add_option("--witness", rp_file, "witness file")->required();
    replay->add_option("--problem", rp_problem, "LCL problem file (or fixture name)")->required();

    CLI11_PARSE(app, argc, argv);

    auto load_rooted = [](const std::string& spec) {
        if (spec == "twohalf") return twohalf_problem();
        if (spec == "3col-binary") return rooted_coloring(3, 2);
        if (spec == "2col-binary") return two_coloring_binary();
        return RootedLcl::parse(slurp(spec));
    };

    try {
        if (*gen) return cmd_gen(gen_kind, gen_args, gen_out);

        if (*color3) {
            Graph g = graph_from_spec(c3_graph);
            std::vector<int> order = make_order(g, c3_order, c3_seed);
            ThreeColoringRun res = run_three_coloring(g, order);
            std::ostringstream out;
            out << "command: color3\nseed: " << c3_seed << "\nn: " << g.n
                << "\nT: " << ThreeColoring::locality_for(g.n) << "\ncolors-used: "
                << res.colors_used << "\nmax-border: " << res.stats.max_border
                << "\nmax-commit-radius: " << res.stats.max_commit_radius
                << "\nescape-events: " << res.stats.escape_events
                << "\nproper: " << (proper_coloring(g, res.run.labels) ? "yes" : "NO") << "\n";
            for (int v = 0; v < g.n; ++v) out << "label " << v << " " << res.run.labels[v] << "\n";
            emit(out.str(), c3_out);
            bool ok = proper_coloring(g, res.run.labels) && res.colors_used <= 3 &&
                      res.stats.escape_events == 0;
            return ok ? 0 : 1;
        }

        if (*verify) {
            Graph g = graph_from_spec(v_graph);
            Labeling labels = parse_labels(slurp(v_labels), g.n);
            std::string text = slurp(v_problem);
            std::vector<Violation> viols;
            if (text.rfind("lcl path", 0) == 0)
                viols = verify_path_graph(PathLcl::parse(text), g, labels);
            else
                viols = verify_rooted(load_rooted(v_problem), g, labels);
            for (const auto& v : viols)
                std::cout << "violation node=" << v.node << " " << v.message << "\n";
            std::cout << (viols.empty() ? "verdict: accepted" : "verdict: rejected") << "\n";
            return viols.empty() ? 0 : 1;
        }

        if (*analyze) {
            RootedLcl problem = load_rooted(a_problem);
            ClassificationReport rep = classify_rooted(problem, a_cert, a_cert_T);
            std::ostringstream out;
            out << "command: analyze\n" << rep.format(problem);
            emit(out.str(), a_out);
            return 0;
        }

        if (*cert) {
            RootedLcl problem = load_rooted(ce_problem);
            auto alg = ce_alg == "firstfit" ? make_first_fit(problem)
                                            : make_greedy_completion(problem);
            CertificateExtraction ex = extract_certificate(problem, *alg, ce_T);
            std::ostringstream out;
            out << "command: certificate\nT: " << ce_T << "\n";
            if (ex.ok) {
                out << "result: accepted\n" << ex.certificate.format(problem);
            } else {
                out << "result: " << (ex.inconclusive ? "inconclusive" : "failed") << "\n"
                    << "reason: " << ex.failure << "\n";
            }
            emit(out.str(), ce_out);
            return ex.ok ? 0 : 1;
        }

        if (*sep) {
            std::ostringstream out;
            out << "command: separate\nseed: " << s_seed << "\n";
            bool good;
            if (s_problem == "weak-reconstruction") {
                SuiteResult r = weak_reconstruction_suite(s_seed);
                out << r.format();
                good = r.all_expected;
            } else if (s_problem == "cycle-detection") {
                SuiteResult r = cycle_detection_suite();
                out << r.format();
                good = r.all_expected;
            } else if (s_problem == "leader-election") {
                SuiteResult r = leader_election_suite();
                out << r.format();
                good = r.all_expected;
            } else if (s_problem == "nested-orientation") {
                SuiteResult r = nested_orientation_suite(s_seed);
                out << r.format();
                good = r.all_expected;
            } else if (s_problem == "3coloring-paths") {
                SuiteResult r = three_coloring_paths_suite();
                out << r.format();
                good = r.all_expected;
            } else {
                RootedLcl problem = load_rooted(s_problem);
                SuperlogOptions opts;
                opts.x = s_x;
                auto alg = make_greedy_completion(problem);
                SeparationReport r = superlog_adversary(problem, *alg, s_T, opts);
                out << r.format();
                good = r.outcome == SeparationReport::AdversaryWon;
            }
            emit(out.str(), s_out);
            return good ? 0 : 1;
        }

        if (*replay) {
            // witness format: "witness-unlabelable" + graph + label lines
            std::string text = slurp(rp_file);
            auto nl = text.find('\n');
            std::string head = text.substr(0, nl);
            if (head != "witness-unlabelable")
                throw std::invalid_argument("unknown witness kind: " + head);
            std::string rest = text.substr(nl + 1);
            Graph g = parse_graph_string(rest);
            Labeling labels = parse_labels(rest, g.n);
            RootedLcl problem = load_rooted(rp_problem);
            bool completable = rooted_completion_exists(problem, g, labels);
            std::cout << "witness nodes: " << g.n << "\n"
                      << "completable: " << (completable ? "yes (NOT a valid witness)" : "no")
                      << "\n";
            return completable ? 1 : 0;
        }

        if (*run) {
            std::ostringstream out;
            out << "command: run\nmodel: " << r_model << "\nalg: " << r_alg
                << "\nseed: " << r_seed << "\nT: " << r_T << "\n";
            Graph g = graph_from_spec(r_graph);
            std::vector<int> order = make_order(g, r_order, r_seed);
            Labeling labels;
            ExecutionTrace trace;
            if (r_model == "online") {
                std::unique_ptr<OnlineAlgorithm> alg;
                if (r_alg == "greedy-color")
                    alg = make_online_greedy_coloring();
                else if (r_alg == "path-greedy3")
                    alg = make_path_greedy(path_coloring(3));
                else if (r_alg == "leader")
                    alg = nullptr;  // packaged in `separate --problem leader-election`
                if (!alg) throw std::invalid_argument("unknown online algorithm: " + r_alg);
                OnlineRun res = run_online(*alg, g, order, r_T);
                labels = res.labels;
                trace = res.trace;
            } else if (r_model == "slocal") {
                std::unique_ptr<SlocalAlgorithm> alg;
                if (r_alg == "nested") alg = make_nested_orientation_slocal();
                if (!alg) throw std::invalid_argument("unknown SLOCAL algorithm: " + r_alg);
                SlocalRun res = run_slocal(*alg, g, order, r_T);
                labels = res.labels;
                trace = res.trace;
            } else if (r_model == "local") {
                std::unique_ptr<LocalAlgorithm> alg;
                int T = r_T;
                if (r_alg == "cv-color") {
                    alg = make_cole_vishkin_coloring(g.n - 1);
                    T = cole_vishkin_locality(g.n - 1);
                } else if (r_alg == "degree") {
                    alg = make_degree_labeling();
                    T = 1;
                }
                if (!alg) throw std::invalid_argument("unknown LOCAL algorithm: " + r_alg);
                labels = run_local(*alg, g, default_uids(g.n), T);
            } else {
                throw std::invalid_argument(
                    "dynamic runs are packaged in `separate`; models here: online|slocal|local");
            }
            out << "labels:\n";
            for (int v = 0; v < g.n; ++v) out << "label " << v << " " << labels[v] << "\n";
            if (!trace.steps.empty()) out << "trace:\n" << trace.to_log();
            emit(out.str(), r_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
