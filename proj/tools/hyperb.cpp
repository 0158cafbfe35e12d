// Command-line front end: graph generation plus the verification suites.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hyperb/generators.hpp"
#include "hyperb/harness.hpp"

using namespace hyperb;

int main(int argc, char** argv) {
    CLI::App app{"verification suites for chain parametrices on hyperbolic graphs"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string caps_spec, alpha_list;
    int N = -1, Q = -1, P = -1, M = -1, delta = -1;
    double B = -1, alpha = -1, s = -1, T = -1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--graph", cfg.graph_spec,
                        "graph spec: tree:q,depth | cycle:n | free_group_ball:rank,r | "
                        "free_product_ball:r | file:path");
        sub->add_option("--N", N);
        sub->add_option("--Q", Q);
        sub->add_option("--P", P);
        sub->add_option("--M", M);
        sub->add_option("--B", B);
        sub->add_option("--alpha", alpha);
        sub->add_option("--s", s);
        sub->add_option("--T", T);
        sub->add_option("--delta", delta, "known hyperbolicity constant (skips the scan)");
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--out", cfg.out_path, "write the JSON report here");
        sub->add_option("--exhaustive-threshold", cfg.exhaustive_threshold);
        sub->add_option("--caps", caps_spec, "k_max,m_max,l_total,region_cap");
        sub->add_option("--dump-operators", cfg.dump_operators,
                        "write the parametrices as per-degree sparse triplets");
        sub->add_option("--matrix-out", cfg.db_matrix_out, "write the averaged distance matrix");
        sub->add_option("--defect-csv", cfg.defect_csv, "write the quadrilateral defect trend");
        sub->add_option("--csv", cfg.norms_csv, "write norm values and tail brackets");
        sub->add_option("--alpha-list", alpha_list, "comma-separated fractional powers");
        sub->add_flag("--T-search", "search for the smallest conjugation strength (always on)");
    };

    auto* gen = app.add_subcommand("gen", "emit a generated graph as JSON");
    std::string gen_out = "graph.json";
    gen->add_option("--graph", cfg.graph_spec);
    gen->add_option("--out", gen_out);

    for (const char* name : {"delta", "geometry", "rips", "measures", "parametrix", "dball",
                             "norms", "spectral", "all"})
        add_common(app.add_subcommand(name, name));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            save_graph_json(make_graph(cfg.graph_spec), gen_out);
            std::cout << "wrote " << gen_out << "\n";
            return 0;
        }
        if (N >= 0) cfg.N = N;
        if (Q >= 0) cfg.Q = Q;
        if (P >= 0) cfg.P = P;
        if (M >= 0) cfg.M = M;
        if (B >= 0) cfg.B = B;
        if (alpha >= 0) cfg.alpha = alpha;
        if (s >= 0) cfg.s = s;
        if (T >= 0) cfg.T = T;
        if (delta >= 0) cfg.delta_override = delta;
        if (!alpha_list.empty()) {
            cfg.alpha_list.clear();
            std::stringstream ss(alpha_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.alpha_list.push_back(std::stod(tok));
        }
        if (!caps_spec.empty()) {
            int k, m, l, r;
            if (std::sscanf(caps_spec.c_str(), "%d,%d,%d,%d", &k, &m, &l, &r) == 4) {
                cfg.caps.k_max = k;
                cfg.caps.m_max = m;
                cfg.caps.l_total_max = l;
                cfg.caps.region_cap = r;
            } else {
                std::cerr << "bad --caps\n";
                return 2;
            }
        }
        cfg.suites.clear();
        for (auto* sub : app.get_subcommands()) cfg.suites.push_back(sub->get_name());
        RunResult r = run_suite(cfg);
        std::cout << r.report.dump(2) << "\n";
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
