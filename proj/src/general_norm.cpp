#include "hyperb/general_norm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyperb {

namespace {

int dist_set(const DistanceGraph& g, const VertexSet& A, const VertexSet& B) {
    int best = -1;
    for (int a : A)
        for (int b : B) {
            int d = g.d(a, b);
            if (best < 0 || d < best) best = d;
        }
    return best;
}

// nonempty subsets of `region` with diameter <= cap, lexicographic growth
void subsets_with_diameter(const DistanceGraph& g, const VertexSet& region, int cap,
                           std::vector<VertexSet>& out) {
    std::vector<VertexSet> stack;
    for (size_t i = 0; i < region.size(); ++i) stack.push_back({region[i]});
    while (!stack.empty()) {
        VertexSet s = stack.back();
        stack.pop_back();
        out.push_back(s);
        for (size_t j = 0; j < region.size(); ++j) {
            Vertex v = region[j];
            if (v <= s.back()) continue;
            bool ok = true;
            for (Vertex u : s)
                if (g.d(u, v) > cap) { ok = false; break; }
            if (ok) {
                VertexSet t = s;
                t.push_back(v);
                stack.push_back(std::move(t));
            }
        }
    }
}

// candidates for the next set in the chain condition
VertexSet next_set_candidates(const RipsComplex& rips, const ParameterSet& par, Vertex x, int k,
                              const VertexSet& Si) {
    const DistanceGraph& g = rips.graph();
    int delta = g.delta();
    int F = derived_F(delta, par.N, rips.p_max());
    VertexSet ball = g.ball(x, k);
    VertexSet out = Si;
    for (int y = 0; y < g.vertex_count(); ++y) {
        if (set_contains(out, y)) continue;
        bool in = false;
        for (Vertex xt : ball) {
            for (Vertex a : Si) {
                long da = g.d(y, a);
                if (g.in_eps_geod(y, xt, a, 4 * delta) && da > par.N - 2 * delta &&
                    da <= static_cast<long>(par.Q) * par.N) { in = true; break; }
                if (g.in_eps_geod(y, xt, a, F) && Rat(da) >= Rat(par.Q, F)) { in = true; break; }
            }
            if (in) break;
        }
        if (in) out.push_back(y);
    }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet y_region(const RipsComplex& rips, const ParameterSet& par, Vertex x, int k,
                   const std::vector<VertexSet>& S, int i, int m) {
    const DistanceGraph& g = rips.graph();
    VertexSet out;
    if (i < m) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            bool in = false;
            for (Vertex y : S[i]) {
                for (Vertex z : S[i + 1])
                    if (g.in_eps_geod(v, y, z, par.P)) { in = true; break; }
                if (in) break;
            }
            if (in) out.push_back(v);
        }
    } else {
        VertexSet ball = g.ball(x, k);
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (g.d(x, v) < k + 3 * par.P) continue;
            bool in = false;
            for (Vertex y : S[m]) {
                for (Vertex xt : ball)
                    if (g.in_eps_geod(v, xt, y, 2 * par.P)) { in = true; break; }
                if (in) break;
            }
            if (in) out.push_back(v);
        }
    }
    return out;
}

struct TupleSig {
    std::vector<long> v;
    bool operator<(const TupleSig& o) const { return v < o.v; }
};

TupleSig tuple_signature(const DistanceGraph& g, Vertex x, const NormTuple& t) {
    TupleSig s;
    s.v.push_back(g.d(x, t.a[0]));
    for (Vertex a : t.a) s.v.push_back(g.d(x, a));
    for (auto& Si : t.S) {
        s.v.push_back(static_cast<long>(Si.size()));
        s.v.push_back(g.dist_to_set(x, Si));
        s.v.push_back(g.dmax_to_set(x, Si));
    }
    for (auto& Yi : t.Y)
        for (auto& Yij : Yi) {
            s.v.push_back(static_cast<long>(Yij.size()));
            s.v.push_back(g.dist_to_set(x, Yij));
        }
    // pairwise distance profile of the role points
    std::vector<Vertex> pts = t.a;
    for (auto& Si : t.S) pts.insert(pts.end(), Si.begin(), Si.end());
    std::vector<long> prof;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j) prof.push_back(g.d(pts[i], pts[j]));
    std::sort(prof.begin(), prof.end());
    s.v.insert(s.v.end(), prof.begin(), prof.end());
    return s;
}

VertexSet tuple_configuration(const DistanceGraph& g, const ParameterSet& par, Vertex x,
                              const NormTuple& t) {
    VertexSet out = g.ball(x, t.k + 2 * par.M);
    auto add_ball = [&](const VertexSet& A, int r) {
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (set_contains(out, v)) continue;
            for (Vertex a : A)
                if (g.d(a, v) <= r) { out.push_back(v); break; }
        }
        std::sort(out.begin(), out.end());
    };
    for (auto& Si : t.S) add_ball(Si, par.M);
    for (auto& Yi : t.Y)
        for (auto& Yij : Yi) add_ball(Yij, par.M);
    std::sort(out.begin(), out.end());
    return out;
}

struct MatchContext {
    const DistanceGraph& g;
    VertexSet base;  // fixed pointwise
    std::vector<Vertex> free1, free2;
    std::vector<std::vector<long>> role1, role2;  // per free point: role/distance profile
    std::vector<int> assign;                      // free1 index -> free2 index
    std::vector<char> used;
};

bool match_rec(MatchContext& mc, size_t i) {
    if (i == mc.free1.size()) return true;
    for (size_t j = 0; j < mc.free2.size(); ++j) {
        if (mc.used[j] || mc.role1[i] != mc.role2[j]) continue;
        bool ok = true;
        for (size_t prev = 0; prev < i && ok; ++prev)
            ok = mc.g.d(mc.free1[i], mc.free1[prev]) ==
                 mc.g.d(mc.free2[j], mc.free2[mc.assign[prev]]);
        if (!ok) continue;
        mc.assign[i] = static_cast<int>(j);
        mc.used[j] = 1;
        if (match_rec(mc, i + 1)) return true;
        mc.used[j] = 0;
    }
    return false;
}

}  // namespace

bool tuples_equivalent(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                       const NormTuple& t1, const NormTuple& t2) {
    const DistanceGraph& g = rips.graph();
    if (t1.k != t2.k || t1.S.size() != t2.S.size() || t1.Y.size() != t2.Y.size()) return false;
    for (size_t i = 0; i < t1.S.size(); ++i)
        if (t1.S[i].size() != t2.S[i].size()) return false;
    for (size_t i = 0; i < t1.Y.size(); ++i) {
        if (t1.Y[i].size() != t2.Y[i].size()) return false;
        for (size_t j = 0; j < t1.Y[i].size(); ++j)
            if (t1.Y[i][j].size() != t2.Y[i][j].size()) return false;
    }
    VertexSet c1 = tuple_configuration(g, par, x, t1);
    VertexSet c2 = tuple_configuration(g, par, x, t2);
    if (c1.size() != c2.size()) return false;
    VertexSet base = g.ball(x, t1.k + 2 * par.M);
    // base points map to themselves; roles there must agree
    auto role_in_base = [&](const NormTuple& t, Vertex v, std::vector<long>& r) {
        for (Vertex a : t.a) r.push_back(a == v);
        for (auto& Si : t.S) r.push_back(set_contains(Si, v));
        for (auto& Yi : t.Y)
            for (auto& Yij : Yi) r.push_back(set_contains(Yij, v));
    };
    for (Vertex v : base) {
        std::vector<long> r1p, r2p;
        role_in_base(t1, v, r1p);
        role_in_base(t2, v, r2p);
        if (r1p != r2p) return false;
    }
    MatchContext mc{g, base, {}, {}, {}, {}, {}, {}};
    auto profile = [&](const NormTuple& t, Vertex v) {
        std::vector<long> r;
        role_in_base(t, v, r);
        for (Vertex a : t.a) r.push_back(g.d(v, a));
        for (auto& Si : t.S)
            for (Vertex a : Si) r.push_back(g.d(v, a));
        for (auto& Yi : t.Y)
            for (auto& Yij : Yi) {
                long mn = g.vertex_count();
                for (Vertex a : Yij) mn = std::min<long>(mn, g.d(v, a));
                r.push_back(mn);
            }
        for (Vertex b : base) r.push_back(g.d(v, b));
        return r;
    };
    // the a-tuple must map in order; fold that into the role bits above
    for (Vertex v : c1)
        if (!set_contains(base, v)) {
            mc.free1.push_back(v);
            mc.role1.push_back(profile(t1, v));
        }
    for (Vertex v : c2)
        if (!set_contains(base, v)) {
            mc.free2.push_back(v);
            mc.role2.push_back(profile(t2, v));
        }
    if (mc.free1.size() != mc.free2.size()) return false;
    {
        auto s1 = mc.role1;
        auto s2 = mc.role2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) return false;
    }
    mc.assign.assign(mc.free1.size(), -1);
    mc.used.assign(mc.free2.size(), 0);
    return match_rec(mc, 0);
}

bool tuples_equivalent_bruteforce(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                                  const NormTuple& t1, const NormTuple& t2) {
    const DistanceGraph& g = rips.graph();
    VertexSet c1 = tuple_configuration(g, par, x, t1);
    VertexSet c2 = tuple_configuration(g, par, x, t2);
    if (c1.size() != c2.size()) return false;
    VertexSet base = g.ball(x, t1.k + 2 * par.M);
    std::vector<Vertex> f1, f2;
    for (Vertex v : c1)
        if (!set_contains(base, v)) f1.push_back(v);
    for (Vertex v : c2)
        if (!set_contains(base, v)) f2.push_back(v);
    if (f1.size() != f2.size()) return false;
    std::vector<int> perm(f2.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    auto image = [&](Vertex v) -> Vertex {
        if (set_contains(base, v)) return v;
        for (size_t i = 0; i < f1.size(); ++i)
            if (f1[i] == v) return f2[perm[i]];
        return -1;
    };
    do {
        bool ok = true;
        // distances
        for (size_t i = 0; i < c1.size() && ok; ++i)
            for (size_t j = i + 1; j < c1.size() && ok; ++j)
                ok = g.d(c1[i], c1[j]) == g.d(image(c1[i]), image(c1[j]));
        // roles
        for (size_t i = 0; i < t1.a.size() && ok; ++i) ok = image(t1.a[i]) == t2.a[i];
        auto set_image_equal = [&](const VertexSet& A, const VertexSet& B) {
            VertexSet img;
            for (Vertex v : A) img.push_back(image(v));
            std::sort(img.begin(), img.end());
            return img == B;
        };
        for (size_t i = 0; i < t1.S.size() && ok; ++i) ok = set_image_equal(t1.S[i], t2.S[i]);
        for (size_t i = 0; i < t1.Y.size() && ok; ++i)
            for (size_t j = 0; j < t1.Y[i].size() && ok; ++j)
                ok = set_image_equal(t1.Y[i][j], t2.Y[i][j]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

EnumResult enumerate_norm_tuples(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                                 int p, int k, const NormCaps& caps) {
    const DistanceGraph& g = rips.graph();
    EnumResult out;
    int m_cap = caps.m_max;
    int l_cap = caps.l_total_max;

    // chains S_0..S_m satisfying the step and distance conditions
    struct ChainRec {
        std::vector<VertexSet> S;
    };
    std::vector<std::vector<ChainRec>> chains_by_m(m_cap + 1);
    for (int i0 = 0; i0 < rips.dim(p); ++i0)
        chains_by_m[0].push_back({{rips.simplex(p, i0)}});
    for (int m = 1; m <= m_cap; ++m) {
        for (auto& rec : chains_by_m[m - 1]) {
            VertexSet cand = next_set_candidates(rips, par, x, k, rec.S.back());
            std::vector<VertexSet> subs;
            subsets_with_diameter(g, cand, par.N, subs);
            for (auto& Snext : subs) {
                if (g.dist_to_set(x, Snext) <= k + par.P) continue;
                ChainRec r2 = rec;
                r2.S.push_back(Snext);
                chains_by_m[m].push_back(std::move(r2));
            }
        }
    }

    for (int m = 0; m <= m_cap; ++m) {
        if (chains_by_m[m].empty()) continue;
        // l vectors with sum <= l_cap
        std::vector<std::vector<int>> lvecs;
        std::vector<int> cur(m + 1, 0);
        std::function<void(int, int)> gen = [&](int i, int left) {
            if (i == m + 1) {
                lvecs.push_back(cur);
                return;
            }
            for (int li = 0; li <= left; ++li) {
                cur[i] = li;
                gen(i + 1, left - li);
            }
        };
        gen(0, l_cap);
        for (auto& l : lvecs) {
            EnumCell cell;
            cell.k = k;
            cell.m = m;
            cell.l = l;
            std::vector<NormTuple> tuples;
            bool cell_overflow = false;
            for (auto& rec : chains_by_m[m]) {
                // per-slot choices for the Y tuples
                std::vector<std::vector<VertexSet>> choices(m + 1);
                bool feasible = true;
                long combo = 1;
                for (int i = 0; i <= m && feasible; ++i) {
                    if (l[i] == 0) continue;
                    VertexSet region = y_region(rips, par, x, k, rec.S, i, m);
                    if (region.empty()) { feasible = false; break; }
                    if (static_cast<int>(region.size()) > caps.region_cap) {
                        out.overflow = cell_overflow = true;
                        out.notes.push_back("region too large at k=" + std::to_string(k) +
                                            " m=" + std::to_string(m) + " i=" + std::to_string(i));
                        feasible = false;
                        break;
                    }
                    subsets_with_diameter(g, region, par.P, choices[i]);
                    if (choices[i].empty()) { feasible = false; break; }
                    for (int j = 0; j < l[i]; ++j) {
                        combo *= static_cast<long>(choices[i].size());
                        if (combo > caps.cell_budget) break;
                    }
                }
                if (!feasible) continue;
                if (combo > caps.cell_budget) {
                    out.overflow = cell_overflow = true;
                    out.notes.push_back("cell budget exceeded at k=" + std::to_string(k) +
                                        " m=" + std::to_string(m));
                    continue;
                }
                // ordered vertex tuples for S_0
                std::vector<Vertex> sv = rec.S[0];
                std::sort(sv.begin(), sv.end());
                std::vector<std::vector<Vertex>> orderings;
                do orderings.push_back(sv);
                while (std::next_permutation(sv.begin(), sv.end()));
                // product over the Y slots
                std::vector<std::vector<int>> pick(m + 1);
                for (int i = 0; i <= m; ++i) pick[i].assign(l[i], 0);
                bool done = false;
                while (!done) {
                    NormTuple base;
                    base.k = k;
                    base.S = rec.S;
                    base.Y.assign(m + 1, {});
                    for (int i = 0; i <= m; ++i)
                        for (int j = 0; j < l[i]; ++j) base.Y[i].push_back(choices[i][pick[i][j]]);
                    for (auto& ordering : orderings) {
                        NormTuple t = base;
                        t.a = ordering;
                        tuples.push_back(std::move(t));
                    }
                    // increment the multi-index
                    done = true;
                    for (int i = 0; i <= m && done; ++i)
                        for (int j = 0; j < l[i] && done; ++j) {
                            if (pick[i][j] + 1 < static_cast<int>(choices[i].size())) {
                                ++pick[i][j];
                                for (int i2 = 0; i2 < i; ++i2)
                                    for (int j2 = 0; j2 < l[i2]; ++j2) pick[i2][j2] = 0;
                                for (int j2 = 0; j2 < j; ++j2) pick[i][j2] = 0;
                                done = false;
                            }
                        }
                }
            }
            if (tuples.empty() && !cell_overflow) continue;
            cell.tuple_count = static_cast<long>(tuples.size());
            {
                int lsum = 0;
                for (int li : l) lsum += li;
                if (!tuples.empty() && (m == m_cap || lsum == l_cap)) out.frontier = true;
            }
            // group by cheap signature, then refine by the isometry test
            std::map<TupleSig, std::vector<size_t>> buckets;
            for (size_t i = 0; i < tuples.size(); ++i)
                buckets[tuple_signature(g, x, tuples[i])].push_back(i);
            for (auto& [sig, idxs] : buckets) {
                std::vector<std::vector<size_t>> groups;
                for (size_t i : idxs) {
                    bool placed = false;
                    for (auto& grp : groups)
                        if (tuples_equivalent(rips, par, x, tuples[grp[0]], tuples[i])) {
                            grp.push_back(i);
                            placed = true;
                            break;
                        }
                    if (!placed) groups.push_back({i});
                }
                for (auto& grp : groups) {
                    TupleClass tc;
                    for (size_t i : grp) tc.members.push_back(tuples[i]);
                    const NormTuple& t0 = tc.members[0];
                    tc.r0 = g.dist_to_set(x, t0.S[0]);
                    for (int i = 0; i <= m; ++i) tc.r.push_back(g.dist_to_set(x, t0.S[i]));
                    for (int i = 0; i < m; ++i)
                        tc.s.push_back(dist_set(g, t0.S[i], t0.S[i + 1]) + 2 * par.M);
                    tc.s.push_back(g.dist_to_set(x, t0.S[m]) - k);
                    cell.classes.push_back(std::move(tc));
                }
            }
            out.cells.push_back(std::move(cell));
        }
    }
    return out;
}

NormResult general_norm(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                        const Chain& f, const NormCaps& caps) {
    const DistanceGraph& g = rips.graph();
    NormResult res;
    int p = f.p;
    double s = to_double(par.s);
    double alpha = to_double(par.alpha);
    double B = to_double(par.B);
    double pf = 1;
    for (int i = 2; i <= p; ++i) pf *= i;

    double l2sq = 0;
    int R = 0;
    for (auto& [idx, q] : f.coef) {
        double c = to_double(q);
        l2sq += c * c;
        R = std::max(R, g.dmax_to_set(x, rips.simplex(p, idx)));
    }
    res.lower_bound = pf / (1.0 - std::exp(-2.0 * s)) * l2sq;
    if (f.zero()) return res;

    int k_hi = caps.k_max < 0 ? g.diameter() : caps.k_max;
    if (k_hi < R) {
        k_hi = R;
        res.notes.push_back("k cap raised to the support radius");
    }

    bool frontier = false;
    std::map<std::pair<int, int>, double> shell_mass;  // (m, total l) -> mass
    for (int k = 0; k <= k_hi; ++k) {
        EnumResult er = enumerate_norm_tuples(rips, par, x, p, k, caps);
        res.overflow = res.overflow || er.overflow;
        frontier = frontier || er.frontier;
        for (auto& note : er.notes) res.notes.push_back(note);
        for (auto& cell : er.cells) {
            int lsum = 0;
            for (int li : cell.l) lsum += li;
            double wB = std::pow(B, -static_cast<double>(cell.m + lsum));
            for (auto& Z : cell.classes) {
                double xi = 0;
                for (auto& t : Z.members) xi += to_double(coefficient_on_tuple(rips, f, t.a));
                if (xi == 0 && alpha >= 0) {
                    // class contributes nothing; still cheap to skip
                    continue;
                }
                double w = wB * std::exp(2.0 * s * (Z.r0 - k));
                for (size_t i = 0; i < cell.l.size(); ++i)
                    if (cell.l[i] > 0) w *= std::pow(static_cast<double>(Z.s[i]), -cell.l[i]);
                w *= std::pow(static_cast<double>(Z.members.size()), -alpha);
                double term = w * xi * xi;
                res.value += term;
                shell_mass[{cell.m, lsum}] += term;
            }
        }
    }
    // closed tail over k > k_hi: only the trivial sector survives there
    double tail = 0;
    for (auto& [idx, q] : f.coef) {
        double c = to_double(q);
        tail += std::exp(2.0 * s * g.dist_to_set(x, rips.simplex(p, idx))) * c * c;
    }
    res.tail_k = pf * tail * std::exp(-2.0 * s * (k_hi + 1)) / (1.0 - std::exp(-2.0 * s));

    // geometric over-estimate for the cells beyond the caps
    double last_shell = 0;
    double ratio = 0;
    std::map<int, double> by_depth;
    for (auto& [key, mass] : shell_mass) by_depth[key.first + key.second] += mass;
    double prev = -1;
    for (auto& [depth, mass] : by_depth) {
        if (prev > 0 && mass > 0) ratio = std::max(ratio, mass / prev);
        prev = mass;
        last_shell = mass;
    }
    if (ratio == 0) ratio = 1.0 / B;
    if (ratio < 1 && last_shell > 0 && (res.overflow || frontier))
        res.tail_ml = last_shell * ratio / (1 - ratio);
    if (res.overflow && ratio >= 1) res.notes.push_back("no convergent tail estimate (B too small)");
    return res;
}

EquivReport equivariance_ratio(const RipsComplex& rips, const ParameterSet& par, Vertex x,
                               Vertex x2, const Chain& f, const NormCaps& caps) {
    EquivReport rep;
    NormResult nx = general_norm(rips, par, x, f, caps);
    NormResult nx2 = general_norm(rips, par, x2, f, caps);
    rep.norm_x = std::sqrt(nx.total());
    rep.norm_x2 = std::sqrt(nx2.total());
    rep.log_ratio = std::log(rep.norm_x / rep.norm_x2);
    rep.excess = rep.log_ratio - 2.0 * to_double(par.s) * rips.graph().d(x, x2);
    return rep;
}

std::vector<std::string> tuple_consequence_violations(const RipsComplex& rips,
                                                      const ParameterSet& par, Vertex x,
                                                      const EnumResult& er) {
    const DistanceGraph& g = rips.graph();
    int delta = g.delta();
    int F = derived_F(delta, par.N, rips.p_max());
    std::vector<std::string> out;
    auto fail = [&](const std::string& s) {
        if (out.size() < 32) out.push_back(s);
    };
    for (auto& cell : er.cells)
        for (auto& Z : cell.classes)
            for (auto& t : Z.members) {
                int m = static_cast<int>(t.S.size()) - 1;
                for (int i = 0; i + 1 <= m; ++i)
                    if (g.dmax_to_set(x, t.S[i + 1]) > g.dmax_to_set(x, t.S[i]))
                        fail("set chain moved away from the origin");
                for (int i = 0; i <= m; ++i)
                    for (Vertex y : t.S[i]) {
                        bool in = false;
                        for (Vertex a : t.S[0])
                            if (g.in_eps_geod(y, x, a, F + 2 * delta)) { in = true; break; }
                        if (!in) fail("chain left the fattened geodesics");
                    }
                for (int i = 0; i <= m; ++i)
                    for (auto& Yij : t.Y[i])
                        if (g.dmax_to_set(x, Yij) > g.dmax_to_set(x, t.S[i]) + 2 * par.P + delta)
                            fail("witness set too far out");
                // corridor inclusions through the projection point
                for (Vertex b : t.S[0]) {
                    int best = g.vertex_count();
                    Vertex u = x;
                    for (int v = 0; v < g.vertex_count(); ++v)
                        if (g.d(x, v) <= t.k && g.d(v, b) < best) { best = g.d(v, b); u = v; }
                    for (int i = 0; i <= m; ++i) {
                        for (Vertex y : t.S[i])
                            if (!g.in_eps_geod(y, b, u, par.P))
                                fail("chain left the projection corridor");
                        for (auto& Yij : t.Y[i])
                            for (Vertex y : Yij)
                                if (!g.in_eps_geod(y, b, u, 4 * par.P))
                                    fail("witness left the projection corridor");
                    }
                    break;  // one witness point suffices
                }
            }
    return out;
}

}  // namespace hyperb
