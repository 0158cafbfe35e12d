#include "hyperb/tree_norms.hpp"

#include <algorithm>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace hyperb {

Vertex RootedTree::ancestor(Vertex a, int steps) const {
    Vertex v = a;
    for (int i = 0; i < steps; ++i) v = parent[v];
    return v;
}

RootedTree make_rooted(const DistanceGraph& g, Vertex x) {
    if (!g.is_tree()) throw std::invalid_argument("rooted structure needs a tree");
    RootedTree t;
    t.g = &g;
    t.x = x;
    t.q = g.K() - 1;
    t.depth = 0;
    int n = g.vertex_count();
    t.parent.assign(n, -1);
    t.edge_of_child.assign(n, -1);
    for (int v = 0; v < n; ++v) {
        t.depth = std::max(t.depth, g.d(x, v));
        if (v == x) continue;
        for (int w : g.neighbors(v))
            if (g.d(x, w) == g.d(x, v) - 1) { t.parent[v] = w; break; }
        t.edge_of_child[v] = static_cast<int>(t.child_of_edge.size());
        t.child_of_edge.push_back(v);
    }
    return t;
}

SpMat jv_u(const RootedTree& t) { return ut_mat(t, 0); }

SpMat jv_v(const RootedTree& t) {
    SpMat m = SpMat::zero(t.edges(), t.vertices());
    for (int a = 0; a < t.vertices(); ++a) {
        if (a == t.x) continue;
        m.add(t.edge_of_child[a], a, -1);
    }
    return m;
}

SpMat ut_mat(const RootedTree& t, const Rat& tt) {
    SpMat m = SpMat::zero(t.vertices(), t.edges());
    for (int e = 0; e < t.edges(); ++e) {
        Vertex a = t.child_of_edge[e];
        m.add(a, e, -1);
        m.add(t.parent[a], e, tt);
    }
    return m;
}

SpMat vt_mat(const RootedTree& t, const Rat& tt) {
    SpMat m = SpMat::zero(t.edges(), t.vertices());
    for (int a = 0; a < t.vertices(); ++a) {
        if (a == t.x) continue;
        Rat w = -1;
        Vertex v = a;
        while (v != t.x) {
            m.add(t.edge_of_child[v], a, w);
            w *= tt;
            if (tt == 0) break;
            v = t.parent[v];
        }
    }
    return m;
}

SpMat vtj_mat(const RootedTree& t, const Rat& tt, int j) {
    SpMat m = SpMat::zero(t.edges(), t.vertices());
    Rat w = -1;
    for (int i = 0; i < j; ++i) w *= tt;
    if (j > 0 && tt == 0) return m;
    for (int a = 0; a < t.vertices(); ++a) {
        int n = t.g->d(t.x, a);
        if (j > n - 1) continue;
        Vertex aj = t.ancestor(a, j);
        m.add(t.edge_of_child[aj], a, w);
    }
    return m;
}

namespace {

// weighted l1 column norm with weight(row)/weight(col)
double l1_col_norm(const SpMat& m, const std::vector<double>& row_w,
                   const std::vector<double>& col_w) {
    double best = 0;
    for (int j = 0; j < m.cols; ++j) {
        double s = 0;
        for (auto& [i, q] : m.col[j]) s += std::abs(to_double(q)) * row_w[i];
        if (col_w[j] > 0) best = std::max(best, s / col_w[j]);
    }
    return best;
}

std::vector<double> vertex_weights(const RootedTree& t, double s) {
    std::vector<double> w(t.vertices());
    for (int v = 0; v < t.vertices(); ++v) w[v] = std::exp(s * t.g->d(t.x, v));
    return w;
}

std::vector<double> edge_weights(const RootedTree& t, double s) {
    std::vector<double> w(t.edges());
    for (int e = 0; e < t.edges(); ++e) w[e] = std::exp(s * t.g->d(t.x, t.child_of_edge[e]));
    return w;
}

}  // namespace

double l1_norm_ut(const RootedTree& t, double s, const Rat& tt) {
    return l1_col_norm(ut_mat(t, tt), vertex_weights(t, s), edge_weights(t, s));
}

double l1_norm_vt(const RootedTree& t, double s, const Rat& tt) {
    return l1_col_norm(vt_mat(t, tt), edge_weights(t, s), vertex_weights(t, s));
}

std::vector<double> l2_dual_partial_sums(int q, double s, double tt, int k, int depth_max) {
    std::vector<double> out;
    double sum = 0;
    for (int n = k; n <= depth_max; ++n) {
        sum += std::pow(tt, 2 * (n - k)) * std::exp(-2.0 * s * n) * std::pow(q, n - k);
        out.push_back(sum);
    }
    return out;
}

VertexSet sphere_part(const DistanceGraph& g, Vertex base, int n, int k, Vertex z) {
    VertexSet out;
    if (g.d(base, z) != k) return out;
    for (int a = 0; a < g.vertex_count(); ++a)
        if (g.d(base, a) == n && g.d(base, z) + g.d(z, a) == g.d(base, a)) out.push_back(a);
    return out;
}

TripleIndex vertex_triples(const DistanceGraph& g, Vertex base) {
    TripleIndex ti;
    int depth = 0;
    for (int v = 0; v < g.vertex_count(); ++v) depth = std::max(depth, g.d(base, v));
    for (int nn = 0; nn <= depth; ++nn)
        for (int k = 0; k <= nn; ++k)
            for (int z = 0; z < g.vertex_count(); ++z)
                if (g.d(base, z) == k) {
                    ti.pos[{nn, k, z}] = static_cast<int>(ti.items.size());
                    ti.items.push_back({nn, k, z});
                }
    return ti;
}

TripleIndex edge_triples(const DistanceGraph& g, Vertex base) {
    TripleIndex ti;
    int depth = 0;
    for (int v = 0; v < g.vertex_count(); ++v) depth = std::max(depth, g.d(base, v));
    for (int nn = 1; nn <= depth; ++nn)
        for (int k = 0; k <= nn; ++k)
            for (int z = 0; z < g.vertex_count(); ++z)
                if (g.d(base, z) == k) {
                    ti.pos[{nn, k, z}] = static_cast<int>(ti.items.size());
                    ti.items.push_back({nn, k, z});
                }
    return ti;
}

Eigen::MatrixXd gram_vertices(const DistanceGraph& g, Vertex base, double s) {
    int n = g.vertex_count();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    TripleIndex ti = vertex_triples(g, base);
    for (auto& [nn, k, z] : ti.items) {
        VertexSet I = sphere_part(g, base, nn, k, z);
        if (I.empty()) continue;
        double w = std::exp(2.0 * s * nn);
        for (int a : I)
            for (int b : I) G(a, b) += w;
    }
    return G;
}

Eigen::MatrixXd gram_edges(const RootedTree& t, double s) {
    const DistanceGraph& g = *t.g;
    Vertex base = t.x;
    int m = t.edges();
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(m, m);
    TripleIndex ti = edge_triples(g, base);
    for (auto& [nn, k, z] : ti.items) {
        std::vector<int> J;
        for (int e = 0; e < m; ++e) {
            Vertex a = t.child_of_edge[e];
            if (g.d(base, a) != nn) continue;
            if (g.d(base, z) + g.d(z, a) != g.d(base, a)) continue;
            J.push_back(e);
        }
        double w = std::exp(2.0 * s * nn);
        for (int e1 : J)
            for (int e2 : J) G(e1, e2) += w;
    }
    return G;
}

Eigen::MatrixXd gram_exp_kernel(const DistanceGraph& g, double rho) {
    int n = g.vertex_count();
    Eigen::MatrixXd G(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G(a, b) = std::pow(rho, g.d(a, b));
    return G;
}

namespace {

double gen_eig_max(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    // largest lambda with A v = lambda B v, A,B symmetric, B positive definite
    Eigen::LLT<Eigen::MatrixXd> llt(B);
    if (llt.info() != Eigen::Success) throw std::runtime_error("norm Gram not positive definite");
    int n = static_cast<int>(A.rows());
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double lam = 0;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd w = llt.solve(A * v);
        double nw = w.norm();
        if (nw == 0) return 0;
        w /= nw;
        double nl = w.dot(A * w) / w.dot(B * w);
        if (it > 30 && std::abs(nl - lam) <= 1e-12 * std::max(1.0, std::abs(nl))) {
            lam = nl;
            break;
        }
        lam = nl;
        v = w;
    }
    return lam;
}

}  // namespace

double weighted_op_norm(const SpMat& M, const Eigen::MatrixXd& G_dom,
                        const Eigen::MatrixXd& G_cod) {
    Eigen::MatrixXd Md = Eigen::MatrixXd::Zero(M.rows, M.cols);
    for (int j = 0; j < M.cols; ++j)
        for (auto& [i, q] : M.col[j]) Md(i, j) = to_double(q);
    Eigen::MatrixXd A = Md.transpose() * G_cod * Md;
    return std::sqrt(std::max(0.0, gen_eig_max(A, G_dom)));
}

double norm_ratio(const Eigen::MatrixXd& G1, const Eigen::MatrixXd& G2) {
    return std::sqrt(std::max(0.0, gen_eig_max(G1, G2)));
}

OpNormResult operator_norm(const RootedTree& t, bool is_vt, const Rat& tt, double s,
                           NormKind domain, NormKind codomain) {
    OpNormResult out;
    const DistanceGraph& g = *t.g;
    double td = to_double(tt);
    double q = td * std::exp(-s);
    if (domain == NormKind::L1Weighted && codomain == NormKind::L1Weighted) {
        out.value = is_vt ? l1_norm_vt(t, s, tt) : l1_norm_ut(t, s, tt);
        out.closed_form = is_vt ? 1.0 / (1.0 - q) : 1.0 + q;
        out.bracket = is_vt ? std::pow(q, t.depth) / (1.0 - q) : 0.0;
        return out;
    }
    if (is_vt && domain == NormKind::L2Weighted && codomain == NormKind::L2Weighted) {
        // bounded only when e^{-s} t sqrt(q_branch) < 1; report the growing
        // dual partial sums otherwise
        double crit = q * std::sqrt(static_cast<double>(t.q));
        out.partial_sums = l2_dual_partial_sums(t.q, s, td, 1, t.depth);
        out.unbounded_in_limit = crit >= 1.0;
    }
    auto gram_for = [&](NormKind kind, bool edges) -> Eigen::MatrixXd {
        switch (kind) {
            case NormKind::L1Weighted:
                throw std::invalid_argument("mixed l1 norms are not a Hilbert structure");
            case NormKind::L2Weighted: {
                int n = edges ? t.edges() : t.vertices();
                Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
                for (int i = 0; i < n; ++i) {
                    int far = edges ? t.child_of_edge[i] : i;
                    G(i, i) = std::exp(2.0 * s * g.d(t.x, far));
                }
                return G;
            }
            case NormKind::SpherePartition:
                return edges ? gram_edges(t, s) : gram_vertices(g, t.x, s);
            case NormKind::ExpKernel:
                if (edges) throw std::invalid_argument("kernel norm lives on the vertices");
                return gram_exp_kernel(g, std::exp(-s));
        }
        throw std::logic_error("unreachable");
    };
    SpMat M = is_vt ? vt_mat(t, tt) : ut_mat(t, tt);
    Eigen::MatrixXd Gd = gram_for(domain, is_vt ? false : true);
    Eigen::MatrixXd Gc = gram_for(codomain, is_vt ? true : false);
    out.value = weighted_op_norm(M, Gd, Gc);
    return out;
}

std::vector<std::array<int, 3>> decompose_sphere_part(const DistanceGraph& g, Vertex x, Vertex x2,
                                                      int n, int k, Vertex z) {
    std::vector<std::array<int, 3>> parts;
    int d = g.d(x, x2);
    auto on_geod = [&](Vertex v, Vertex a, Vertex b) {
        return g.d(a, v) + g.d(v, b) == g.d(a, b);
    };
    if (!on_geod(z, x, x2)) {
        parts.push_back({n + g.d(x2, z) - k, g.d(x2, z), z});
        return parts;
    }
    for (int p = 0; p < g.vertex_count(); ++p) {
        if (!on_geod(p, z, x2) || !on_geod(p, x, x2)) continue;
        for (Vertex z2 : g.neighbors(p)) {
            if (on_geod(z2, x, x2)) continue;
            int k2 = g.d(x2, z2);
            int n2 = n - d + 2 * (k2 - 1);
            if (n2 < k2) continue;
            if (!sphere_part(g, x2, n2, k2, z2).empty()) parts.push_back({n2, k2, z2});
        }
    }
    if (n <= d) {
        for (int z2 = 0; z2 < g.vertex_count(); ++z2)
            if (on_geod(z2, z, x2) && on_geod(z2, x, x2) && g.d(x, z2) == n) {
                int k2 = g.d(x2, z2);
                parts.push_back({k2, k2, z2});
                break;
            }
    }
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    return parts;
}

DecomposeCheck check_decomposition(const DistanceGraph& g, Vertex x, Vertex x2) {
    DecomposeCheck rep;
    int d = g.d(x, x2);
    int q = g.K() - 1;
    int depth = 0;
    for (int v = 0; v < g.vertex_count(); ++v) depth = std::max(depth, g.d(x, v));
    std::map<std::array<int, 3>, long> reuse;
    auto fail = [&](const std::string& why, int n, int k, Vertex z) {
        ++rep.violations;
        if (rep.first_failure.empty())
            rep.first_failure = why + " at (" + std::to_string(n) + "," + std::to_string(k) + "," +
                                std::to_string(z) + ")";
    };
    for (int n = 0; n <= depth; ++n)
        for (int k = 0; k <= n; ++k)
            for (int z = 0; z < g.vertex_count(); ++z) {
                if (g.d(x, z) != k) continue;
                VertexSet I = sphere_part(g, x, n, k, z);
                if (I.empty()) continue;
                ++rep.tuples;
                auto parts = decompose_sphere_part(g, x, x2, n, k, z);
                rep.max_parts = std::max(rep.max_parts, static_cast<long>(parts.size()));
                if (static_cast<long>(parts.size()) >
                    static_cast<long>(q - 1) * (d + 1) + 2)
                    fail("too many parts", n, k, z);
                VertexSet seen;
                for (auto& [n2, k2, z2] : parts) {
                    VertexSet P = sphere_part(g, x2, n2, k2, z2);
                    if (P.empty()) continue;
                    ++reuse[{n2, k2, z2}];
                    if (!set_intersect(seen, P).empty()) fail("parts overlap", n, k, z);
                    seen = set_union(seen, P);
                }
                if (seen != I) fail("union mismatch", n, k, z);
            }
    for (auto& [key, cnt] : reuse) {
        rep.max_reuse = std::max(rep.max_reuse, cnt);
        if (cnt > d + 2) fail("part reused too often", key[0], key[1], key[2]);
    }
    return rep;
}

ChangeOriginReport change_origin_bound(const DistanceGraph& g, Vertex x, Vertex x2, double s) {
    ChangeOriginReport rep;
    int d = g.d(x, x2);
    int q = g.K() - 1;
    rep.closed_form_bound = std::sqrt(static_cast<double>((q - 1) * (d + 1) + 2)) *
                            std::sqrt(static_cast<double>(d + 2)) * std::exp(s * d);

    TripleIndex tx = vertex_triples(g, x);
    TripleIndex tx2 = vertex_triples(g, x2);
    // sparse pattern of the triple-to-triple comparison matrix
    std::vector<std::vector<std::pair<int, double>>> rows(tx.items.size());
    for (size_t r = 0; r < tx.items.size(); ++r) {
        auto [n, k, z] = tx.items[r];
        if (sphere_part(g, x, n, k, z).empty()) continue;
        for (auto& part : decompose_sphere_part(g, x, x2, n, k, z)) {
            if (sphere_part(g, x2, part[0], part[1], part[2]).empty()) continue;
            auto it = tx2.pos.find(part);
            if (it == tx2.pos.end()) continue;
            rows[r].emplace_back(it->second, std::exp(s * (n - part[0])));
        }
    }
    // power iteration on A^T A
    size_t cols = tx2.items.size();
    std::vector<double> v(cols, 1.0 / std::sqrt(static_cast<double>(cols))), av(rows.size());
    double norm = 0;
    for (int it = 0; it < 500; ++it) {
        for (size_t r = 0; r < rows.size(); ++r) {
            double sdot = 0;
            for (auto& [c, w] : rows[r]) sdot += w * v[c];
            av[r] = sdot;
        }
        std::vector<double> atav(cols, 0.0);
        for (size_t r = 0; r < rows.size(); ++r)
            for (auto& [c, w] : rows[r]) atav[c] += w * av[r];
        double nn = 0;
        for (double t : atav) nn += t * t;
        nn = std::sqrt(nn);
        if (nn == 0) break;
        double lam = 0;
        for (size_t c = 0; c < cols; ++c) lam += v[c] * atav[c];
        for (size_t c = 0; c < cols; ++c) v[c] = atav[c] / nn;
        if (it > 30 && std::abs(std::sqrt(std::max(0.0, lam)) - norm) < 1e-12) break;
        norm = std::sqrt(std::max(0.0, lam));
    }
    rep.matrix_norm = norm;

    rep.basis_change_norm = norm_ratio(gram_vertices(g, x, s), gram_vertices(g, x2, s));
    return rep;
}

SchurReport schur_bound_check(int count, unsigned long seed) {
    SchurReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    for (int it = 0; it < count; ++it) {
        int n = 3 + static_cast<int>(rng() % 30);
        int m = 3 + static_cast<int>(rng() % 30);
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, m);
        int fill = 1 + static_cast<int>(rng() % (n * m / 2 + 1));
        for (int f = 0; f < fill; ++f)
            A(static_cast<int>(rng() % n), static_cast<int>(rng() % m)) = val(rng);
        double c1 = 0, c2 = 0, c3 = 0, rsum = 0, csum = 0;
        for (int i = 0; i < n; ++i) {
            double cnt = 0, sum = 0;
            for (int j = 0; j < m; ++j)
                if (A(i, j) != 0) { ++cnt; sum += std::abs(A(i, j)); }
            c1 = std::max(c1, cnt);
            rsum = std::max(rsum, sum);
        }
        for (int j = 0; j < m; ++j) {
            double cnt = 0, sum = 0;
            for (int i = 0; i < n; ++i)
                if (A(i, j) != 0) { ++cnt; sum += std::abs(A(i, j)); }
            c2 = std::max(c2, cnt);
            csum = std::max(csum, sum);
        }
        c3 = A.cwiseAbs().maxCoeff();
        double sn = A.jacobiSvd().singularValues()(0);
        double bound = std::min(std::sqrt(c1 * c2) * c3, std::sqrt(rsum * csum));
        ++rep.tested;
        if (sn > bound + 1e-9) ++rep.violations;
        if (bound > 0) rep.max_norm_over_bound = std::max(rep.max_norm_over_bound, sn / bound);
    }
    return rep;
}

std::pair<Rat, Rat> jv_norm_identity(const DistanceGraph& g, Vertex base, const Rat& rho, int n,
                                     const std::map<Vertex, Rat>& f) {
    auto pw = [&](const Rat& b, long e) {
        Rat out = 1;
        for (long i = 0; i < e; ++i) out *= b;
        return out;
    };
    Rat lhs = 0;
    for (auto& [a, fa] : f)
        for (auto& [b, fb] : f) lhs += pw(rho, g.d(a, b)) * fa * fb;
    Rat rhs = 0;
    Rat rho2n = pw(rho, 2L * n);
    for (int k = 1; k <= n; ++k) {
        Rat level = 0;
        for (int z = 0; z < g.vertex_count(); ++z) {
            if (g.d(base, z) != k) continue;
            Rat s = 0;
            for (auto& [a, fa] : f)
                if (g.d(base, a) == n && g.d(base, z) + g.d(z, a) == n) s += fa;
            level += s * s;
        }
        rhs += level / pw(rho, 2L * k);
    }
    rhs *= (1 - rho * rho) * rho2n;
    Rat tot = 0;
    for (auto& [a, fa] : f) tot += fa;
    rhs += rho2n * tot * tot;
    return {lhs, rhs};
}

}  // namespace hyperb
