#include "hyperb/tree_approx.hpp"

#include <algorithm>

namespace hyperb {

TreeApprox approximate_by_tree(const DistanceGraph& g, const VertexSet& Y, Vertex w) {
    if (Y.size() < 2) throw std::invalid_argument("need at least two points");
    if (!set_contains(Y, w)) throw std::invalid_argument("basepoint must belong to the subset");

    TreeApprox ta;
    ta.basepoint = w;
    ta.points.push_back(w);
    for (Vertex v : Y)
        if (v != w) ta.points.push_back(v);
    size_t n = ta.points.size();
    ta.l = 0;
    while ((1u << ta.l) + 2 < n) ++ta.l;

    // Gromov products at w, then the max over chains of the min product.
    std::vector<std::vector<Rat>> gp(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            gp[i][j] = Rat(g.d(w, ta.points[i]) + g.d(w, ta.points[j]) -
                           g.d(ta.points[i], ta.points[j]), 2);
    std::vector<std::vector<Rat>> sm = gp;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Rat via = std::min(sm[i][k], sm[k][j]);
                if (via > sm[i][j]) sm[i][j] = via;
            }

    ta.tree_dist.assign(n, std::vector<Rat>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (i != j)
                ta.tree_dist[i][j] =
                    Rat(g.d(w, ta.points[i])) + Rat(g.d(w, ta.points[j])) - 2 * sm[i][j];

    ta.psi.resize(n);
    for (size_t i = 0; i < n; ++i) {
        ta.psi[i] = static_cast<int>(i);
        for (size_t j = 0; j < i; ++j)
            if (ta.tree_dist[i][j] == 0) { ta.psi[i] = ta.psi[j]; break; }
    }
    return ta;
}

namespace {

// corridor distance in the tree metric: from products, since the image is 0-hyperbolic
Rat tree_dist_to_segment(const TreeApprox& ta, int t, int y, int z) {
    return (ta.dist(t, y) + ta.dist(t, z) - ta.dist(y, z)) / 2;
}

int graph_dist_to_segment(const DistanceGraph& g, Vertex t, Vertex y, Vertex z) {
    int best = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.d(y, v) + g.d(v, z) != g.d(y, z)) continue;
        int dd = g.d(t, v);
        if (best < 0 || dd < best) best = dd;
    }
    return best;
}

}  // namespace

TreeApproxCheck tree_approx_corollaries(const DistanceGraph& g, const VertexSet& Y, Vertex w,
                                        const TreeApprox& ta) {
    TreeApproxCheck rep;
    int delta = g.delta();
    long l = ta.l;
    size_t n = ta.points.size();
    auto fail = [&](const std::string& msg) {
        ++rep.violations;
        if (rep.first_failure.empty()) rep.first_failure = msg;
    };
    (void)Y;
    for (size_t yi = 0; yi < n; ++yi)
        for (size_t zi = 0; zi < n; ++zi)
            for (size_t ti = 0; ti < n; ++ti) {
                ++rep.instances;
                Vertex y = ta.points[yi], z = ta.points[zi], t = ta.points[ti];
                long alpha = g.d(y, t) + g.d(t, z) - g.d(y, z);  // tightest hypothesis
                // image excess bounded by alpha + l*delta, exactly alpha from the basepoint
                Rat img_excess = ta.dist(yi, ti) + ta.dist(ti, zi) - ta.dist(yi, zi);
                if (img_excess > Rat(alpha + l * delta)) fail("image excess too large");
                if (yi == 0 && img_excess > Rat(alpha)) fail("radial image excess too large");
                // preimage direction with the doubled loss
                if (Rat(alpha) > img_excess + Rat(2 * l * delta)) fail("preimage excess too large");
                if (ti == 0 && Rat(alpha) > img_excess) fail("radial preimage excess too large");
                // corridor distances agree within (l+1)*delta + 1
                Rat dt = tree_dist_to_segment(ta, static_cast<int>(ti), static_cast<int>(yi),
                                              static_cast<int>(zi));
                Rat dg = graph_dist_to_segment(g, t, y, z);
                Rat gap = dt - dg;
                if (gap < 0) gap = -gap;
                if (gap > Rat((l + 1) * delta + 1)) fail("corridor distances drift apart");
            }
    return rep;
}

}  // namespace hyperb
