#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperb/generators.hpp"
#include "hyperb/graph.hpp"

using namespace hyperb;

TEST_CASE("breadth-first distances") {
    auto path = DistanceGraph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(path.d(0, 2) == 2);
    CHECK(path.d(0, 0) == 0);

    auto single = DistanceGraph::from_edges(1, {});
    CHECK(single.d(0, 0) == 0);

    auto c4 = make_cycle(4);
    CHECK(c4.d(0, 2) == 2);
    CHECK(c4.d(0, 1) == 1);

    CHECK_THROWS_WITH_AS(DistanceGraph::from_edges(3, {{0, 1}}),
                         doctest::Contains("disconnected"), std::runtime_error);
}

TEST_CASE("metric axioms hold on generated graphs") {
    for (auto g : {make_tree(2, 3), make_cycle(6), make_free_product_ball(2)}) {
        int n = g.vertex_count();
        for (int a = 0; a < n; ++a) {
            CHECK(g.d(a, a) == 0);
            for (int b = 0; b < n; ++b) {
                CHECK(g.d(a, b) == g.d(b, a));
                for (int c = 0; c < n; ++c) CHECK(g.d(a, c) <= g.d(a, b) + g.d(b, c));
            }
        }
        // geodesic: every intermediate value is realized
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int k = 0; k <= g.d(a, b); ++k) {
                    bool found = false;
                    for (int c = 0; c < n && !found; ++c)
                        found = g.d(a, c) == k && g.d(c, b) == g.d(a, b) - k;
                    CHECK(found);
                }
    }
}

namespace {
// independent quantifier scan: does H_delta hold for every ordered quadruple?
bool four_point_holds(const DistanceGraph& g, int delta) {
    int n = g.vertex_count();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int t = 0; t < n; ++t)
                    if (g.d(x, z) + g.d(y, t) >
                        std::max(g.d(x, y) + g.d(z, t), g.d(x, t) + g.d(y, z)) + delta)
                        return false;
    return true;
}
}  // namespace

TEST_CASE("hyperbolicity constant") {
    CHECK(hyperbolicity_delta_scan(make_tree(2, 3)) == 0);
    CHECK(hyperbolicity_delta_scan(make_tree(3, 3)) == 0);
    CHECK(hyperbolicity_delta_scan(make_cycle(4)) == 2);

    auto c6 = make_cycle(6);
    int d6 = c6.delta();
    CHECK(four_point_holds(c6, d6));
    CHECK(!four_point_holds(c6, d6 - 1));

    auto fp = make_free_product_ball(2);
    CHECK(four_point_holds(fp, 0));
}

TEST_CASE("eps-geodesic sets") {
    auto t = make_tree(2, 3);
    int x = 1, y = 2;  // distinct children of the root
    auto seg = t.eps_geod(x, y, 0);
    CHECK(seg == VertexSet{0, 1, 2});  // through the root
    CHECK(t.eps_geod(x, y, 2 * t.diameter()).size() == static_cast<size_t>(t.vertex_count()));

    auto c4 = make_cycle(4);
    CHECK(c4.eps_geod(0, 2, 0).size() == 4);  // both arcs are geodesics

    // monotone in eps
    for (int e = 0; e < 4; ++e)
        CHECK(subset_of(c4.eps_geod(0, 2, e), c4.eps_geod(0, 2, e + 1)));
}

TEST_CASE("re-metrization") {
    auto t = make_tree(2, 2);
    auto r0 = regraph(t, 0);
    for (int a = 0; a < t.vertex_count(); ++a)
        for (int b = 0; b < t.vertex_count(); ++b) CHECK(r0.d(a, b) == t.d(a, b));

    auto c6 = make_cycle(6);
    auto r1 = regraph(c6, 1);
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            CHECK(c6.d(a, b) <= 2 * r1.d(a, b));
            CHECK(r1.d(a, b) <= c6.d(a, b) + 1);
        }
    CHECK(r1.adjacent(0, 2));

    auto two = DistanceGraph::from_edges(2, {{0, 1}});
    auto r2 = regraph(two, 3);
    CHECK(r2.d(0, 1) == 1);

    // the full re-metrization of the 6-cycle by its own constant is complete
    auto k6 = regraph(c6, c6.delta());
    CHECK(k6.diameter() == 1);
    CHECK(hyperbolicity_delta_scan(k6) == 0);
}

TEST_CASE("generators") {
    CHECK(make_tree(2, 3).vertex_count() == 22);  // 1+3+6+12
    CHECK(make_tree(2, 4).vertex_count() == 46);
    CHECK(make_cycle(4).delta() == 2);

    auto fg = make_free_group_ball(2, 3);
    CHECK(fg.is_tree());
    CHECK(fg.vertex_count() == 1 + 4 + 12 + 36);

    auto fp = make_free_product_ball(2);
    // triangles from the order-3 generator
    bool has_triangle = false;
    for (int a = 0; a < fp.vertex_count() && !has_triangle; ++a)
        for (int b : fp.neighbors(a))
            for (int c : fp.neighbors(b))
                if (c != a && fp.adjacent(a, c)) has_triangle = true;
    CHECK(has_triangle);

    // a path is the rank-one ball
    auto p = make_free_group_ball(1, 5);
    CHECK(p.vertex_count() == 11);
    CHECK(p.diameter() == 10);
}
