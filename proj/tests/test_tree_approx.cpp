#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperb/generators.hpp"
#include "hyperb/tree_approx.hpp"

using namespace hyperb;

namespace {
bool four_point_zero(const TreeApprox& ta) {
    size_t n = ta.points.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t d = 0; d < n; ++d)
                    if (ta.dist(a, c) + ta.dist(b, d) >
                        std::max(ta.dist(a, b) + ta.dist(c, d), ta.dist(a, d) + ta.dist(b, c)))
                        return false;
    return true;
}

void check_bounds(const DistanceGraph& g, const TreeApprox& ta) {
    long l = ta.l;
    long delta = g.delta();
    for (size_t i = 0; i < ta.points.size(); ++i) {
        CHECK(ta.dist(0, i) == g.d(ta.basepoint, ta.points[i]));  // radial distances exact
        for (size_t j = 0; j < ta.points.size(); ++j) {
            CHECK(ta.dist(i, j) <= g.d(ta.points[i], ta.points[j]));
            CHECK(ta.dist(i, j) >= Rat(g.d(ta.points[i], ta.points[j]) - l * delta));
        }
    }
    CHECK(four_point_zero(ta));
}
}  // namespace

TEST_CASE("subsets of a tree map exactly") {
    auto t = make_tree(2, 4);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 20; ++it) {
        VertexSet Y;
        for (int j = 0; j < 6; ++j) Y.push_back(static_cast<int>(rng() % t.vertex_count()));
        std::sort(Y.begin(), Y.end());
        Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
        if (Y.size() < 2) continue;
        auto ta = approximate_by_tree(t, Y, Y[0]);
        for (size_t i = 0; i < ta.points.size(); ++i)
            for (size_t j = 0; j < ta.points.size(); ++j)
                CHECK(ta.dist(i, j) == t.d(ta.points[i], ta.points[j]));
        check_bounds(t, ta);
    }
}

TEST_CASE("two points give a segment") {
    auto t = make_tree(2, 3);
    auto ta = approximate_by_tree(t, {0, 17}, 0);
    CHECK(ta.l == 0);
    CHECK(ta.dist(0, 1) == t.d(0, 17));
}

TEST_CASE("four-cycle distortion") {
    auto c4 = make_cycle(4);
    REQUIRE(c4.delta() == 2);
    for (int w = 0; w < 4; ++w) {
        auto ta = approximate_by_tree(c4, {0, 1, 2, 3}, w);
        CHECK(ta.l == 1);
        check_bounds(c4, ta);
        // the bound is attained: opposite vertices merge
        bool merged = false;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j)
                if (ta.dist(i, j) == 0) merged = true;
        CHECK(merged);
    }
    CHECK_THROWS_AS(approximate_by_tree(c4, {0, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(approximate_by_tree(c4, {0}, 0), std::invalid_argument);
}

TEST_CASE("random subsets of the clique-tree ball") {
    auto fp = make_free_product_ball(3);
    std::mt19937_64 rng(41);
    for (int it = 0; it < 50; ++it) {
        VertexSet Y;
        for (int j = 0; j < 10; ++j) Y.push_back(static_cast<int>(rng() % fp.vertex_count()));
        std::sort(Y.begin(), Y.end());
        Y.erase(std::unique(Y.begin(), Y.end()), Y.end());
        if (Y.size() < 2) continue;
        auto ta = approximate_by_tree(fp, Y, Y[rng() % Y.size()]);
        check_bounds(fp, ta);
        auto rep = tree_approx_corollaries(fp, Y, ta.basepoint, ta);
        CHECK(rep.violations == 0);
    }
}

TEST_CASE("transported relations on wider graphs") {
    auto c6 = make_cycle(6);
    for (int w = 0; w < 6; ++w) {
        VertexSet Y{0, 1, 2, 3, 4, 5};
        auto ta = approximate_by_tree(c6, Y, w);
        check_bounds(c6, ta);
        auto rep = tree_approx_corollaries(c6, Y, w, ta);
        CHECK(rep.violations == 0);
    }
}
