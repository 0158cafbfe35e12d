#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperb/generators.hpp"
#include "hyperb/measures.hpp"
#include "hyperb/rips.hpp"

using namespace hyperb;

TEST_CASE("common ball intersections") {
    auto t = make_tree(2, 3);
    CHECK(u_set(t, {5}, 1) == t.ball(5, 1));
    // an edge on a tree: exactly the two endpoints
    VertexSet e{0, 1};
    CHECK(u_set(t, e, 1) == e);
    // diameter of the intersection is at most 2N
    auto fp = make_free_product_ball(2);
    RipsComplex rips(fp, 1);
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i)
            CHECK(fp.set_diameter(u_set(fp, rips.simplex(p, i), 1)) <= 2);
}

TEST_CASE("near-projection sets") {
    auto t = make_tree(2, 3);
    // on a tree the set collapses to the single closest point of the ball
    for (int a = 0; a < t.vertex_count(); ++a)
        for (int x = 0; x < t.vertex_count(); ++x) {
            VertexSet A = a_set(t, {a}, x, 1);
            CHECK(A.size() == 1);
            VertexSet us = u_set(t, {a}, 1);
            CHECK(t.d(x, A[0]) == t.dist_to_set(x, us));
        }
    // stated convention for the empty set
    CHECK(a_set(t, {}, 3, 1) == t.ball(3, 0));
    auto c4 = make_cycle(4);
    CHECK(a_set(c4, {}, 0, 13) == c4.ball(0, 2));

    // the diameter bound, exhaustively
    auto fp = make_free_product_ball(2);
    RipsComplex rips(fp, 1);
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i)
            for (int x = 0; x < fp.vertex_count(); ++x)
                CHECK(fp.set_diameter(a_set(fp, rips.simplex(p, i), x, 1)) <= 0);
}

namespace {
// second characterization through the near-projection set
VertexSet y_set_via_a(const DistanceGraph& g, const VertexSet& S, Vertex x, int r, int N) {
    int delta = g.delta();
    VertexSet A = a_set(g, S, x, N);
    VertexSet out;
    for (int z : A) {
        bool in = false;
        for (int y = 0; y < g.vertex_count() && !in; ++y)
            if (g.d(x, y) == r && g.in_eps_geod(y, x, z, delta) &&
                g.d(y, z) == g.dist_to_set(y, A))
                in = true;
        if (in) out.push_back(z);
    }
    return out;
}
}  // namespace

TEST_CASE("nested sets") {
    auto t = make_tree(2, 3);
    for (int a = 0; a < 8; ++a)
        for (int x = 0; x < t.vertex_count(); ++x) {
            VertexSet y0 = y_set(t, {a}, x, 0, 1);
            VertexSet us = u_set(t, {a}, 1);
            REQUIRE(y0.size() == 1);
            CHECK(t.d(x, y0[0]) == t.dist_to_set(x, us));
        }
    CHECK(y_set(t, {}, 4, 0, 1) == VertexSet{4});

    auto fp = make_free_product_ball(2);
    RipsComplex rips(fp, 1);
    int delta = fp.delta();
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i)
            for (int x = 0; x < fp.vertex_count(); ++x) {
                VertexSet S = rips.simplex(p, i);
                VertexSet prev;
                int dU = fp.dist_to_set(x, u_set(fp, S, 1));
                for (int r = 0; r <= dU + 2; ++r) {
                    VertexSet y = y_set(fp, S, x, r, 1);
                    CHECK(!y.empty());
                    if (r > 0) CHECK(subset_of(prev, y));
                    prev = y;
                    // both characterizations coincide below the collapse radius
                    if (r == 0 || r <= dU - 1) {
                        CHECK(subset_of(y, a_set(fp, S, x, 1)));
                        CHECK(y == y_set_via_a(fp, S, x, r, 1));
                    }
                }
                // transported inclusion under a basepoint move
                for (int x2 = 0; x2 < fp.vertex_count(); ++x2)
                    for (int r = 0; r <= dU - fp.d(x, x2) - delta; ++r)
                        CHECK(subset_of(y_set(fp, S, x, r, 1),
                                        y_set(fp, S, x2, r + 2 * fp.d(x, x2) + delta, 1)));
            }
}

TEST_CASE("averaged indicator measures") {
    auto t = make_tree(2, 3);
    // t = 0 picks the innermost set
    for (int a : {3, 9, 21}) {
        Measure m0 = psi_t(t, {a}, 0, Rat(0), 1);
        CHECK(m0 == uniform_on(y_set(t, {a}, 0, 0, 1)));
        Measure avg = psi_avg(t, {a}, 0, 1);
        CHECK(total_mass(avg) == 1);
        // a tree collapses the average to the projection point
        CHECK(avg.size() == 1);
        // exact average equals the integral of the step profile
        CHECK(avg == step_average(psi_step(t, {a}, 0, 1)));
    }
    auto fp = make_free_product_ball(2);
    RipsComplex rips(fp, 1);
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int i = 0; i < rips.dim(p); ++i)
            for (int x = 0; x < fp.vertex_count(); x += 3) {
                VertexSet S = rips.simplex(p, i);
                Measure avg = psi_avg(fp, S, x, 1);
                CHECK(total_mass(avg) == 1);
                CHECK(avg == step_average(psi_step(fp, S, x, 1)));
                VertexSet A = a_set(fp, S, x, 1);
                for (auto& [v, q] : avg) {
                    CHECK(q > 0);
                    CHECK(set_contains(A, v));
                }
            }
}

TEST_CASE("step profiles and disagreement") {
    StepFn<int> f{{Rat(0), Rat(1, 3), Rat(1)}, {1, 2}};
    StepFn<int> g{{Rat(0), Rat(1, 2), Rat(1)}, {1, 3}};
    CHECK(disagreement_measure(f, g) == Rat(2, 3));  // differ on [1/3,1)

    auto t = make_tree(2, 4);
    auto rep = psi_step_profile(t, {30}, 5, 5, 1);
    CHECK(rep.disagreement == 0);

    // the profile takes at most as many values as the near-projection set has points
    auto fp = make_free_product_ball(2);
    RipsComplex rips2(fp, 1);
    for (int p = 1; p <= rips2.p_max(); ++p)
        for (int i = 0; i < rips2.dim(p); i += 2)
            for (int x = 0; x < fp.vertex_count(); x += 4) {
                VertexSet S = rips2.simplex(p, i);
                auto prof = psi_step(fp, S, x, 1);
                CHECK(prof.pieces() <= a_set(fp, S, x, 1).size());
            }

    // deep simplex, adjacent basepoints: the profile is a genuine step function
    auto p = make_free_group_ball(1, 6);  // a path, distances up to 12
    auto rep2 = psi_step_profile(p, {0}, 12, 11, 1);
    CHECK(rep2.disagreement >= 0);
    CHECK(rep2.disagreement <= 1);
}

TEST_CASE("point-to-point measures") {
    auto t = make_tree(2, 4);
    int x = 0;
    for (int a : {17, 40}) {
        int d = t.d(x, a);
        CHECK(mu_t(t, x, a, 0, Rat(1, 2)) == Measure{{a, Rat(1)}});
        CHECK(mu_t(t, x, a, d, Rat(1, 2)) == Measure{{x, Rat(1)}});
        CHECK(mu_t(t, x, a, d + 3, Rat(1, 2)) == Measure{{x, Rat(1)}});
        for (int r = 1; r < d; ++r) {
            Measure m = mu_t(t, x, a, r, Rat(1, 3));
            CHECK(m.size() == 1);  // unique geodesic point on a tree
            CHECK(t.d(a, m.begin()->first) == r);
            CHECK(mu_avg(t, x, a, r) == m);
        }
    }

    auto fp = make_free_product_ball(2);
    int delta = fp.delta();
    for (int x2 = 0; x2 < fp.vertex_count(); x2 += 2)
        for (int a = 0; a < fp.vertex_count(); a += 3) {
            int d = fp.d(x2, a);
            for (int r = 1; r < d; ++r) {
                Measure m = mu_t(fp, x2, a, r, Rat(2, 5));
                CHECK(total_mass(m) == 1);
                for (auto& [y, q] : m) {
                    CHECK(fp.d(a, y) == r);
                    CHECK(fp.in_eps_geod(y, x2, a, delta));
                }
                CHECK(mu_avg(fp, x2, a, r) == step_average(mu_step(fp, x2, a, r)));
            }
        }
}

TEST_CASE("stepwise chains toward the basepoint") {
    auto fp = make_free_product_ball(2);
    int delta = fp.delta();
    for (int x = 0; x < fp.vertex_count(); x += 4)
        for (int a = 0; a < fp.vertex_count(); a += 3) {
            int d = fp.d(x, a);
            for (int r = 1; r < d; ++r) {
                VertexSet prev;
                for (int k = 0; k <= d - r; ++k) {
                    VertexSet A = a_chain_set(fp, x, a, r, k);
                    CHECK(!A.empty());
                    if (k > 0) CHECK(subset_of(A, prev));
                    prev = A;
                }
                // transported inclusion under a basepoint move
                for (int x2 = 0; x2 < fp.vertex_count(); x2 += 5) {
                    int dd = fp.d(x, x2);
                    for (int k = dd + delta; k <= d - r; ++k)
                        CHECK(subset_of(a_chain_set(fp, x, a, r, k),
                                        a_chain_set(fp, x2, a, r, k - dd - delta)));
                }
            }
        }
}

TEST_CASE("point-to-point profile") {
    auto t = make_tree(2, 4);
    auto rep = mu_step_profile(t, 7, 7, 40, 2);
    CHECK(rep.disagreement == 0);

    // on a tree the step sets agree whenever both basepoints project the same way
    auto p = make_free_group_ball(1, 8);
    auto rep2 = mu_step_profile(p, 16, 15, 0, 3);
    CHECK(rep2.disagreement >= 0);
}
