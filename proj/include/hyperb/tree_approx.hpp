#pragma once

#include "hyperb/graph.hpp"
#include "hyperb/rational.hpp"

namespace hyperb {

// Radial-exact tree metric on a finite subset, built from basepointed Gromov
// products smoothed along chains (max over chains of the min product).
struct TreeApprox {
    VertexSet points;                   // the input subset Y, basepoint first
    Vertex basepoint;
    int l = 0;                          // #Y <= 2^l + 2
    std::vector<std::vector<Rat>> tree_dist;  // on the points, in input order
    std::vector<int> psi;               // point -> representative index (merged when dist 0)

    Rat dist(int i, int j) const { return tree_dist[i][j]; }
};

TreeApprox approximate_by_tree(const DistanceGraph& g, const VertexSet& Y, Vertex w);

struct TreeApproxCheck {
    long instances = 0;
    long violations = 0;
    std::string first_failure;
};

// transported eps-geodesic relations and the corridor-distance comparison
TreeApproxCheck tree_approx_corollaries(const DistanceGraph& g, const VertexSet& Y, Vertex w,
                                        const TreeApprox& ta);

}  // namespace hyperb
