#pragma once

#include <array>

#include <Eigen/Dense>

#include "hyperb/operators.hpp"

namespace hyperb {

// A tree with a chosen origin; edges indexed by their far endpoint.
struct RootedTree {
    const DistanceGraph* g = nullptr;
    Vertex x = 0;
    int q = 1;      // every vertex has at most q+1 neighbors
    int depth = 0;  // max distance from the origin
    std::vector<int> parent;         // toward the origin; parent[x] == -1
    std::vector<int> edge_of_child;  // child -> edge index (x -> -1)
    std::vector<Vertex> child_of_edge;

    int vertices() const { return g->vertex_count(); }
    int edges() const { return static_cast<int>(child_of_edge.size()); }
    Vertex ancestor(Vertex a, int steps) const;
};

RootedTree make_rooted(const DistanceGraph& g, Vertex x);

// columns over the edge/vertex bases with exact entries
SpMat jv_u(const RootedTree& t);                    // edges -> vertices
SpMat jv_v(const RootedTree& t);                    // vertices -> edges
SpMat ut_mat(const RootedTree& t, const Rat& tt);   // edges -> vertices
SpMat vt_mat(const RootedTree& t, const Rat& tt);   // vertices -> edges
SpMat vtj_mat(const RootedTree& t, const Rat& tt, int j);

// weighted l1 operator norms, weight e^{s*d(x, far endpoint)}
double l1_norm_ut(const RootedTree& t, double s, const Rat& tt);
double l1_norm_vt(const RootedTree& t, double s, const Rat& tt);

// evidence series for the unweighted-l2 failure: partial sums of
// sum_{n>=k} t^{2(n-k)} e^{-2sn} q^{n-k} per depth
std::vector<double> l2_dual_partial_sums(int q, double s, double tt, int k, int depth_max);

// I_z^{n,k,base} and the edge analogue
VertexSet sphere_part(const DistanceGraph& g, Vertex base, int n, int k, Vertex z);

struct TripleIndex {
    std::vector<std::array<int, 3>> items;  // (n, k, z)
    std::map<std::array<int, 3>, int> pos;
};

TripleIndex vertex_triples(const DistanceGraph& g, Vertex base);
TripleIndex edge_triples(const DistanceGraph& g, Vertex base);

Eigen::MatrixXd gram_vertices(const DistanceGraph& g, Vertex base, double s);
// edge-basis Gram for the origin of the rooted structure
Eigen::MatrixXd gram_edges(const RootedTree& t, double s);

// operator norm between the weighted Hilbert structures: sup |Mv|_G2 / |v|_G1
double weighted_op_norm(const SpMat& M, const Eigen::MatrixXd& G_dom,
                        const Eigen::MatrixXd& G_cod);

// ratio norm sup |v|_G1 / |v|_G2
double norm_ratio(const Eigen::MatrixXd& G1, const Eigen::MatrixXd& G2);

// exponential-kernel Gram on the vertices: G(a,b) = rho^{d(a,b)} with rho = e^{-lambda}
Eigen::MatrixXd gram_exp_kernel(const DistanceGraph& g, double rho);

enum class NormKind { L1Weighted, L2Weighted, SpherePartition, ExpKernel };

struct OpNormResult {
    double value = 0;
    double closed_form = 0;       // when one exists (weighted-l1 cases), else 0
    double bracket = 0;           // geometric truncation allowance
    bool unbounded_in_limit = false;
    std::vector<double> partial_sums;  // divergence evidence for the plain-l2 case
};

// operator norm of u_t (edges->vertices) or v_t (vertices->edges) between the
// named structures on a finite rooted tree
OpNormResult operator_norm(const RootedTree& t, bool is_vt, const Rat& tt, double s,
                           NormKind domain, NormKind codomain);

// decomposition of I_z^{n,k,x} into parts I_{z'}^{n',k',x'}; only nonempty
// parts are returned
std::vector<std::array<int, 3>> decompose_sphere_part(const DistanceGraph& g, Vertex x, Vertex x2,
                                                      int n, int k, Vertex z);

struct DecomposeCheck {
    long tuples = 0;
    long violations = 0;
    long max_parts = 0;
    long max_reuse = 0;
    std::string first_failure;
};

// disjointness, union, the part-count bound and the reuse bound, over all
// (n,k,z) for one pair of basepoints
DecomposeCheck check_decomposition(const DistanceGraph& g, Vertex x, Vertex x2);

// matrix with entries e^{s(n-n')} on the decomposition pattern; returns its
// operator norm (power iteration) and the basis-change norm between the two
// weighted Hilbert structures
struct ChangeOriginReport {
    double matrix_norm = 0;
    double basis_change_norm = 0;
    double closed_form_bound = 0;
};

ChangeOriginReport change_origin_bound(const DistanceGraph& g, Vertex x, Vertex x2, double s);

struct SchurReport {
    long tested = 0;
    long violations = 0;
    double max_norm_over_bound = 0;
};

SchurReport schur_bound_check(int count, unsigned long seed);

// both sides of the sphere-supported norm identity, as exact rationals in rho
std::pair<Rat, Rat> jv_norm_identity(const DistanceGraph& g, Vertex base, const Rat& rho, int n,
                                     const std::map<Vertex, Rat>& f);

}  // namespace hyperb
