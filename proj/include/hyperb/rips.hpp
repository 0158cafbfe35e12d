#pragma once

#include <map>
#include <vector>

#include "hyperb/graph.hpp"
#include "hyperb/rational.hpp"

namespace hyperb {

// Vertices in strictly increasing order; that order is the positive orientation.
using Simplex = std::vector<Vertex>;

// All subsets of diameter <= N, graded by cardinality p = 1..p_max.
// Degree 0 is the single empty simplex.
class RipsComplex {
public:
    RipsComplex(const DistanceGraph& g, int N, int p_cap = 6);

    const DistanceGraph& graph() const { return *g_; }
    int N() const { return N_; }
    int p_max() const { return p_max_; }
    int dim(int p) const;  // number of simplices in degree p (dim(0) == 1)
    const Simplex& simplex(int p, int idx) const { return simplices_[p][idx]; }
    const std::vector<Simplex>& degree(int p) const { return simplices_[p]; }
    int index_of(int p, const Simplex& s) const;      // -1 if absent
    bool is_simplex(const Simplex& s) const;

private:
    const DistanceGraph* g_;
    int N_;
    int p_max_;
    std::vector<std::vector<Simplex>> simplices_;      // [p]
    std::vector<std::map<Simplex, int>> index_;        // [p]
};

// Finitely supported rational chain in one degree; keys are simplex indices.
struct Chain {
    int p = 0;
    std::map<int, Rat> coef;

    bool zero() const { return coef.empty(); }
    void add(int idx, const Rat& q);
    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain& operator*=(const Rat& q);
    bool operator==(const Chain& o) const { return p == o.p && coef == o.coef; }
};

Chain chain_basis(int p, int idx);
Chain boundary(const RipsComplex& rips, const Chain& f);
VertexSet supp(const RipsComplex& rips, const Chain& f);
Rat l1_norm(const Chain& f);

// Coefficient of f on the ordered tuple (a_1..a_p): signed relative to the
// increasing-order basis vector.
Rat coefficient_on_tuple(const RipsComplex& rips, const Chain& f, const std::vector<Vertex>& tuple);

// e_v ^ e_S, signed into the increasing-order basis. Throws if the result
// leaves the complex.
Chain wedge_vertex(const RipsComplex& rips, Vertex v, int p, int idx);

// truncated average distance from S to x; zeta(empty) = 0
Rat zeta(const DistanceGraph& g, Vertex x, const VertexSet& S, int N, int p_max);

struct ExactnessReport {
    std::vector<int> dims;    // [p] p=0..p_max
    std::vector<int> ranks;   // rank of boundary_p : degree p -> p-1, p=1..p_max
    std::vector<bool> exact_at;  // degree p = 0..p_max
    bool exact = true;
};

ExactnessReport complex_exactness(const RipsComplex& rips);

// rank over the rationals of a sparse matrix given as columns
int sparse_rank(int rows, std::vector<std::map<int, Rat>> cols);

}  // namespace hyperb
