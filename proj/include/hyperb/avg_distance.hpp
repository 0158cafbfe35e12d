#pragma once

#include "hyperb/measures.hpp"
#include "hyperb/rips.hpp"

namespace hyperb {

// Y^r_{x,y}: the 3*delta fattened geodesic band at distance r..r+3*delta from x.
VertexSet geodesic_band(const DistanceGraph& g, Vertex x, Vertex y, int r);

// A pair of bands Y^r_{x,y} and Y^s_{y,x}; integer families over their union.
struct BandPair {
    Vertex x, y;
    int r, s;
    std::vector<Vertex> pts;  // sorted union
    std::vector<char> in_r, in_s;
    bool shared = false;      // some point lies in both bands
};

BandPair make_band_pair(const DistanceGraph& g, Vertex x, Vertex y, int r, int s);

// "distances to a virtual point", modulo the global shift when the bands are
// disjoint (a shared point pins the shift).
struct VirtualClass {
    std::vector<long> c;  // aligned with BandPair::pts
    bool operator<(const VirtualClass& o) const { return c < o.c; }
    bool operator==(const VirtualClass& o) const { return c == o.c; }
};

bool class_invariants_ok(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c);
VirtualClass normalize_class(const BandPair& bp, const VirtualClass& c);

// c'_{z'} = min over the old band of d(z',z)+c_z, per side
VirtualClass alpha_map(const DistanceGraph& g, const BandPair& from, const BandPair& to,
                       const VirtualClass& c);

bool has_equality_pair(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c);

long beta_value(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c);

// members of Lambda_{x,r2,r3}^{y,s2,s3}: classes over the (r3,s3) bands whose
// image at (r2,s2) admits an equality pair. Enumerated inside a value window
// that is widened until the member set stabilizes.
struct LambdaMembers {
    BandPair bp3;
    std::vector<VirtualClass> members;
    long window_used = 0;
};

LambdaMembers lambda_members(const DistanceGraph& g, Vertex x, Vertex y, int r2, int s2, int r3,
                             int s3);

// image of the members at level (r1,s1), deduplicated
std::vector<VirtualClass> lambda_tilde(const DistanceGraph& g, Vertex x, Vertex y, int r1, int r2,
                                       int r3, int s1, int s2, int s3);

// windowless oracle: every family with entries in [0,hi] on both sides
std::vector<VirtualClass> lambda_tilde_oracle(const DistanceGraph& g, Vertex x, Vertex y, int r1,
                                              int r2, int r3, int s1, int s2, int s3, long hi);

int band_index_cap(const DistanceGraph& g, Vertex x, Vertex y);  // E(d/2) - 3*delta
int db_window(const DistanceGraph& g, Vertex x, Vertex y);       // Delta_{x,y}

Rat d_b(const DistanceGraph& g, Vertex x, Vertex y);
Rat d_b_sampled(const DistanceGraph& g, Vertex x, Vertex y, const Rat& u1, const Rat& u2,
                const Rat& u3, const Rat& v1, const Rat& v2, const Rat& v3);

struct QuadDefectReport {
    Rat fraction;        // measure of the sextuples with nonzero defect
    Rat trend_product;   // fraction * (1 + d(x,y))
    long cells = 0;
};

QuadDefectReport quadrilateral_defect(const DistanceGraph& g, Vertex x, Vertex x2, Vertex y,
                                      Vertex y2);

Measure mu_pair(const DistanceGraph& g, Vertex x, Vertex y);
Rat d_prime(const DistanceGraph& g, Vertex x, Vertex y);
Rat d_second(const DistanceGraph& g, Vertex x, Vertex y);

Rat rho_b(const DistanceGraph& g, Vertex x, const VertexSet& S);

// diagonal weights rho^b_x(S) for every simplex of the complex
std::vector<std::vector<Rat>> theta_b_weights(const RipsComplex& rips, Vertex x);

}  // namespace hyperb
