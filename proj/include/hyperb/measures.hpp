#pragma once

#include <functional>
#include <map>
#include <vector>

#include "hyperb/graph.hpp"
#include "hyperb/rational.hpp"

namespace hyperb {

// Finitely supported probability measure with exact rational weights.
using Measure = std::map<Vertex, Rat>;

Measure uniform_on(const VertexSet& A);
Rat total_mass(const Measure& m);
Rat l1_distance(const Measure& a, const Measure& b);

// Right-continuous step function on [0,1): vals[i] on [breaks[i], breaks[i+1]),
// with breaks.front() == 0 and breaks.back() == 1.
template <class T>
struct StepFn {
    std::vector<Rat> breaks;
    std::vector<T> vals;

    static StepFn constant(T v) { return {{Rat(0), Rat(1)}, {std::move(v)}}; }
    size_t pieces() const { return vals.size(); }
};

// Lebesgue measure of the set where the two step functions differ.
template <class T>
Rat disagreement_measure(const StepFn<T>& f, const StepFn<T>& g) {
    Rat out = 0;
    size_t i = 0, j = 0;
    Rat lo = 0;
    while (lo < 1) {
        while (f.breaks[i + 1] <= lo) ++i;
        while (g.breaks[j + 1] <= lo) ++j;
        Rat hi = std::min(f.breaks[i + 1], g.breaks[j + 1]);
        if (!(f.vals[i] == g.vals[j])) out += hi - lo;
        lo = hi;
    }
    return out;
}

Measure step_average(const StepFn<Measure>& f);

// U_S: common intersection of the N-balls around the points of S.
VertexSet u_set(const DistanceGraph& g, const VertexSet& S, int N);

// A_{S,x} with the conventions for S empty / S == {x}.
VertexSet a_set(const DistanceGraph& g, const VertexSet& S, Vertex x, int N);

// Y_{S,x,r}; for S empty uses the S == {x} convention.
VertexSet y_set(const DistanceGraph& g, const VertexSet& S, Vertex x, int r, int N);

// psi_{S,x,t} at an exact rational time, the full step profile in t, and the
// exact average over t.
Measure psi_t(const DistanceGraph& g, const VertexSet& S, Vertex x, const Rat& t, int N);
StepFn<Measure> psi_step(const DistanceGraph& g, const VertexSet& S, Vertex x, int N);
Measure psi_avg(const DistanceGraph& g, const VertexSet& S, Vertex x, int N);

// A_{x,a,r,k}; nonempty for 0 <= k <= d(a,x)-r.
VertexSet a_chain_set(const DistanceGraph& g, Vertex x, Vertex a, int r, int k);

// mu_{r,t}(x,a) with the Dirac conventions at r == 0, r == d(x,a) and r > d(x,a).
Measure mu_t(const DistanceGraph& g, Vertex x, Vertex a, int r, const Rat& t);
StepFn<Measure> mu_step(const DistanceGraph& g, Vertex x, Vertex a, int r);
Measure mu_avg(const DistanceGraph& g, Vertex x, Vertex a, int r);

struct StepProfileReport {
    long pieces_first = 0;
    long pieces_second = 0;
    Rat disagreement;           // Lebesgue measure in t of pointwise difference
    Rat decay_product;          // disagreement * (1 + relevant distance)
};

StepProfileReport psi_step_profile(const DistanceGraph& g, const VertexSet& S, Vertex x,
                                   Vertex x2, int N);
StepProfileReport mu_step_profile(const DistanceGraph& g, Vertex x, Vertex x2, Vertex a, int r);

}  // namespace hyperb
