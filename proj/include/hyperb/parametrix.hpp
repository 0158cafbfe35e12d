#pragma once

#include <tuple>

#include "hyperb/operators.hpp"

namespace hyperb {

struct ParameterSet {
    int N = 1;
    int Q = 12;
    int P = 15;
    int M = 50;
    Rat B = 64;
    Rat alpha = Rat(1, 2);
    Rat s = Rat(1, 2);
    double T = 0.0;
};

struct ParamViolation {
    std::string name;
    bool advisory = false;
};

int derived_F(int delta, int N, int p_max);

// Explicitly checkable inequalities between the parameters; the B/alpha
// largeness conditions have no closed form and come back flagged advisory.
std::vector<ParamViolation> validate_parameters(int delta, int K, int p_max,
                                                const ParameterSet& par);

// Smallest parameter set passing every exact constraint for the given instance.
ParameterSet default_parameters(int delta, int K, int p_max);

// Caches the chain parametrices attached to one Rips complex.
class ParametrixContext {
public:
    ParametrixContext(const RipsComplex& rips, ParameterSet par);

    const RipsComplex& rips() const { return *rips_; }
    const DistanceGraph& graph() const { return rips_->graph(); }
    const ParameterSet& params() const { return par_; }

    const GradedOp& bd();
    const GradedOp& h(Vertex x);          // averaged h_x
    GradedOp h_at(Vertex x, const Rat& t);
    const GradedOp& D(Vertex x);          // dh + hd
    const GradedOp& H(Vertex x);          // terminating Neumann series

    Chain phi(const Chain& f);            // section of the boundary on cycles
    Chain v_rt(Vertex x, int p, int idx, int r, const Rat& t);
    Chain v_rt_chain(Vertex x, const Chain& f, int r, const Rat& t);
    Chain u_rt(Vertex x, int deg, int idx, int r, const Rat& t);
    Chain u_rt_chain(Vertex x, const Chain& f, int r, const Rat& t);

    GradedOp u(Vertex x);                 // exact t-integrated second parametrix
    GradedOp u_r(Vertex x, int r);

    struct JParts {
        GradedOp Htilde, K, J;
    };
    JParts j_parts(Vertex x);

    // interval envelopes: entrywise-positive operators whose support contains
    // the support of the corresponding operator for every parameter value
    std::vector<Rat> h_breakpoints(Vertex x);
    GradedOp env_h(Vertex x);
    GradedOp env_one_minus_D(Vertex x);
    GradedOp env_u_r(Vertex x, int r);

    Rat zeta_of(Vertex x, int p, int idx);
    int max_neumann_steps() const;

private:
    const RipsComplex* rips_;
    ParameterSet par_;
    GradedOp bd_;
    bool bd_built_ = false;
    std::map<Vertex, GradedOp> h_, d_, big_h_;
    std::map<std::tuple<Vertex, int, int, int, Rat>, Chain> vmemo_, umemo_;
    std::map<std::pair<int, int>, VertexSet> uset_;
    std::map<std::tuple<Vertex, int, int>, Rat> zeta_;

    const VertexSet& uset_of(int p, int idx);
};

struct SupportViolation {
    std::string band;  // which support statement failed
    Vertex x;
    int p;
    int idx;
    Vertex witness;
    int aux = 0;  // q, or r, depending on the band
};

std::vector<SupportViolation> check_h_support(ParametrixContext& ctx, Vertex x);
std::vector<SupportViolation> check_H_support(ParametrixContext& ctx, Vertex x);
std::vector<SupportViolation> check_u_support(ParametrixContext& ctx, Vertex x, int r_max);
std::vector<SupportViolation> check_Htilde_bands(ParametrixContext& ctx, Vertex x);
std::vector<SupportViolation> check_K_band(ParametrixContext& ctx, Vertex x);
std::vector<SupportViolation> check_uK_bands(ParametrixContext& ctx, Vertex x, int r_max);
std::vector<SupportViolation> check_filtration(ParametrixContext& ctx, Vertex x);

// column masses of the multi-parameter integrands at sampled parameter tuples
struct TupleMassReport {
    Rat max_series_mass = 0;     // truncated-series integrand
    Rat max_composite_mass = 0;  // step-parametrix-after-remainder integrand
    long samples = 0;
};
TupleMassReport sampled_tuple_masses(ParametrixContext& ctx, Vertex x, int samples,
                                     unsigned long seed);

}  // namespace hyperb
