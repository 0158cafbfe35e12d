#pragma once

#include <Eigen/Dense>

#include "hyperb/avg_distance.hpp"
#include "hyperb/parametrix.hpp"

namespace hyperb {

// dense floating-point version of a graded operator
struct RealOp {
    const RipsComplex* rips = nullptr;
    int shift = 0;
    std::vector<Eigen::MatrixXd> block;
};

RealOp to_real(const GradedOp& op);
RealOp real_zero(const RipsComplex& rips, int shift);
RealOp real_add(const RealOp& a, const RealOp& b);
RealOp real_sub(const RealOp& a, const RealOp& b);
RealOp real_mul(const RealOp& a, const RealOp& b);
RealOp real_scale(const RealOp& a, double c);
double real_max_abs(const RealOp& a);

// per-simplex weights rho(S) as doubles, degree-indexed
using DiagWeights = std::vector<std::vector<double>>;
DiagWeights to_double_weights(const std::vector<std::vector<Rat>>& w);

// entrywise A'_{T,S} = e^{tau (rho(T) - rho(S))} A_{T,S}
RealOp conjugate(const RealOp& op, double tau, const DiagWeights& rho);

double op_norm_l2(const RealOp& op);          // max block singular value
double spectral_radius(const RealOp& op);     // eigenvalues of the assembled matrix
double spectral_radius_abs_power(const RealOp& op, int iters = 300);

struct MinTReport {
    double T_half = -1;      // smallest T with conjugated remainder norm <= 1/2
    double T_spec = -1;      // smallest traced T with rho(conjugated 1-D) < 1
    bool found = false;
    std::vector<std::pair<double, double>> trace;  // (T, norm) along the search
    std::vector<double> u_norms;                   // conjugated u_r norms, r = 1..
    double decay_ratio = 0;                        // max of consecutive ratios past r0
    int r0 = 0;
    long rho_shift_checked = 0;
    long rho_shift_violations = 0;
};

MinTReport find_min_T(ParametrixContext& ctx, Vertex x, double T_cap = 50.0);

struct SqrtOps {
    RealOp f, g, hprime, gprime;
};

SqrtOps sqrt_measure_ops(ParametrixContext& ctx, Vertex x);

struct FracPowers {
    RealOp H_alpha, D_alpha;   // de-conjugated: h (dh+hd)^{-a}, d (dh+hd)^{-a}
    RealOp Dpos_alpha;         // (dh+hd)^{+a}
    double radius = 0;         // measured radius of the conjugated 1 - (dh+hd)
    int series_terms = 0;
    bool nilpotent = false;
};

FracPowers fractional_powers(ParametrixContext& ctx, Vertex x, double alpha, double T);

}  // namespace hyperb
