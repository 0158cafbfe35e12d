#include "hyperb/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace hyperb {

RealOp to_real(const GradedOp& op) {
    RealOp out;
    out.rips = op.rips;
    out.shift = op.shift;
    for (auto& m : op.block) {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m.rows, m.cols);
        for (int j = 0; j < m.cols; ++j)
            for (auto& [i, q] : m.col[j]) b(i, j) = to_double(q);
        out.block.push_back(std::move(b));
    }
    return out;
}

RealOp real_zero(const RipsComplex& rips, int shift) {
    RealOp out;
    out.rips = &rips;
    out.shift = shift;
    for (int p = 0; p <= rips.p_max(); ++p)
        out.block.push_back(Eigen::MatrixXd::Zero(rips.dim(p + shift), rips.dim(p)));
    return out;
}

RealOp real_add(const RealOp& a, const RealOp& b) {
    RealOp out = a;
    for (size_t p = 0; p < out.block.size(); ++p) out.block[p] += b.block[p];
    return out;
}

RealOp real_sub(const RealOp& a, const RealOp& b) {
    RealOp out = a;
    for (size_t p = 0; p < out.block.size(); ++p) out.block[p] -= b.block[p];
    return out;
}

RealOp real_mul(const RealOp& a, const RealOp& b) {
    const RipsComplex& rc = *b.rips;
    RealOp out;
    out.rips = b.rips;
    out.shift = a.shift + b.shift;
    for (int p = 0; p <= rc.p_max(); ++p) {
        int mid = p + b.shift;
        if (mid >= 0 && mid <= rc.p_max())
            out.block.push_back(a.block[mid] * b.block[p]);
        else
            out.block.push_back(Eigen::MatrixXd::Zero(rc.dim(p + out.shift), rc.dim(p)));
    }
    return out;
}

RealOp real_scale(const RealOp& a, double c) {
    RealOp out = a;
    for (auto& m : out.block) m *= c;
    return out;
}

double real_max_abs(const RealOp& a) {
    double best = 0;
    for (auto& m : a.block)
        if (m.size()) best = std::max(best, m.cwiseAbs().maxCoeff());
    return best;
}

DiagWeights to_double_weights(const std::vector<std::vector<Rat>>& w) {
    DiagWeights out(w.size());
    for (size_t p = 0; p < w.size(); ++p)
        for (auto& q : w[p]) out[p].push_back(to_double(q));
    return out;
}

RealOp conjugate(const RealOp& op, double tau, const DiagWeights& rho) {
    RealOp out = op;
    const RipsComplex& rc = *op.rips;
    for (int p = 0; p <= rc.p_max(); ++p) {
        int tp = p + op.shift;
        if (tp < 0 || tp > rc.p_max()) continue;
        auto& m = out.block[p];
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0) m(i, j) *= std::exp(tau * (rho[tp][i] - rho[p][j]));
    }
    return out;
}

double op_norm_l2(const RealOp& op) {
    double best = 0;
    for (auto& m : op.block) {
        if (m.rows() == 0 || m.cols() == 0) continue;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        if (svd.singularValues().size()) best = std::max(best, svd.singularValues()(0));
    }
    return best;
}

namespace {

Eigen::MatrixXd assemble(const RealOp& op) {
    const RipsComplex& rc = *op.rips;
    int total = 0;
    std::vector<int> offset(rc.p_max() + 2, 0);
    for (int p = 0; p <= rc.p_max(); ++p) {
        offset[p] = total;
        total += rc.dim(p);
    }
    offset[rc.p_max() + 1] = total;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(total, total);
    for (int p = 0; p <= rc.p_max(); ++p) {
        int tp = p + op.shift;
        if (tp < 0 || tp > rc.p_max()) continue;
        A.block(offset[tp], offset[p], rc.dim(tp), rc.dim(p)) = op.block[p];
    }
    return A;
}

}  // namespace

double spectral_radius(const RealOp& op) {
    Eigen::MatrixXd A = assemble(op);
    if (A.rows() == 0) return 0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    double best = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        best = std::max(best, std::abs(es.eigenvalues()(i)));
    return best;
}

double spectral_radius_abs_power(const RealOp& op, int iters) {
    Eigen::MatrixXd A = assemble(op).cwiseAbs();
    if (A.rows() == 0) return 0;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.rows());
    v.normalize();
    double lam = 0;
    for (int it = 0; it < iters; ++it) {
        Eigen::VectorXd w = A * v;
        double n = w.norm();
        if (n == 0) return 0;
        w /= n;
        lam = n;
        v = w;
    }
    return lam;
}

MinTReport find_min_T(ParametrixContext& ctx, Vertex x, double T_cap) {
    MinTReport rep;
    const RipsComplex& rips = ctx.rips();
    const DistanceGraph& g = ctx.graph();
    const ParameterSet& par = ctx.params();

    // remainder operator (1 - dh - hd)^Q, exactly
    GradedOp one = identity_op(rips);
    GradedOp one_minus_d = op_sub(one, ctx.D(x));
    GradedOp K = one;
    for (int q = 0; q < par.Q; ++q) K = op_mul(one_minus_d, K);

    auto theta = theta_b_weights(rips, x);
    DiagWeights rho = to_double_weights(theta);

    // per-entry drop of the averaged distance weight
    Rat shift_amount = Rat(par.Q) * (par.N - 6 * g.delta()) / rips.p_max() -
                       (3 * par.N + 11 * g.delta());
    for (int p = 0; p <= rips.p_max(); ++p)
        for (int j = 0; j < rips.dim(p); ++j)
            for (auto& [i, q] : K.block[p].col[j]) {
                ++rep.rho_shift_checked;
                if (!(theta[p][i] <= theta[p][j] - shift_amount)) ++rep.rho_shift_violations;
            }

    RealOp Kr = to_real(K);
    auto norm_at = [&](double T) {
        double n = op_norm_l2(conjugate(Kr, T, rho));
        rep.trace.emplace_back(T, n);
        return n;
    };

    RealOp one_minus_d_r = to_real(one_minus_d);
    double lo = 0, hi = T_cap;
    double n0 = norm_at(0);
    if (spectral_radius(conjugate(one_minus_d_r, 0, rho)) < 1) rep.T_spec = 0;
    if (n0 <= 0.5) {
        rep.T_half = 0;
        rep.found = true;
    } else if (norm_at(T_cap) <= 0.5) {
        for (int it = 0; it < 60; ++it) {
            double mid = (lo + hi) / 2;
            if (norm_at(mid) <= 0.5)
                hi = mid;
            else
                lo = mid;
        }
        rep.T_half = hi;
        rep.found = true;
        if (rep.T_spec < 0 && spectral_radius(conjugate(one_minus_d_r, rep.T_half, rho)) < 1)
            rep.T_spec = rep.T_half;
    }

    // decay of the conjugated step parametrices in r
    double T_use = rep.found ? rep.T_half : T_cap;
    int r_cap = g.diameter();
    for (int r = 1; r <= r_cap; ++r) {
        RealOp ur = to_real(ctx.u_r(x, r));
        rep.u_norms.push_back(op_norm_l2(conjugate(ur, T_use, rho)));
    }
    rep.r0 = 1;
    for (size_t i = 1; i < rep.u_norms.size(); ++i)
        if (rep.u_norms[i - 1] > 0)
            rep.decay_ratio = std::max(rep.decay_ratio, rep.u_norms[i] / rep.u_norms[i - 1]);
    return rep;
}

namespace {

RealOp real_wedge_columns(const RipsComplex& rips, const std::function<std::map<Vertex, double>(int, int)>& weights) {
    RealOp out = real_zero(rips, +1);
    for (int p = 0; p <= rips.p_max(); ++p) {
        if (p + 1 > rips.p_max()) continue;
        for (int idx = 0; idx < rips.dim(p); ++idx)
            for (auto& [v, w] : weights(p, idx)) {
                Chain piece = wedge_vertex(rips, v, p, idx);
                for (auto& [r, q] : piece.coef) out.block[p](r, idx) += w * to_double(q);
            }
    }
    return out;
}

RealOp real_contract_columns(const RipsComplex& rips, const std::function<std::map<Vertex, double>(int, int)>& weights) {
    RealOp out = real_zero(rips, -1);
    for (int p = 1; p <= rips.p_max(); ++p)
        for (int idx = 0; idx < rips.dim(p); ++idx) {
            const Simplex& s = rips.simplex(p, idx);
            auto w = weights(p, idx);
            for (size_t i = 0; i < s.size(); ++i) {
                auto it = w.find(s[i]);
                if (it == w.end()) continue;
                double sign = (i % 2 == 0) ? 1.0 : -1.0;
                if (p == 1) {
                    out.block[p](0, idx) += sign * it->second;
                    continue;
                }
                Simplex face;
                for (size_t j = 0; j < s.size(); ++j)
                    if (j != i) face.push_back(s[j]);
                out.block[p](rips.index_of(p - 1, face), idx) += sign * it->second;
            }
        }
    return out;
}

}  // namespace

SqrtOps sqrt_measure_ops(ParametrixContext& ctx, Vertex x) {
    const RipsComplex& rips = ctx.rips();
    const DistanceGraph& g = ctx.graph();
    int N = ctx.params().N;
    auto phi = [&](int p, int idx) {
        VertexSet S = (p == 0) ? VertexSet{} : rips.simplex(p, idx);
        Measure psi = psi_avg(g, S, x, N);
        std::map<Vertex, double> out;
        for (auto& [v, q] : psi) out[v] = std::sqrt(to_double(q));
        return out;
    };
    auto phi3norm = [&](int p, int idx) {
        VertexSet S = (p == 0) ? VertexSet{} : rips.simplex(p, idx);
        Measure psi = psi_avg(g, S, x, N);
        double s = 0;
        for (auto& [v, q] : psi) s += std::pow(to_double(q), 1.5);
        return s;
    };
    SqrtOps ops;
    ops.f = real_wedge_columns(rips, phi);
    ops.g = real_contract_columns(rips, phi);
    ops.hprime = real_wedge_columns(rips, [&](int p, int idx) {
        VertexSet S = (p == 0) ? VertexSet{} : rips.simplex(p, idx);
        Measure psi = psi_avg(g, S, x, N);
        std::map<Vertex, double> out;
        double nn = phi3norm(p, idx);
        for (auto& [v, q] : psi) out[v] = to_double(q) / nn;
        return out;
    });
    ops.gprime = real_contract_columns(rips, [&](int p, int idx) {
        auto out = phi(p, idx);
        double nn = phi3norm(p, idx);
        for (auto& [v, w] : out) out[v] = w / nn;
        return out;
    });
    return ops;
}

FracPowers fractional_powers(ParametrixContext& ctx, Vertex x, double alpha, double T) {
    FracPowers out;
    const RipsComplex& rips = ctx.rips();
    GradedOp one = identity_op(rips);
    GradedOp Z_exact = op_sub(one, ctx.D(x));
    auto theta = theta_b_weights(rips, x);
    DiagWeights rho = to_double_weights(theta);
    RealOp Z = conjugate(to_real(Z_exact), T, rho);
    out.radius = spectral_radius(Z);
    if (out.radius >= 1)
        throw std::runtime_error("conjugated remainder has spectral radius " +
                                 std::to_string(out.radius) + " >= 1; increase T");
    // (dh+hd)^{-alpha} = sum_j binom(alpha+j-1, j) Z^j
    RealOp dinv_alpha = real_zero(rips, 0);
    {
        RealOp term = real_zero(rips, 0);
        for (int p = 0; p <= rips.p_max(); ++p)
            term.block[p] = Eigen::MatrixXd::Identity(rips.dim(p), rips.dim(p));
        double coef = 1;
        for (int j = 0;; ++j) {
            dinv_alpha = real_add(dinv_alpha, real_scale(term, coef));
            ++out.series_terms;
            RealOp next = real_mul(Z, term);
            if (real_max_abs(next) == 0) { out.nilpotent = true; break; }
            if (real_max_abs(next) * std::abs(coef) < 1e-18 || j > 2000) break;
            term = std::move(next);
            coef *= (alpha + j) / (j + 1.0);
        }
    }
    // (dh+hd)^{+alpha} = sum_j binom(alpha, j) (-Z)^j
    RealOp dpos_alpha = real_zero(rips, 0);
    {
        RealOp term = real_zero(rips, 0);
        for (int p = 0; p <= rips.p_max(); ++p)
            term.block[p] = Eigen::MatrixXd::Identity(rips.dim(p), rips.dim(p));
        double coef = 1;
        for (int j = 0;; ++j) {
            dpos_alpha = real_add(dpos_alpha, real_scale(term, coef));
            RealOp next = real_mul(Z, term);
            if (real_max_abs(next) == 0) break;
            if (real_max_abs(next) * std::abs(coef) < 1e-18 || j > 2000) break;
            term = std::move(next);
            coef *= -(alpha - j) / (j + 1.0);
        }
    }
    RealOp h_T = conjugate(to_real(ctx.h(x)), T, rho);
    RealOp bd_T = conjugate(to_real(ctx.bd()), T, rho);
    RealOp H_alpha_T = real_mul(h_T, dinv_alpha);
    RealOp D_alpha_T = real_mul(bd_T, dinv_alpha);
    out.H_alpha = conjugate(H_alpha_T, -T, rho);
    out.D_alpha = conjugate(D_alpha_T, -T, rho);
    out.Dpos_alpha = conjugate(dpos_alpha, -T, rho);
    return out;
}

}  // namespace hyperb
