#include "hyperb/parametrix.hpp"

#include <algorithm>

namespace hyperb {

int derived_F(int delta, int N, int p_max) { return 15 * delta + 2 * N + 10 * delta * p_max; }

std::vector<ParamViolation> validate_parameters(int delta, int K, int p_max,
                                                const ParameterSet& par) {
    (void)K;
    std::vector<ParamViolation> out;
    long N = par.N, Q = par.Q, P = par.P, M = par.M, d = delta, p = p_max;
    long F = derived_F(delta, par.N, p_max);
    auto need = [&](bool ok, const std::string& name) {
        if (!ok) out.push_back({name, false});
    };
    need(N >= 6 * d + 1, "N >= 6*delta+1");
    need(N >= 9 * d, "N >= 9*delta");
    need(N - 7 * d >= 1, "N-7*delta >= 1");
    need(2 * N > 23 * d, "2N > 23*delta");
    need(Q >= 2, "Q >= 2");
    need(Q * (N - 6 * d) >= 2 * (3 * N + 5 * d * p + 10 * d) * p,
         "Q(N-6*delta)/p_max >= 2(3N+5*delta*p_max+10*delta)");
    need(Q * (N - 6 * d) >= (3 * N + 11 * d + 1) * p, "Q(N-6*delta)/p_max >= 3N+11*delta+1");
    need(Q * (N - 6 * d) > 3 * N * p, "Q(N-6*delta)/p_max > 3N");
    need(Q * (N - 6 * d) >= (2 * N + 4 * d) * p, "Q(N-6*delta)/p_max-2N >= 4*delta");
    need(Q >= F * (F + N), "Q/F >= F+N");
    need(Q >= F * (N - 6 * d) + F * F, "Q/F-F >= N-6*delta");
    need(2 * Q > F * (4 * F + 3 * d), "Q/F-F > F+3*delta/2");
    need(P % 3 == 0, "P divisible by 3");
    need(P >= N + 1, "P >= N+1");
    need(P > N + d, "P > N+delta");
    need(P >= 2 * F, "P >= 2F");
    need(P >= 6 * F + 2 * N + d, "P >= 6F+2N+delta");
    need(3 * (2 * N + d) <= P, "2N+delta <= P/3");
    need(P > F + 2 * N + 3 * d, "P > F+2N+3*delta");
    need(2 * P >= F + d, "2P >= F+delta");
    need(M % 2 == 0, "M even");
    need(3 * M >= 10 * P, "3P+P/3 <= M");
    need(M >= P + N, "M >= P+N");
    need(Q * F + P + N + F <= 2 * M, "QF+P+N+F <= 2M");
    if (par.B < 2) out.push_back({"B large enough (empirical constants)", true});
    if (!(par.alpha > 0 && par.alpha < 1)) out.push_back({"alpha in (0,1)", false});
    out.push_back({"B large in delta,K,N,Q,P,M,s (no closed form; empirical)", true});
    out.push_back({"alpha small in delta,K,N,Q,P,M,s,B (no closed form; empirical)", true});
    return out;
}

ParameterSet default_parameters(int delta, int K, int p_max) {
    ParameterSet par;
    long d = delta;
    long p = p_max;
    long N = std::max({6 * d + 1, 9 * d, 7 * d + 1, (23 * d) / 2 + 1});
    par.N = static_cast<int>(N);
    long F = derived_F(delta, par.N, p_max);
    auto cdiv = [](long a, long b) { return (a + b - 1) / b; };
    long drop = N - 6 * d;
    long Q = std::max({2L, cdiv(2 * (3 * N + 5 * d * p + 10 * d) * p, drop),
                       cdiv((3 * N + 11 * d + 1) * p, drop), 3 * N * p / drop + 1,
                       cdiv((2 * N + 4 * d) * p, drop), F * (F + N), F * drop + F * F,
                       F * (4 * F + 3 * d) / 2 + 1});
    par.Q = static_cast<int>(Q);
    long Plo = std::max({N + 1, N + d + 1, 2 * F, 6 * F + 2 * N + d, 3 * (2 * N + d),
                         F + 2 * N + 3 * d + 1, cdiv(F + d, 2)});
    long P = cdiv(Plo, 3) * 3;
    par.P = static_cast<int>(P);
    long Mlo = std::max({cdiv(10 * P, 3), P + N, cdiv(Q * F + P + N + F, 2)});
    par.M = static_cast<int>(Mlo + (Mlo % 2));
    for (auto& v : validate_parameters(delta, K, p_max, par))
        if (!v.advisory)
            throw std::logic_error("default parameter derivation missed: " + v.name);
    return par;
}

ParametrixContext::ParametrixContext(const RipsComplex& rips, ParameterSet par)
    : rips_(&rips), par_(std::move(par)) {}

const GradedOp& ParametrixContext::bd() {
    if (!bd_built_) {
        bd_ = boundary_op(*rips_);
        bd_built_ = true;
    }
    return bd_;
}

const VertexSet& ParametrixContext::uset_of(int p, int idx) {
    auto key = std::make_pair(p, idx);
    auto it = uset_.find(key);
    if (it != uset_.end()) return it->second;
    VertexSet S = (p == 0) ? VertexSet{} : rips_->simplex(p, idx);
    VertexSet us;
    if (p == 0)
        us = {};  // unused; the empty simplex follows the S == {x} convention
    else
        us = u_set(graph(), S, par_.N);
    return uset_.emplace(key, std::move(us)).first->second;
}

Rat ParametrixContext::zeta_of(Vertex x, int p, int idx) {
    auto key = std::make_tuple(x, p, idx);
    auto it = zeta_.find(key);
    if (it != zeta_.end()) return it->second;
    Rat z = 0;
    if (p > 0) z = zeta(graph(), x, rips_->simplex(p, idx), par_.N, rips_->p_max());
    zeta_.emplace(key, z);
    return z;
}

GradedOp ParametrixContext::h_at(Vertex x, const Rat& t) {
    return build_graded(*rips_, +1, [&](int p, int idx) {
        VertexSet S = (p == 0) ? VertexSet{} : rips_->simplex(p, idx);
        Measure m = psi_t(graph(), S, x, t, par_.N);
        return wedge_measure(*rips_, m, chain_basis(p, idx));
    });
}

const GradedOp& ParametrixContext::h(Vertex x) {
    auto it = h_.find(x);
    if (it != h_.end()) return it->second;
    GradedOp op = build_graded(*rips_, +1, [&](int p, int idx) {
        VertexSet S = (p == 0) ? VertexSet{} : rips_->simplex(p, idx);
        Measure m = psi_avg(graph(), S, x, par_.N);
        return wedge_measure(*rips_, m, chain_basis(p, idx));
    });
    return h_.emplace(x, std::move(op)).first->second;
}

const GradedOp& ParametrixContext::D(Vertex x) {
    auto it = d_.find(x);
    if (it != d_.end()) return it->second;
    const GradedOp& hx = h(x);
    GradedOp dd = op_add(op_mul(bd(), hx), op_mul(hx, bd()));
    return d_.emplace(x, std::move(dd)).first->second;
}

int ParametrixContext::max_neumann_steps() const {
    int delta = graph().delta();
    int drop_den = std::max(1, par_.N - 6 * delta);
    long zmax = graph().diameter() + par_.N;
    return static_cast<int>(zmax * rips_->p_max() / drop_den + rips_->p_max() + 3);
}

const GradedOp& ParametrixContext::H(Vertex x) {
    auto it = big_h_.find(x);
    if (it != big_h_.end()) return it->second;
    const GradedOp& hx = h(x);
    const GradedOp& dd = D(x);
    int guard = max_neumann_steps();
    GradedOp op = build_graded(*rips_, +1, [&](int p, int idx) {
        Chain total;
        total.p = p + 1;
        Chain cur = chain_basis(p, idx);
        for (int step = 0;; ++step) {
            if (cur.zero()) break;
            if (step > guard)
                throw std::runtime_error(
                    "Neumann series did not terminate within the filtration bound");
            total += apply(hx, cur);
            Chain next = cur;
            next -= apply(dd, cur);
            cur = std::move(next);
        }
        return total;
    });
    return big_h_.emplace(x, std::move(op)).first->second;
}

Chain ParametrixContext::phi(const Chain& f) {
    Chain out;
    out.p = f.p + 1;
    if (f.zero()) return out;
    if (f.p >= 1) {
        Chain b = boundary(*rips_, f);
        if (f.p == 1) {
            Rat s = 0;
            for (auto& [i, q] : b.coef) s += q;
            if (s != 0) throw std::invalid_argument("phi needs a cycle (total coefficient 0)");
        } else if (!b.zero()) {
            throw std::invalid_argument("phi needs a cycle");
        }
    }
    VertexSet sp = supp(*rips_, f);
    for (Vertex z : sp) out += apply(H(z), f);
    out *= Rat(1, static_cast<long>(sp.size()));
    return out;
}

Chain ParametrixContext::v_rt(Vertex x, int p, int idx, int r, const Rat& t) {
    if (r == 0) return chain_basis(p, idx);
    auto key = std::make_tuple(x, p, idx, r, t);
    auto it = vmemo_.find(key);
    if (it != vmemo_.end()) return it->second;
    Chain out;
    if (p == 1) {
        Vertex a = rips_->simplex(1, idx)[0];
        Measure m = mu_t(graph(), x, a, r, t);
        out.p = 1;
        for (auto& [v, q] : m) out.add(rips_->index_of(1, {v}), q);
    } else {
        out = phi(v_rt_chain(x, boundary(*rips_, chain_basis(p, idx)), r, t));
    }
    vmemo_.emplace(key, out);
    return out;
}

Chain ParametrixContext::v_rt_chain(Vertex x, const Chain& f, int r, const Rat& t) {
    Chain out;
    out.p = f.p;
    for (auto& [idx, q] : f.coef) {
        Chain piece = v_rt(x, f.p, idx, r, t);
        piece *= q;
        out += piece;
    }
    return out;
}

Chain ParametrixContext::u_rt(Vertex x, int deg, int idx, int r, const Rat& t) {
    Chain out;
    out.p = deg + 1;
    if (deg == 0 || r < 1) return out;  // u vanishes on degree 0 for r >= 1
    auto key = std::make_tuple(x, deg, idx, r, t);
    auto it = umemo_.find(key);
    if (it != umemo_.end()) return it->second;
    const Simplex& S = rips_->simplex(deg, idx);
    int rmax = 0;
    for (Vertex a : S) rmax = std::max(rmax, graph().d(x, a));
    if (r > rmax) {
        umemo_.emplace(key, out);
        return out;
    }
    Chain arg = v_rt(x, deg, idx, r - 1, t);
    arg -= v_rt(x, deg, idx, r, t);
    if (deg >= 2) arg -= u_rt_chain(x, boundary(*rips_, chain_basis(deg, idx)), r, t);
    out = phi(arg);
    umemo_.emplace(key, out);
    return out;
}

Chain ParametrixContext::u_rt_chain(Vertex x, const Chain& f, int r, const Rat& t) {
    Chain out;
    out.p = f.p + 1;
    for (auto& [idx, q] : f.coef) {
        Chain piece = u_rt(x, f.p, idx, r, t);
        piece *= q;
        out += piece;
    }
    return out;
}

namespace {

// integration grid in t for the measures mu_{r,t}(x,a), mu_{r-1,t}(x,a), a in S
std::vector<Rat> u_breakpoints(const DistanceGraph& g, Vertex x, const Simplex& S, int r) {
    std::vector<Rat> bs{Rat(0), Rat(1)};
    for (Vertex a : S)
        for (long L : {static_cast<long>(g.d(x, a)) - r, static_cast<long>(g.d(x, a)) - r + 1})
            if (L >= 2)
                for (long j = 1; j < L; ++j) bs.push_back(Rat(j, L));
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    return bs;
}

}  // namespace

GradedOp ParametrixContext::u_r(Vertex x, int r) {
    return build_graded(*rips_, +1, [&](int deg, int idx) {
        Chain total;
        total.p = deg + 1;
        if (deg == 0 || r < 1) return total;
        auto bs = u_breakpoints(graph(), x, rips_->simplex(deg, idx), r);
        for (size_t i = 0; i + 1 < bs.size(); ++i) {
            Rat len = bs[i + 1] - bs[i];
            Rat mid = (bs[i] + bs[i + 1]) / 2;
            Chain piece = u_rt(x, deg, idx, r, mid);
            piece *= len;
            total += piece;
        }
        return total;
    });
}

GradedOp ParametrixContext::u(Vertex x) {
    return build_graded(*rips_, +1, [&](int deg, int idx) {
        Chain total;
        total.p = deg + 1;
        if (deg == 0) {
            total.add(rips_->index_of(1, {x}), 1);  // e_empty -> e_x
            return total;
        }
        const Simplex& S = rips_->simplex(deg, idx);
        int rmax = 0;
        for (Vertex a : S) rmax = std::max(rmax, graph().d(x, a));
        for (int r = 1; r <= rmax; ++r) {
            auto bs = u_breakpoints(graph(), x, S, r);
            for (size_t i = 0; i + 1 < bs.size(); ++i) {
                Rat len = bs[i + 1] - bs[i];
                Rat mid = (bs[i] + bs[i + 1]) / 2;
                Chain piece = u_rt(x, deg, idx, r, mid);
                piece *= len;
                total += piece;
            }
        }
        return total;
    });
}

ParametrixContext::JParts ParametrixContext::j_parts(Vertex x) {
    const GradedOp& hx = h(x);
    const GradedOp& dd = D(x);
    GradedOp one = identity_op(*rips_);
    GradedOp one_minus_d = op_sub(one, dd);
    GradedOp power = one;
    GradedOp htilde = zero_op(*rips_, +1);
    for (int q = 1; q <= par_.Q; ++q) {
        htilde = op_add(htilde, op_mul(hx, power));
        power = op_mul(one_minus_d, power);
    }
    // power now equals (1 - dh - hd)^Q
    GradedOp K = op_sub(one, op_add(op_mul(bd(), htilde), op_mul(htilde, bd())));
    if (!op_equal(K, power))
        throw std::logic_error("the two expressions for the K operator disagree");
    GradedOp J = op_add(htilde, op_mul(u(x), K));
    return {std::move(htilde), std::move(K), std::move(J)};
}

std::vector<Rat> ParametrixContext::h_breakpoints(Vertex x) {
    std::vector<Rat> bs{Rat(0), Rat(1)};
    for (int p = 1; p <= rips_->p_max(); ++p)
        for (int idx = 0; idx < rips_->dim(p); ++idx) {
            long L = graph().dist_to_set(x, uset_of(p, idx)) - par_.N;
            if (L >= 2)
                for (long j = 1; j < L; ++j) bs.push_back(Rat(j, L));
        }
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
    return bs;
}

GradedOp ParametrixContext::env_h(Vertex x) {
    auto bs = h_breakpoints(x);
    GradedOp env = zero_op(*rips_, +1);
    for (size_t i = 0; i + 1 < bs.size(); ++i) {
        Rat len = bs[i + 1] - bs[i];
        Rat mid = (bs[i] + bs[i + 1]) / 2;
        env = op_add(env, op_scale(op_abs(h_at(x, mid)), len));
    }
    return env;
}

GradedOp ParametrixContext::env_one_minus_D(Vertex x) {
    auto bs = h_breakpoints(x);
    GradedOp env = zero_op(*rips_, 0);
    GradedOp one = identity_op(*rips_);
    for (size_t i = 0; i + 1 < bs.size(); ++i) {
        Rat len = bs[i + 1] - bs[i];
        Rat mid = (bs[i] + bs[i + 1]) / 2;
        GradedOp ht = h_at(x, mid);
        GradedOp dt = op_add(op_mul(bd(), ht), op_mul(ht, bd()));
        env = op_add(env, op_scale(op_abs(op_sub(one, dt)), len));
    }
    return env;
}

GradedOp ParametrixContext::env_u_r(Vertex x, int r) {
    return build_graded(*rips_, +1, [&](int deg, int idx) {
        Chain total;
        total.p = deg + 1;
        if (deg == 0 || r < 1) return total;
        auto bs = u_breakpoints(graph(), x, rips_->simplex(deg, idx), r);
        for (size_t i = 0; i + 1 < bs.size(); ++i) {
            Rat len = bs[i + 1] - bs[i];
            Rat mid = (bs[i] + bs[i + 1]) / 2;
            Chain piece = u_rt(x, deg, idx, r, mid);
            for (auto& [k, q] : piece.coef) total.add(k, len * boost::multiprecision::abs(q));
        }
        return total;
    });
}

}  // namespace hyperb
