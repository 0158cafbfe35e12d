#include "hyperb/measures.hpp"

#include <algorithm>

namespace hyperb {

Measure uniform_on(const VertexSet& A) {
    if (A.empty()) throw std::invalid_argument("uniform measure on empty set");
    Measure m;
    Rat w = Rat(1, static_cast<long>(A.size()));
    for (int v : A) m[v] = w;
    return m;
}

Rat total_mass(const Measure& m) {
    Rat s = 0;
    for (auto& [v, q] : m) s += q;
    return s;
}

Rat l1_distance(const Measure& a, const Measure& b) {
    Rat s = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            s += boost::multiprecision::abs(ia->second);
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            s += boost::multiprecision::abs(ib->second);
            ++ib;
        } else {
            s += boost::multiprecision::abs(ia->second - ib->second);
            ++ia, ++ib;
        }
    }
    return s;
}

Measure step_average(const StepFn<Measure>& f) {
    Measure out;
    for (size_t i = 0; i < f.vals.size(); ++i) {
        Rat len = f.breaks[i + 1] - f.breaks[i];
        for (auto& [v, q] : f.vals[i]) {
            out[v] += len * q;
        }
    }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second == 0) ? out.erase(it) : std::next(it);
    return out;
}

VertexSet u_set(const DistanceGraph& g, const VertexSet& S, int N) {
    if (S.empty()) throw std::invalid_argument("u_set needs a nonempty simplex");
    VertexSet out;
    for (int z = 0; z < g.vertex_count(); ++z) {
        bool in = true;
        for (int a : S)
            if (g.d(a, z) > N) { in = false; break; }
        if (in) out.push_back(z);
    }
    return out;
}

VertexSet a_set(const DistanceGraph& g, const VertexSet& S, Vertex x, int N) {
    int delta = g.delta();
    if (S.empty() || (S.size() == 1 && S[0] == x)) return g.ball(x, delta);
    VertexSet us = u_set(g, S, N);
    int dU = g.dist_to_set(x, us);
    VertexSet out;
    for (int z : us)
        if (g.d(x, z) <= dU + delta) out.push_back(z);
    return out;
}

VertexSet y_set(const DistanceGraph& g, const VertexSet& S, Vertex x, int r, int N) {
    int delta = g.delta();
    VertexSet s_eff = S.empty() ? VertexSet{x} : S;
    VertexSet us = u_set(g, s_eff, N);
    VertexSet out;
    for (int z : us) {
        bool in = false;
        for (int y = 0; y < g.vertex_count() && !in; ++y) {
            if (g.d(x, y) > r) continue;
            if (!g.in_eps_geod(y, x, z, delta)) continue;
            if (g.d(y, z) == g.dist_to_set(y, us)) in = true;
        }
        if (in) out.push_back(z);
    }
    return out;
}

namespace {

// step function max(0, E(t*L)) for t in [0,1), with measure values attached
StepFn<Measure> nested_step(long L, const std::function<VertexSet(int)>& set_at) {
    StepFn<Measure> f;
    if (L <= 1) return StepFn<Measure>::constant(uniform_on(set_at(0)));
    f.breaks.push_back(0);
    Measure prev;
    for (long j = 0; j < L; ++j) {
        Measure cur = uniform_on(set_at(static_cast<int>(j)));
        if (!f.vals.empty() && cur == f.vals.back()) continue;  // merge equal pieces
        if (!f.vals.empty()) f.breaks.push_back(Rat(j, L));
        f.vals.push_back(std::move(cur));
    }
    f.breaks.push_back(1);
    return f;
}

}  // namespace

Measure psi_t(const DistanceGraph& g, const VertexSet& S, Vertex x, const Rat& t, int N) {
    VertexSet s_eff = S.empty() ? VertexSet{x} : S;
    long L = g.dist_to_set(x, u_set(g, s_eff, N)) - N;
    long r = 0;
    if (L > 0) r = std::max(0L, rat_floor_long(t * L));
    return uniform_on(y_set(g, S, x, static_cast<int>(r), N));
}

StepFn<Measure> psi_step(const DistanceGraph& g, const VertexSet& S, Vertex x, int N) {
    VertexSet s_eff = S.empty() ? VertexSet{x} : S;
    long L = g.dist_to_set(x, u_set(g, s_eff, N)) - N;
    return nested_step(L, [&](int r) { return y_set(g, S, x, r, N); });
}

Measure psi_avg(const DistanceGraph& g, const VertexSet& S, Vertex x, int N) {
    VertexSet s_eff = S.empty() ? VertexSet{x} : S;
    long L = g.dist_to_set(x, u_set(g, s_eff, N)) - N;
    long hi = std::max(0L, L - 1);
    Measure out;
    Rat norm = Rat(1, std::max(1L, L));
    for (long r = 0; r <= hi; ++r) {
        Measure piece = uniform_on(y_set(g, S, x, static_cast<int>(r), N));
        for (auto& [v, q] : piece) out[v] += norm * q;
    }
    return out;
}

VertexSet a_chain_set(const DistanceGraph& g, Vertex x, Vertex a, int r, int k) {
    int delta = g.delta();
    VertexSet out;
    for (int y = 0; y < g.vertex_count(); ++y) {
        if (g.d(a, y) != r) continue;
        bool in = false;
        for (int z = 0; z < g.vertex_count() && !in; ++z) {
            if (g.d(a, z) != r + k) continue;
            if (!g.in_eps_geod(z, x, a, delta)) continue;
            if (g.d(z, y) + g.d(y, a) == g.d(z, a)) in = true;
        }
        if (in) out.push_back(y);
    }
    return out;
}

Measure mu_t(const DistanceGraph& g, Vertex x, Vertex a, int r, const Rat& t) {
    int d = g.d(x, a);
    if (r == 0) return {{a, Rat(1)}};
    if (r >= d) return {{x, Rat(1)}};
    long k = std::max(0L, rat_floor_long(t * (d - r)));
    return uniform_on(a_chain_set(g, x, a, r, static_cast<int>(k)));
}

StepFn<Measure> mu_step(const DistanceGraph& g, Vertex x, Vertex a, int r) {
    int d = g.d(x, a);
    if (r == 0) return StepFn<Measure>::constant({{a, Rat(1)}});
    if (r >= d) return StepFn<Measure>::constant({{x, Rat(1)}});
    return nested_step(d - r, [&](int k) { return a_chain_set(g, x, a, r, k); });
}

Measure mu_avg(const DistanceGraph& g, Vertex x, Vertex a, int r) {
    return step_average(mu_step(g, x, a, r));
}

StepProfileReport psi_step_profile(const DistanceGraph& g, const VertexSet& S, Vertex x,
                                   Vertex x2, int N) {
    StepProfileReport rep;
    auto f1 = psi_step(g, S, x, N);
    auto f2 = psi_step(g, S, x2, N);
    rep.pieces_first = static_cast<long>(f1.pieces());
    rep.pieces_second = static_cast<long>(f2.pieces());
    rep.disagreement = disagreement_measure(f1, f2);
    int dS = S.empty() ? g.d(x, x) : g.dist_to_set(x, S);
    rep.decay_product = rep.disagreement * Rat(1 + dS);
    return rep;
}

StepProfileReport mu_step_profile(const DistanceGraph& g, Vertex x, Vertex x2, Vertex a, int r) {
    StepProfileReport rep;
    auto f1 = mu_step(g, x, a, r);
    auto f2 = mu_step(g, x2, a, r);
    rep.pieces_first = static_cast<long>(f1.pieces());
    rep.pieces_second = static_cast<long>(f2.pieces());
    rep.disagreement = disagreement_measure(f1, f2);
    rep.decay_product = rep.disagreement * Rat(std::max(0, g.d(a, x) - r));
    return rep;
}

}  // namespace hyperb
