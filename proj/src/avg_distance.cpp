#include "hyperb/avg_distance.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>

namespace hyperb {

VertexSet geodesic_band(const DistanceGraph& g, Vertex x, Vertex y, int r) {
    int delta = g.delta();
    VertexSet out;
    for (int z = 0; z < g.vertex_count(); ++z)
        if (g.in_eps_geod(z, x, y, 3 * delta) && g.d(x, z) >= r && g.d(x, z) <= r + 3 * delta)
            out.push_back(z);
    return out;
}

BandPair make_band_pair(const DistanceGraph& g, Vertex x, Vertex y, int r, int s) {
    BandPair bp;
    bp.x = x;
    bp.y = y;
    bp.r = r;
    bp.s = s;
    VertexSet yr = geodesic_band(g, x, y, r);
    VertexSet ys = geodesic_band(g, y, x, s);
    if (yr.empty() || ys.empty())
        throw std::runtime_error("geodesic band is empty for admissible indices");
    bp.pts = set_union(yr, ys);
    bp.in_r.resize(bp.pts.size());
    bp.in_s.resize(bp.pts.size());
    for (size_t i = 0; i < bp.pts.size(); ++i) {
        bp.in_r[i] = set_contains(yr, bp.pts[i]);
        bp.in_s[i] = set_contains(ys, bp.pts[i]);
        if (bp.in_r[i] && bp.in_s[i]) bp.shared = true;
    }
    return bp;
}

bool class_invariants_ok(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c) {
    size_t n = bp.pts.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i != j) {
                long dd = g.d(bp.pts[i], bp.pts[j]);
                if (bp.in_r[i] && bp.in_r[j] && std::labs(c.c[i] - c.c[j]) > dd) return false;
                if (bp.in_s[i] && bp.in_s[j] && std::labs(c.c[i] - c.c[j]) > dd) return false;
            }
            if (bp.in_r[i] && bp.in_s[j] && c.c[i] + c.c[j] < g.d(bp.pts[i], bp.pts[j]))
                return false;
        }
    return true;
}

VirtualClass normalize_class(const BandPair& bp, const VirtualClass& c) {
    if (bp.shared) return c;  // the shift is pinned
    long mn = LONG_MAX;
    for (size_t i = 0; i < bp.pts.size(); ++i)
        if (bp.in_r[i]) mn = std::min(mn, c.c[i]);
    VirtualClass out = c;
    for (size_t i = 0; i < bp.pts.size(); ++i) out.c[i] += bp.in_r[i] ? -mn : mn;
    return out;
}

VirtualClass alpha_map(const DistanceGraph& g, const BandPair& from, const BandPair& to,
                       const VirtualClass& c) {
    VirtualClass out;
    out.c.resize(to.pts.size());
    for (size_t i = 0; i < to.pts.size(); ++i) {
        long best_r = LONG_MAX, best_s = LONG_MAX;
        for (size_t j = 0; j < from.pts.size(); ++j) {
            long v = g.d(to.pts[i], from.pts[j]) + c.c[j];
            if (from.in_r[j]) best_r = std::min(best_r, v);
            if (from.in_s[j]) best_s = std::min(best_s, v);
        }
        if (to.in_r[i] && to.in_s[i]) {
            // a shared target point carries one value; each side's recipe
            // overestimates the virtual distance, so keep the smaller one
            out.c[i] = std::min(best_r, best_s);
        } else {
            out.c[i] = to.in_r[i] ? best_r : best_s;
        }
    }
    return out;
}

bool has_equality_pair(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c) {
    for (size_t i = 0; i < bp.pts.size(); ++i) {
        if (!bp.in_r[i]) continue;
        for (size_t j = 0; j < bp.pts.size(); ++j) {
            if (!bp.in_s[j]) continue;
            if (c.c[i] + c.c[j] == g.d(bp.pts[i], bp.pts[j])) return true;
        }
    }
    return false;
}

long beta_value(const DistanceGraph& g, const BandPair& bp, const VirtualClass& c) {
    long a = LONG_MAX, b = LONG_MAX;
    for (size_t i = 0; i < bp.pts.size(); ++i) {
        if (bp.in_r[i]) a = std::min(a, g.d(bp.x, bp.pts[i]) + c.c[i]);
        if (bp.in_s[i]) b = std::min(b, c.c[i] + g.d(bp.pts[i], bp.y));
    }
    return a + b;
}

namespace {

void enumerate_rec(const DistanceGraph& g, const BandPair& bp, long hi, long hi_r, size_t i,
                   VirtualClass& cur, const std::function<void(const VirtualClass&)>& sink) {
    if (i == bp.pts.size()) {
        sink(cur);
        return;
    }
    long lo = 0;
    long up = bp.in_r[i] ? std::min(hi, hi_r) : hi;
    for (size_t j = 0; j < i; ++j) {
        long dd = g.d(bp.pts[i], bp.pts[j]);
        bool same_side = (bp.in_r[i] && bp.in_r[j]) || (bp.in_s[i] && bp.in_s[j]);
        if (same_side) {
            lo = std::max(lo, cur.c[j] - dd);
            up = std::min(up, cur.c[j] + dd);
        }
        bool cross = (bp.in_r[i] && bp.in_s[j]) || (bp.in_s[i] && bp.in_r[j]);
        if (cross) lo = std::max(lo, dd - cur.c[j]);
    }
    if (bp.in_r[i] && bp.in_s[i]) lo = std::max(lo, 0L);  // 2c >= 0
    for (long v = lo; v <= up; ++v) {
        cur.c[i] = v;
        enumerate_rec(g, bp, hi, hi_r, i + 1, cur, sink);
    }
}

std::vector<VirtualClass> enumerate_members_window(const DistanceGraph& g, const BandPair& bp3,
                                                   const BandPair& bp2, long hi) {
    std::set<VirtualClass> seen;
    VirtualClass cur;
    cur.c.resize(bp3.pts.size());
    // the min-0 representative of every class lies inside the window, so
    // non-normalized copies can be skipped outright
    long diam_r = 0;
    for (size_t i = 0; i < bp3.pts.size(); ++i)
        for (size_t j = 0; j < bp3.pts.size(); ++j)
            if (bp3.in_r[i] && bp3.in_r[j])
                diam_r = std::max<long>(diam_r, g.d(bp3.pts[i], bp3.pts[j]));
    enumerate_rec(g, bp3, hi, bp3.shared ? hi : diam_r, 0, cur, [&](const VirtualClass& c) {
        if (!bp3.shared) {
            long mn = LONG_MAX;
            for (size_t i = 0; i < bp3.pts.size(); ++i)
                if (bp3.in_r[i]) mn = std::min(mn, c.c[i]);
            if (mn != 0) return;
        }
        if (!class_invariants_ok(g, bp3, c)) return;
        if (seen.count(c)) return;
        VirtualClass img = alpha_map(g, bp3, bp2, c);
        if (has_equality_pair(g, bp2, img)) seen.insert(c);
    });
    return {seen.begin(), seen.end()};
}

}  // namespace

LambdaMembers lambda_members(const DistanceGraph& g, Vertex x, Vertex y, int r2, int s2, int r3,
                             int s3) {
    int delta = g.delta();
    LambdaMembers out;
    out.bp3 = make_band_pair(g, x, y, r3, s3);
    BandPair bp2 = make_band_pair(g, x, y, r2, s2);
    long window = g.d(x, y) + 10L * delta;
    long cap = g.d(x, y) + 20L * delta + 5;
    std::vector<VirtualClass> prev = enumerate_members_window(g, out.bp3, bp2, window);
    while (window < cap) {
        long next = std::min(cap, window + 2L * delta + 1);
        std::vector<VirtualClass> wider = enumerate_members_window(g, out.bp3, bp2, next);
        if (wider == prev) break;
        prev = std::move(wider);
        window = next;
    }
    out.members = std::move(prev);
    out.window_used = window;
    if (out.members.empty()) throw std::runtime_error("no virtual class found (expected nonempty)");
    return out;
}

std::vector<VirtualClass> lambda_tilde(const DistanceGraph& g, Vertex x, Vertex y, int r1, int r2,
                                       int r3, int s1, int s2, int s3) {
    LambdaMembers mem = lambda_members(g, x, y, r2, s2, r3, s3);
    BandPair bp1 = make_band_pair(g, x, y, r1, s1);
    std::set<VirtualClass> seen;
    for (auto& c : mem.members) seen.insert(normalize_class(bp1, alpha_map(g, mem.bp3, bp1, c)));
    return {seen.begin(), seen.end()};
}

std::vector<VirtualClass> lambda_tilde_oracle(const DistanceGraph& g, Vertex x, Vertex y, int r1,
                                              int r2, int r3, int s1, int s2, int s3, long hi) {
    BandPair bp3 = make_band_pair(g, x, y, r3, s3);
    BandPair bp2 = make_band_pair(g, x, y, r2, s2);
    BandPair bp1 = make_band_pair(g, x, y, r1, s1);
    std::set<VirtualClass> seen;
    std::vector<long> c(bp3.pts.size(), 0);
    // plain product enumeration over [0,hi]^pts
    while (true) {
        VirtualClass vc{c};
        if (class_invariants_ok(g, bp3, vc) &&
            has_equality_pair(g, bp2, alpha_map(g, bp3, bp2, vc)))
            seen.insert(normalize_class(bp1, alpha_map(g, bp3, bp1, vc)));
        size_t i = 0;
        while (i < c.size() && c[i] == hi) c[i++] = 0;
        if (i == c.size()) break;
        ++c[i];
    }
    return {seen.begin(), seen.end()};
}

int band_index_cap(const DistanceGraph& g, Vertex x, Vertex y) {
    return g.d(x, y) / 2 - 3 * g.delta();
}

int db_window(const DistanceGraph& g, Vertex x, Vertex y) {
    return g.d(x, y) / 6 - g.delta();
}

namespace {

// shared workhorse: average of beta over the lambda-tilde set for one index sextuple
struct DbEvaluator {
    const DistanceGraph& g;
    Vertex x, y;
    std::map<std::array<int, 4>, LambdaMembers> members_cache;

    Rat term(int r1, int r2, int r3, int s1, int s2, int s3) {
        auto key = std::array<int, 4>{r2, r3, s2, s3};
        auto it = members_cache.find(key);
        if (it == members_cache.end())
            it = members_cache.emplace(key, lambda_members(g, x, y, r2, s2, r3, s3)).first;
        const LambdaMembers& mem = it->second;
        BandPair bp1 = make_band_pair(g, x, y, r1, s1);
        std::set<VirtualClass> classes;
        for (auto& c : mem.members)
            classes.insert(normalize_class(bp1, alpha_map(g, mem.bp3, bp1, c)));
        Rat sum = 0;
        for (auto& c : classes) sum += beta_value(g, bp1, c);
        return sum / static_cast<long>(classes.size());
    }
};

}  // namespace

Rat d_b(const DistanceGraph& g, Vertex x, Vertex y) {
    int delta = g.delta();
    int d = g.d(x, y);
    if (d < 6 * delta) return d;
    int D = db_window(g, x, y);
    DbEvaluator ev{g, x, y, {}};
    Rat total = 0;
    for (int r1 = 0; r1 <= D; ++r1)
        for (int r2 = D; r2 <= 2 * D; ++r2)
            for (int r3 = 2 * D; r3 <= 3 * D; ++r3)
                for (int s1 = 0; s1 <= D; ++s1)
                    for (int s2 = D; s2 <= 2 * D; ++s2)
                        for (int s3 = 2 * D; s3 <= 3 * D; ++s3)
                            total += ev.term(r1, r2, r3, s1, s2, s3);
    Rat cells = Rat(D + 1);
    cells = cells * cells * cells;
    cells = cells * cells;  // (D+1)^6
    return total / cells;
}

Rat d_b_sampled(const DistanceGraph& g, Vertex x, Vertex y, const Rat& u1, const Rat& u2,
                const Rat& u3, const Rat& v1, const Rat& v2, const Rat& v3) {
    int delta = g.delta();
    int d = g.d(x, y);
    if (d < 6 * delta) return d;
    long D = db_window(g, x, y);
    auto idx = [&](const Rat& u) { return static_cast<int>(rat_floor_long(u * (D + 1))); };
    DbEvaluator ev{g, x, y, {}};
    return ev.term(idx(u1), static_cast<int>(D) + idx(u2), static_cast<int>(2 * D) + idx(u3),
                   idx(v1), static_cast<int>(D) + idx(v2), static_cast<int>(2 * D) + idx(v3));
}

QuadDefectReport quadrilateral_defect(const DistanceGraph& g, Vertex x, Vertex x2, Vertex y,
                                      Vertex y2) {
    std::vector<std::pair<Vertex, Vertex>> pairs{{x, y}, {x2, y}, {x, y2}, {x2, y2}};
    // one shared axis grid refining every pair's index breakpoints
    std::vector<Rat> axis{Rat(0), Rat(1)};
    for (auto [a, b] : pairs) {
        if (g.d(a, b) < 6 * g.delta()) continue;
        long D = db_window(g, a, b);
        for (long j = 1; j <= D; ++j) axis.push_back(Rat(j, D + 1));
    }
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    size_t m = axis.size() - 1;

    std::vector<DbEvaluator> evs;
    for (auto [a, b] : pairs) evs.push_back(DbEvaluator{g, a, b, {}});
    std::vector<std::map<std::array<int, 6>, Rat>> value_cache(4);

    auto value = [&](size_t pair_i, const std::array<Rat, 6>& t) -> Rat {
        auto [a, b] = pairs[pair_i];
        if (g.d(a, b) < 6 * g.delta()) return g.d(a, b);
        long D = db_window(g, a, b);
        std::array<int, 6> key;
        for (int k = 0; k < 6; ++k) key[k] = static_cast<int>(rat_floor_long(t[k] * (D + 1)));
        auto& cache = value_cache[pair_i];
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Rat v = evs[pair_i].term(key[0], static_cast<int>(D) + key[1],
                                 static_cast<int>(2 * D) + key[2], key[3],
                                 static_cast<int>(D) + key[4], static_cast<int>(2 * D) + key[5]);
        cache.emplace(key, v);
        return v;
    };

    QuadDefectReport rep;
    rep.fraction = 0;
    std::array<size_t, 6> cell{};
    while (true) {
        std::array<Rat, 6> mid;
        Rat vol = 1;
        for (int k = 0; k < 6; ++k) {
            mid[k] = (axis[cell[k]] + axis[cell[k] + 1]) / 2;
            vol *= axis[cell[k] + 1] - axis[cell[k]];
        }
        Rat defect = value(0, mid) - value(1, mid) - value(2, mid) + value(3, mid);
        if (defect != 0) rep.fraction += vol;
        ++rep.cells;
        int k = 0;
        while (k < 6 && cell[k] + 1 == m) cell[k++] = 0;
        if (k == 6) break;
        ++cell[k];
    }
    rep.trend_product = rep.fraction * (1 + g.d(x, y));
    return rep;
}

Measure mu_pair(const DistanceGraph& g, Vertex x, Vertex y) {
    int delta = g.delta();
    int d = g.d(x, y);
    long phi = d / 8;
    VertexSet G3 = g.eps_geod(x, y, 3 * delta);
    long side = phi + 1;
    // mark[z][(k,kt,l,lt)] via monotone cubes
    std::vector<std::vector<char>> mark(g.vertex_count(),
                                        std::vector<char>(side * side * side * side, 0));
    for (Vertex xt : G3) {
        if (g.d(x, xt) > phi) continue;
        for (Vertex yt : G3) {
            if (g.d(y, yt) > phi) continue;
            for (int z = 0; z < g.vertex_count(); ++z) {
                if (g.d(xt, z) + g.d(z, yt) != g.d(xt, yt)) continue;
                long a = g.d(x, xt), b = std::min<long>(g.d(xt, z), phi);
                long c = g.d(y, yt), e = std::min<long>(g.d(z, yt), phi);
                for (long k = a; k <= phi; ++k)
                    for (long kt = 0; kt <= b; ++kt)
                        for (long l = c; l <= phi; ++l)
                            for (long lt = 0; lt <= e; ++lt)
                                mark[z][((k * side + kt) * side + l) * side + lt] = 1;
            }
        }
    }
    Measure out;
    Rat norm = Rat(1, side * side * side * side);
    for (long cube = 0; cube < side * side * side * side; ++cube) {
        VertexSet B;
        for (int z = 0; z < g.vertex_count(); ++z)
            if (mark[z][cube]) B.push_back(z);
        if (B.empty()) throw std::runtime_error("empty averaging set in the pair measure");
        Rat w = norm / static_cast<long>(B.size());
        for (int z : B) out[z] += w;
    }
    return out;
}

Rat d_prime(const DistanceGraph& g, Vertex x, Vertex y) {
    Measure m = mu_pair(g, x, y);
    Rat out = 0;
    for (auto& [z, q] : m) out += q * (g.d(x, z) + g.d(z, y));
    return out;
}

Rat d_second(const DistanceGraph& g, Vertex x, Vertex y) {
    if (x == y) return 0;
    return d_prime(g, x, y) + 7 * g.delta();
}

Rat rho_b(const DistanceGraph& g, Vertex x, const VertexSet& S) {
    if (S.empty()) return 0;
    Rat sum = 0;
    for (Vertex a : S) sum += d_b(g, x, a);
    return sum / static_cast<long>(S.size());
}

std::vector<std::vector<Rat>> theta_b_weights(const RipsComplex& rips, Vertex x) {
    const DistanceGraph& g = rips.graph();
    std::map<Vertex, Rat> db_cache;
    auto db_of = [&](Vertex a) {
        auto it = db_cache.find(a);
        if (it == db_cache.end()) it = db_cache.emplace(a, d_b(g, x, a)).first;
        return it->second;
    };
    std::vector<std::vector<Rat>> w(rips.p_max() + 1);
    for (int p = 0; p <= rips.p_max(); ++p) {
        w[p].resize(rips.dim(p));
        for (int i = 0; i < rips.dim(p); ++i) {
            if (p == 0) {
                w[p][i] = 0;
                continue;
            }
            Rat sum = 0;
            for (Vertex a : rips.simplex(p, i)) sum += db_of(a);
            w[p][i] = sum / p;
        }
    }
    return w;
}

}  // namespace hyperb
