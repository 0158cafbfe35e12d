#include "hyperb/geometry_suite.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace hyperb {

namespace {

std::string tuple_str(const std::vector<long>& t) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
}

// iterate the product space exhaustively when small, sampled otherwise
void run_space(const std::vector<long>& dims, long threshold, long budget, unsigned long seed,
               LemmaReport& rep, const std::function<std::optional<bool>(const std::vector<long>&)>& fn) {
    double logsize = 0;
    for (long d : dims) logsize += std::log10(static_cast<double>(std::max(1L, d)));
    bool exhaustive = logsize <= std::log10(static_cast<double>(threshold));
    rep.exhaustive = exhaustive;
    std::vector<long> t(dims.size(), 0);
    auto visit = [&](const std::vector<long>& tup) {
        auto r = fn(tup);
        if (!r) return;
        ++rep.instances;
        if (!*r) {
            ++rep.violations;
            if (rep.first_witness.empty()) rep.first_witness = tuple_str(tup);
            if (rep.witnesses.size() < 5) rep.witnesses.push_back(tuple_str(tup));
        }
    };
    if (exhaustive) {
        if (dims.empty()) return;
        while (true) {
            visit(t);
            size_t i = 0;
            while (i < dims.size() && t[i] + 1 == dims[i]) t[i++] = 0;
            if (i == dims.size()) break;
            ++t[i];
        }
    } else {
        std::mt19937_64 rng(seed);
        for (long k = 0; k < budget; ++k) {
            for (size_t i = 0; i < dims.size(); ++i)
                t[i] = static_cast<long>(rng() % static_cast<unsigned long>(dims[i]));
            visit(t);
        }
    }
}

inline long excess(const DistanceGraph& g, Vertex z, Vertex x, Vertex y) {
    return g.d(x, z) + g.d(z, y) - g.d(x, y);
}

}  // namespace

SuiteReport geometry_lemma_suite(const DistanceGraph& g, long sample_budget, unsigned long seed,
                                 long exhaustive_threshold) {
    SuiteReport out;
    const long n = g.vertex_count();
    const long delta = g.delta();
    const long diam = g.diameter();

    auto add = [&](const std::string& id, std::vector<long> dims,
                   std::function<std::optional<bool>(const std::vector<long>&)> fn) {
        LemmaReport rep;
        rep.id = id;
        run_space(dims, exhaustive_threshold, sample_budget, seed + std::hash<std::string>{}(id),
                  rep, fn);
        out.lemmas.push_back(std::move(rep));
    };

    // pure triangle-inequality transports
    add("triangle-transport", {n, n, n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], x2 = t[1], y = t[2], y2 = t[3], z = t[4], z2 = t[5];
        long a = excess(g, z, x, y);
        long bound = a + 2 * (g.d(x, x2) + g.d(y, y2) + g.d(z, z2));
        return excess(g, z2, x2, y2) <= bound;
    });

    add("two-step-geodesic", {n, n, n, n}, [&](const std::vector<long>& t) -> std::optional<bool> {
        long x = t[0], a = t[1], b = t[2], c = t[3];
        long al = excess(g, b, x, a), be = excess(g, c, x, b);
        bool ok = excess(g, c, x, a) <= al + be && excess(g, b, a, c) <= al + be;
        if (g.d(b, c) >= al + be) ok = ok && g.d(a, c) >= g.d(a, b);
        return ok;
    });

    add("four-point-excess", {n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], a = t[1], b = t[2], c = t[3];
        long be = excess(g, b, a, c);
        return g.d(x, b) <=
               std::max(g.d(x, a) - g.d(a, b), g.d(x, c) - g.d(c, b)) + be + delta;
    });

    add("midpoint-thinning", {n, n, n, n}, [&](const std::vector<long>& t) -> std::optional<bool> {
        long x = t[0], z = t[1], y = t[2], y2 = t[3];
        if (excess(g, y2, y, z) != 0) return std::nullopt;
        long eps = excess(g, y, x, z);
        if (2 * g.d(y, y2) < eps) return std::nullopt;
        return excess(g, y2, x, z) <= delta;
    });

    add("basepoint-shift-thinning", {n, n, n, n, n},
        [&](const std::vector<long>& t) -> std::optional<bool> {
            long x = t[0], x2 = t[1], z = t[2], y = t[3], y2 = t[4];
            if (excess(g, y2, y, z) != 0) return std::nullopt;
            long eps = excess(g, y, x, z);
            if (2 * g.d(y, y2) < eps + 2 * g.d(x, x2)) return std::nullopt;
            return excess(g, y2, x2, z) <= delta;
        });

    // cardinality of the fattened geodesics, with the recorded ratio
    {
        LemmaReport rep;
        rep.id = "fattened-geodesic-cardinality";
        rep.exhaustive = true;
        double max_ratio = 0;
        long rmax = std::min<long>(2 * delta + 2, diam);
        for (long x = 0; x < n; ++x)
            for (long y = 0; y < n; ++y)
                for (long r = 0; r <= rmax; ++r) {
                    ++rep.instances;
                    long level_cap = 1;
                    for (long i = 0, pw = 1; i < r + delta; ++i) {
                        pw *= g.K();
                        level_cap += pw;
                    }
                    std::vector<long> level_count(g.d(x, y) + r + 1, 0);
                    long total = 0;
                    for (long z = 0; z < n; ++z)
                        if (excess(g, z, x, y) <= r) {
                            ++level_count[g.d(x, z)];
                            ++total;
                        }
                    bool ok = true;
                    for (long c : level_count) ok = ok && c <= level_cap;
                    if (!ok) {
                        ++rep.violations;
                        if (rep.first_witness.empty())
                            rep.first_witness = tuple_str({x, y, r});
                        if (rep.witnesses.size() < 5)
                            rep.witnesses.push_back(tuple_str({x, y, r}));
                    }
                    max_ratio = std::max(max_ratio,
                                         static_cast<double>(total) / (g.d(x, y) + 1.0));
                }
        rep.constants["max_count_over_dist_plus_one"] = max_ratio;
        out.lemmas.push_back(std::move(rep));
    }

    add("reverse-two-step", {n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], a = t[1], b = t[2], c = t[3];
        long al = excess(g, b, a, x), be = excess(g, c, b, x);
        long bound = std::max(al + 2 * be - 2 * g.d(b, c), be) + delta;
        return excess(g, c, a, x) <= bound;
    });

    add("parallel-geodesics-distance", {n, n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], a = t[1], b = t[2], y = t[3], z = t[4];
        long al = excess(g, y, x, a), be = excess(g, z, x, b);
        return g.d(y, z) <=
               g.d(a, b) + std::labs((g.d(a, y) - g.d(b, z))) + al + be + 2 * delta;
    });

    add("ball-convexity", {n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], y = t[1], z = t[2], w = t[3];
        long R = std::max(g.d(x, y), g.d(x, z));
        long al = excess(g, w, y, z);
        return g.d(x, w) <= R + al + delta;
    });

    add("between-near-geodesics", {n, n, n, n, n},
        [&](const std::vector<long>& t) -> std::optional<bool> {
            long x = t[0], y = t[1], a = t[2], c = t[3], b = t[4];
            if (excess(g, b, a, c) != 0) return std::nullopt;
            long al = excess(g, a, x, y), ga = excess(g, c, x, y);
            if (2 * g.d(a, b) < al || 2 * g.d(b, c) < ga) return std::nullopt;
            return excess(g, b, x, y) <= 3 * delta;
        });

    add("geodesic-transport-excess", {n, n, n, n}, [&](const std::vector<long>& t) {
        long x = t[0], y = t[1], a = t[2], b = t[3];
        long al = excess(g, a, x, y), be = excess(g, b, x, y);
        long rho = g.d(x, b) - g.d(x, a);
        return excess(g, b, x, a) <= std::max(al + 2 * rho, be) + delta;
    });

    add("projection-to-ball", {n, n, n}, [&](const std::vector<long>& t) -> std::optional<bool> {
        long x = t[0], y = t[1], z = t[2];
        long k = g.d(x, z);
        long best = diam + 1;
        for (long u = 0; u < n; ++u)
            if (g.d(x, u) <= k) best = std::min(best, static_cast<long>(g.d(u, y)));
        bool ok = true;
        for (long u = 0; u < n; ++u)
            if (g.d(x, u) <= k && g.d(u, y) == best) ok = ok && excess(g, u, z, y) <= delta;
        return ok;
    });

    add("descend-outside-ball", {n, n, n, n}, [&](const std::vector<long>& t) -> std::optional<bool> {
        long x = t[0], z = t[1], y = t[2], y2 = t[3];
        long k = g.d(x, z);
        long mu = excess(g, y2, z, y);
        long nu = g.d(z, y) - g.d(z, y2);
        if (nu < 0) return std::nullopt;
        if (2 * g.d(x, y2) <= 2 * k + mu + delta) return std::nullopt;
        return g.d(x, y2) <= g.d(x, y) - nu + delta && excess(g, y2, x, y) <= mu + delta;
    });

    // chains that step toward a moving base ball
    {
        LemmaReport rep;
        rep.id = "descending-chains";
        rep.exhaustive = false;
        std::mt19937_64 rng(seed ^ 0x5eedULL);
        long mu1 = 4 * delta, nu1 = std::max<long>(mu1 + (3 * delta) / 2 + 1, 1);
        long mu2 = 6 * delta + 2, nu2 = mu2 + (3 * delta) / 2 + 1;
        for (long it = 0; it < sample_budget / 10 + 50; ++it) {
            long x = static_cast<long>(rng() % n);
            long k = static_cast<long>(rng() % (diam + 1));
            long y0 = static_cast<long>(rng() % n);
            std::vector<long> ys{y0};
            for (int step = 0; step < 3; ++step) {
                long cur = ys.back();
                std::vector<std::pair<long, long>> options;  // (y_next, which)
                for (long z = 0; z < n; ++z) {
                    if (g.d(x, z) > k) continue;
                    for (long y2 = 0; y2 < n; ++y2) {
                        long thresh = 2 * k + std::max(mu1, mu2) + delta;
                        if (2 * g.d(x, y2) <= thresh) continue;
                        if (excess(g, y2, z, cur) <= mu1 && g.d(z, y2) <= g.d(z, cur) - nu1)
                            options.emplace_back(y2, 1);
                        else if (excess(g, y2, z, cur) <= mu2 && g.d(z, y2) <= g.d(z, cur) - nu2)
                            options.emplace_back(y2, 2);
                    }
                }
                if (options.empty()) break;
                ys.push_back(options[rng() % options.size()].first);
            }
            if (ys.size() < 2) continue;
            ++rep.instances;
            bool ok = true;
            for (size_t i = 0; i + 1 < ys.size(); ++i)
                ok = ok && g.d(x, ys[i + 1]) < g.d(x, ys[i]);
            long h = static_cast<long>(std::set<long>(ys.begin(), ys.end()).size());
            ok = ok && excess(g, ys.back(), x, ys.front()) <= std::max(mu1, mu2) + 2 * delta;
            ok = ok &&
                 g.d(x, ys.back()) <= g.d(x, ys.front()) - (h - 1) * (std::min(nu1, nu2) - delta);
            if (!ok) {
                ++rep.violations;
                if (rep.first_witness.empty()) rep.first_witness = tuple_str(ys);
                if (rep.witnesses.size() < 5) rep.witnesses.push_back(tuple_str(ys));
            }
        }
        out.lemmas.push_back(std::move(rep));
    }

    // aligned balls along a corridor: middle ball meets every geodesic
    add("corridor-chain-distances", {n, n, n, n, n},
        [&](const std::vector<long>& t) -> std::optional<bool> {
            long c = t[0], d = t[1];
            long w[3] = {t[2], t[3], t[4]};
            long alpha[3], rho[3];
            for (int i = 0; i < 3; ++i) {
                alpha[i] = excess(g, w[i], c, d);
                rho[i] = 4 * delta + (alpha[i] + 1) / 2 + 1;
            }
            // ordering and the separation hypotheses
            if (!(g.d(c, w[0]) <= g.d(c, w[1]) && g.d(c, w[1]) <= g.d(c, w[2])))
                return std::nullopt;
            if (!(g.d(c, w[2]) - g.d(c, w[1]) >= 2 * rho[2] + (alpha[2] + 1) / 2 &&
                  g.d(c, w[1]) - g.d(c, w[0]) >= 2 * rho[0] + (alpha[0] + 1) / 2 + (alpha[1] + 1) / 2))
                return std::nullopt;
            for (long p = 0; p < n; ++p) {
                if (g.d(p, w[0]) > rho[0]) continue;
                for (long q = 0; q < n; ++q) {
                    if (g.d(q, w[2]) > rho[2]) continue;
                    bool hit = false;
                    for (long v = 0; v < n && !hit; ++v)
                        if (g.d(v, w[1]) <= rho[1] && excess(g, v, p, q) == 0) hit = true;
                    if (!hit) return false;
                }
            }
            return true;
        });

    add("ball-projection-corridor", {n, n, n, n},
        [&](const std::vector<long>& t) -> std::optional<bool> {
            long x = t[0], b = t[1], xt = t[3];
            long l = t[2] % (diam + 1);
            if (g.d(x, xt) > l) return std::nullopt;
            long best = diam + 1;
            for (long u = 0; u < n; ++u)
                if (g.d(x, u) <= l) best = std::min(best, static_cast<long>(g.d(u, b)));
            bool ok = true;
            for (long u = 0; u < n && ok; ++u) {
                if (g.d(x, u) > l || g.d(u, b) != best) continue;
                for (long z = 0; z < n && ok; ++z) {
                    long alpha = excess(g, z, b, u);
                    if (alpha > 2 * delta + 2) continue;  // keep the sweep tame
                    bool hit = false;
                    for (long v = 0; v < n && !hit; ++v)
                        if (g.d(v, u) <= alpha + 4 * delta && g.d(x, v) <= l &&
                            excess(g, v, xt, z) == 0)
                            hit = true;
                    ok = hit;
                }
            }
            return ok;
        });

    return out;
}

}  // namespace hyperb
