#include "hyperb/rips.hpp"

#include <algorithm>

namespace hyperb {

RipsComplex::RipsComplex(const DistanceGraph& g, int N, int p_cap) : g_(&g), N_(N) {
    if (N < 1) throw std::invalid_argument("Rips parameter N must be >= 1");
    int n = g.vertex_count();
    simplices_.assign(p_cap + 2, {});
    simplices_[0].push_back({});  // e_empty
    for (int v = 0; v < n; ++v) simplices_[1].push_back({v});

    // grow cliques of the distance-<=N relation in lexicographic order
    for (int p = 1; p <= p_cap; ++p) {
        if (simplices_[p].empty()) break;
        for (const auto& s : simplices_[p]) {
            for (int v = s.back() + 1; v < n; ++v) {
                bool ok = true;
                for (int u : s)
                    if (g.d(u, v) > N) { ok = false; break; }
                if (ok) {
                    Simplex t = s;
                    t.push_back(v);
                    if (p + 1 > p_cap)
                        throw std::runtime_error(
                            "Rips complex exceeds the degree cap " + std::to_string(p_cap) +
                            "; use a smaller N or raise the cap");
                    simplices_[p + 1].push_back(std::move(t));
                }
            }
        }
    }
    p_max_ = 0;
    for (int p = 0; p < static_cast<int>(simplices_.size()); ++p)
        if (!simplices_[p].empty()) p_max_ = p;
    simplices_.resize(p_max_ + 1);
    index_.resize(p_max_ + 1);
    for (int p = 0; p <= p_max_; ++p)
        for (int i = 0; i < static_cast<int>(simplices_[p].size()); ++i)
            index_[p][simplices_[p][i]] = i;
}

int RipsComplex::dim(int p) const {
    if (p < 0 || p > p_max_) return 0;
    return static_cast<int>(simplices_[p].size());
}

int RipsComplex::index_of(int p, const Simplex& s) const {
    if (p < 0 || p > p_max_) return -1;
    auto it = index_[p].find(s);
    return it == index_[p].end() ? -1 : it->second;
}

bool RipsComplex::is_simplex(const Simplex& s) const {
    return index_of(static_cast<int>(s.size()), s) >= 0;
}

void Chain::add(int idx, const Rat& q) {
    if (q == 0) return;
    auto [it, fresh] = coef.emplace(idx, q);
    if (!fresh) {
        it->second += q;
        if (it->second == 0) coef.erase(it);
    }
}

Chain& Chain::operator+=(const Chain& o) {
    for (auto& [i, q] : o.coef) add(i, q);
    return *this;
}

Chain& Chain::operator-=(const Chain& o) {
    for (auto& [i, q] : o.coef) add(i, -q);
    return *this;
}

Chain& Chain::operator*=(const Rat& q) {
    if (q == 0) { coef.clear(); return *this; }
    for (auto& [i, c] : coef) c *= q;
    return *this;
}

Chain chain_basis(int p, int idx) {
    Chain c;
    c.p = p;
    c.coef[idx] = 1;
    return c;
}

Chain boundary(const RipsComplex& rips, const Chain& f) {
    Chain out;
    out.p = f.p - 1;
    if (f.p < 1) throw std::invalid_argument("boundary needs degree >= 1");
    for (auto& [idx, q] : f.coef) {
        const Simplex& s = rips.simplex(f.p, idx);
        if (f.p == 1) {
            out.add(0, q);
            continue;
        }
        Simplex face(s.size() - 1);
        for (size_t i = 0; i < s.size(); ++i) {
            size_t k = 0;
            for (size_t j = 0; j < s.size(); ++j)
                if (j != i) face[k++] = s[j];
            int fi = rips.index_of(f.p - 1, face);
            if (fi < 0) throw std::logic_error("face of a simplex missing from the complex");
            out.add(fi, (i % 2 == 0) ? q : -q);
        }
    }
    return out;
}

VertexSet supp(const RipsComplex& rips, const Chain& f) {
    VertexSet out;
    for (auto& [idx, q] : f.coef) {
        const Simplex& s = rips.simplex(f.p, idx);
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rat l1_norm(const Chain& f) {
    Rat s = 0;
    for (auto& [i, q] : f.coef) s += q < 0 ? Rat(-q) : q;
    return s;
}

Rat coefficient_on_tuple(const RipsComplex& rips, const Chain& f,
                         const std::vector<Vertex>& tuple) {
    Simplex s = tuple;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return 0;
    int idx = rips.index_of(static_cast<int>(s.size()), s);
    if (idx < 0) return 0;
    auto it = f.coef.find(idx);
    if (it == f.coef.end()) return 0;
    // sign of the permutation sorting the tuple
    int sign = 1;
    std::vector<Vertex> t = tuple;
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] > t[j]) { std::swap(t[i], t[j]); sign = -sign; }
    return sign > 0 ? it->second : Rat(-it->second);
}

Chain wedge_vertex(const RipsComplex& rips, Vertex v, int p, int idx) {
    const Simplex& s = rips.simplex(p, idx);
    Chain out;
    out.p = p + 1;
    if (std::binary_search(s.begin(), s.end(), v)) return out;  // e_v ^ .. ^ e_v = 0
    Simplex t;
    t.reserve(s.size() + 1);
    int before = 0;
    for (int u : s)
        if (u < v) ++before;
    t.insert(t.end(), s.begin(), s.begin() + before);
    t.push_back(v);
    t.insert(t.end(), s.begin() + before, s.end());
    int ti = rips.index_of(p + 1, t);
    if (ti < 0) throw std::logic_error("wedge target leaves the complex");
    out.add(ti, (before % 2 == 0) ? Rat(1) : Rat(-1));
    return out;
}

Rat zeta(const DistanceGraph& g, Vertex x, const VertexSet& S, int N, int p_max) {
    if (S.empty()) return 0;
    VertexSet us;
    for (int z = 0; z < g.vertex_count(); ++z) {
        bool in = true;
        for (int a : S)
            if (g.d(a, z) > N) { in = false; break; }
        if (in) us.push_back(z);
    }
    if (us.empty()) throw std::runtime_error("zeta: common N-ball intersection is empty");
    int dU = g.dist_to_set(x, us);
    int delta = g.delta();
    Rat sum = 0;
    for (int a : S) sum += std::max(dU, g.d(x, a) - delta);
    sum += Rat(p_max - static_cast<int>(S.size())) * dU;
    return sum / p_max;
}

int sparse_rank(int rows, std::vector<std::map<int, Rat>> cols) {
    (void)rows;
    int rank = 0;
    std::map<int, int> pivot_of_row;  // row -> column holding its pivot
    std::vector<bool> done(cols.size(), false);
    for (size_t j = 0; j < cols.size(); ++j) {
        auto& col = cols[j];
        // eliminate with existing pivots
        for (auto it = col.begin(); it != col.end();) {
            auto pv = pivot_of_row.find(it->first);
            if (pv == pivot_of_row.end()) { ++it; continue; }
            int pj = pv->second;
            Rat factor = it->second / cols[pj].at(it->first);
            int row = it->first;
            for (auto& [r, v] : cols[pj]) {
                if (r == row) continue;
                auto [jt, fresh] = col.emplace(r, 0);
                jt->second -= factor * v;
                if (jt->second == 0) col.erase(jt);
            }
            it = col.erase(col.find(row));
        }
        if (!col.empty()) {
            ++rank;
            pivot_of_row[col.begin()->first] = static_cast<int>(j);
        }
    }
    return rank;
}

ExactnessReport complex_exactness(const RipsComplex& rips) {
    ExactnessReport rep;
    int pm = rips.p_max();
    rep.dims.resize(pm + 1);
    for (int p = 0; p <= pm; ++p) rep.dims[p] = rips.dim(p);
    rep.ranks.assign(pm + 1, 0);
    for (int p = 1; p <= pm; ++p) {
        std::vector<std::map<int, Rat>> cols(rips.dim(p));
        for (int i = 0; i < rips.dim(p); ++i) {
            Chain b = boundary(rips, chain_basis(p, i));
            cols[i] = std::move(b.coef);
        }
        rep.ranks[p] = sparse_rank(rips.dim(p - 1), std::move(cols));
    }
    rep.exact_at.assign(pm + 1, true);
    // at degree 0 the boundary from degree 1 must hit all of the ground field
    rep.exact_at[0] = (pm >= 1) ? (rep.ranks[1] == 1) : (rips.dim(0) == 0);
    for (int p = 1; p <= pm; ++p) {
        int ker = rep.dims[p] - rep.ranks[p];
        int im = (p + 1 <= pm) ? rep.ranks[p + 1] : 0;
        rep.exact_at[p] = (ker == im);
    }
    rep.exact = true;
    for (int p = 0; p <= pm; ++p) rep.exact = rep.exact && rep.exact_at[p];
    return rep;
}

}  // namespace hyperb
