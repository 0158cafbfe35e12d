#include "hyperb/graph.hpp"

#include <algorithm>
#include <deque>
#include <random>

namespace hyperb {

DistanceGraph DistanceGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 0) throw std::invalid_argument("graph needs at least one vertex");
    DistanceGraph g;
    g.n_ = n;
    g.adj_.assign(n, {});
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) continue;
        g.adj_[a].push_back(b);
        g.adj_[b].push_back(a);
    }
    for (auto& l : g.adj_) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    int maxdeg = 0;
    for (auto& l : g.adj_) maxdeg = std::max(maxdeg, static_cast<int>(l.size()));
    g.K_ = maxdeg + 1;

    // breadth-first closure of the edge relation
    g.dist_.assign(static_cast<size_t>(n) * n, -1);
    for (int s = 0; s < n; ++s) {
        int* row = g.dist_.data() + static_cast<size_t>(s) * n;
        std::deque<int> q{s};
        row[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w : g.adj_[v])
                if (row[w] < 0) {
                    row[w] = row[v] + 1;
                    q.push_back(w);
                }
        }
        for (int t = 0; t < n; ++t)
            if (row[t] < 0)
                throw std::runtime_error("graph is disconnected: no path from vertex " +
                                         std::to_string(s) + " to vertex " + std::to_string(t));
    }
    return g;
}

bool DistanceGraph::adjacent(Vertex a, Vertex b) const {
    return a != b && d(a, b) == 1;
}

int DistanceGraph::diameter() const {
    return *std::max_element(dist_.begin(), dist_.end());
}

int DistanceGraph::delta() const {
    if (!delta_) {
        if (n_ > delta_scan_cap_)
            throw std::runtime_error(
                "hyperbolicity constant unknown and vertex count " + std::to_string(n_) +
                " exceeds the exhaustive-scan cap " + std::to_string(delta_scan_cap_) +
                "; supply the constant explicitly");
        delta_ = hyperbolicity_delta_scan(*this);
    }
    return *delta_;
}

VertexSet DistanceGraph::ball(Vertex x, int r) const {
    VertexSet out;
    for (int v = 0; v < n_; ++v)
        if (d(x, v) <= r) out.push_back(v);
    return out;
}

VertexSet DistanceGraph::sphere(Vertex x, int r) const {
    VertexSet out;
    for (int v = 0; v < n_; ++v)
        if (d(x, v) == r) out.push_back(v);
    return out;
}

VertexSet DistanceGraph::eps_geod(Vertex x, Vertex y, int eps) const {
    VertexSet out;
    for (int v = 0; v < n_; ++v)
        if (d(x, v) + d(v, y) <= d(x, y) + eps) out.push_back(v);
    return out;
}

int DistanceGraph::dist_to_set(Vertex x, const VertexSet& A) const {
    int best = -1;
    for (int a : A) {
        int dd = d(x, a);
        if (best < 0 || dd < best) best = dd;
    }
    if (best < 0) throw std::invalid_argument("distance to empty set");
    return best;
}

int DistanceGraph::dmax_to_set(Vertex x, const VertexSet& A) const {
    int best = -1;
    for (int a : A) best = std::max(best, d(x, a));
    if (best < 0) throw std::invalid_argument("distance to empty set");
    return best;
}

int DistanceGraph::set_diameter(const VertexSet& A) const {
    int best = 0;
    for (size_t i = 0; i < A.size(); ++i)
        for (size_t j = i + 1; j < A.size(); ++j) best = std::max(best, d(A[i], A[j]));
    return best;
}

bool DistanceGraph::is_tree() const { return edge_count() == n_ - 1; }

long DistanceGraph::edge_count() const {
    long c = 0;
    for (auto& l : adj_) c += static_cast<long>(l.size());
    return c / 2;
}

namespace {
inline int quad_defect(const DistanceGraph& g, int a, int b, int c, int t) {
    int s1 = g.d(a, b) + g.d(c, t);
    int s2 = g.d(a, c) + g.d(b, t);
    int s3 = g.d(a, t) + g.d(b, c);
    int hi = std::max({s1, s2, s3});
    int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
    return hi - mid;  // largest sum minus second largest
}
}  // namespace

int hyperbolicity_delta_scan(const DistanceGraph& g) {
    int n = g.vertex_count();
    int best = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int t = c + 1; t < n; ++t) best = std::max(best, quad_defect(g, a, b, c, t));
    return best;
}

void verify_delta_sampled(const DistanceGraph& g, int delta, int samples, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
    for (int i = 0; i < samples; ++i) {
        int a = pick(rng), b = pick(rng), c = pick(rng), t = pick(rng);
        if (quad_defect(g, a, b, c, t) > delta)
            throw std::runtime_error("claimed hyperbolicity constant violated on sampled quadruple");
    }
}

DistanceGraph regraph(const DistanceGraph& g, int delta) {
    std::vector<std::pair<int, int>> edges;
    int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (g.d(a, b) <= delta + 1) edges.emplace_back(a, b);
    return DistanceGraph::from_edges(n, edges);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const VertexSet& a, Vertex v) {
    return std::binary_search(a.begin(), a.end(), v);
}

bool subset_of(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace hyperb
