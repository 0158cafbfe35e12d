#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperb {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted, unique

// Finite connected graph with its geodesic distance matrix.
// delta is the four-point hyperbolicity constant; it is computed by an
// exhaustive quadruple scan when the vertex count is at most delta_scan_cap,
// otherwise it must be supplied (generators do this when the value is known).
class DistanceGraph {
public:
    static DistanceGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return n_; }
    const std::vector<Vertex>& neighbors(Vertex a) const { return adj_[a]; }
    bool adjacent(Vertex a, Vertex b) const;

    int d(Vertex a, Vertex b) const { return dist_[static_cast<size_t>(a) * n_ + b]; }
    int K() const { return K_; }  // max vertex degree + 1
    int diameter() const;

    int delta() const;
    bool has_known_delta() const { return delta_.has_value(); }
    void set_known_delta(int d) const { delta_ = d; }
    void set_delta_scan_cap(int cap) { delta_scan_cap_ = cap; }

    VertexSet ball(Vertex x, int r) const;
    VertexSet sphere(Vertex x, int r) const;
    VertexSet eps_geod(Vertex x, Vertex y, int eps) const;
    bool in_eps_geod(Vertex z, Vertex x, Vertex y, int eps) const {
        return d(x, z) + d(z, y) <= d(x, y) + eps;
    }

    int dist_to_set(Vertex x, const VertexSet& A) const;
    int dmax_to_set(Vertex x, const VertexSet& A) const;
    int set_diameter(const VertexSet& A) const;

    bool is_tree() const;
    long edge_count() const;

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<int> dist_;
    int K_ = 1;
    mutable std::optional<int> delta_;
    int delta_scan_cap_ = 230;
};

// Minimal delta such that d(x,z)+d(y,t) <= max(d(x,y)+d(z,t), d(x,t)+d(y,z)) + delta
// holds for every quadruple. O(n^4) scan.
int hyperbolicity_delta_scan(const DistanceGraph& g);

// Spot-check a claimed delta on `samples` random quadruples; throws on violation.
void verify_delta_sampled(const DistanceGraph& g, int delta, int samples, unsigned long seed);

// New graph structure: a~b iff 0 < d(a,b) <= delta+1 (re-metrization d').
DistanceGraph regraph(const DistanceGraph& g, int delta);

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersect(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, Vertex v);
bool subset_of(const VertexSet& a, const VertexSet& b);

}  // namespace hyperb
