#pragma once

#include <string>

#include "hyperb/graph.hpp"

namespace hyperb {

// Rooted tree: the root has q+1 children, every other internal vertex q,
// so no vertex has more than q+1 neighbors.
DistanceGraph make_tree(int q, int depth);

DistanceGraph make_cycle(int n);

// Cayley ball of the free group of the given rank (a tree).
DistanceGraph make_free_group_ball(int rank, int radius);

// Cayley ball of Z/3 * Z with generators e1 (order 3) and e2.
DistanceGraph make_free_product_ball(int radius);

DistanceGraph load_graph_json(const std::string& path);
void save_graph_json(const DistanceGraph& g, const std::string& path);

// "tree:q,depth"  "cycle:n"  "free_group_ball:rank,radius"
// "free_product_ball:radius"  "file:path"
DistanceGraph make_graph(const std::string& spec);

}  // namespace hyperb
