#pragma once

#include "fiberplan/graph.hpp"

namespace fiberplan::net {

inline constexpr std::size_t kExactPcstMaxVertices = 16;

// Minimum spanning tree grown from `root`. Equal weights are resolved by
// (weight, min endpoint, max endpoint). Throws DisconnectedGraph.
NetworkDesign prim_mst(const WeightedGraph& graph, VertexId root);

// Rooted Goemans-Williamson moat growing followed by strong pruning. The
// objective (tree length + prizes of unconnected terminals) is within a
// factor 2 of optimal.
NetworkDesign pcst_gw(const PrizedGraph& instance);

// Exhaustive optimum over connected vertex subsets containing the root.
// Throws InstanceTooLarge above kExactPcstMaxVertices vertices.
NetworkDesign pcst_exact(const PrizedGraph& instance);

}  // namespace fiberplan::net
