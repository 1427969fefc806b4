#include "fiberplan/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fiberplan/error.hpp"

namespace fiberplan::net {

VertexId WeightedGraph::add_vertex(VertexPayload payload) {
  payloads_.push_back(std::move(payload));
  adjacency_.emplace_back();
  return payloads_.size() - 1;
}

void WeightedGraph::add_edge(VertexId a, VertexId b, double weight_km) {
  if (a >= vertex_count() || b >= vertex_count()) {
    throw Error(ErrorCategory::Solver, "netdesign", "InvalidGraph", "edge endpoint out of range");
  }
  if (a == b) throw Error(ErrorCategory::Solver, "netdesign", "InvalidGraph", "self-loop");
  if (!(weight_km > 0.0) || !std::isfinite(weight_km)) {
    throw Error(ErrorCategory::Solver, "netdesign", "InvalidGraph", "edge weights must be positive");
  }
  const auto [u, v] = std::minmax(a, b);
  auto [it, inserted] = edge_index_.try_emplace({u, v}, edges_.size());
  if (!inserted) {
    edges_[it->second].weight_km = std::min(edges_[it->second].weight_km, weight_km);
    return;
  }
  edges_.push_back({u, v, weight_km});
  adjacency_[u].push_back(it->second);
  adjacency_[v].push_back(it->second);
}

std::optional<std::size_t> WeightedGraph::find_edge(VertexId a, VertexId b) const {
  const auto [u, v] = std::minmax(a, b);
  auto it = edge_index_.find({u, v});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

void PrizedGraph::validate() const {
  if (root >= graph.vertex_count()) {
    throw Error(ErrorCategory::Solver, "netdesign", "RootMissing", "root vertex not in graph");
  }
  if (prize.size() != graph.vertex_count()) {
    throw Error(ErrorCategory::Solver, "netdesign", "InvalidPrize", "prize vector size differs from vertex count");
  }
  for (VertexId v = 0; v < prize.size(); ++v) {
    if (!(prize[v] >= 0.0) || !std::isfinite(prize[v])) {
      throw Error(ErrorCategory::Solver, "netdesign", "InvalidPrize", "prizes must be finite and non-negative");
    }
    if (!graph.is_terminal(v) && prize[v] != 0.0) {
      throw Error(ErrorCategory::Solver, "netdesign", "InvalidPrize", "Steiner vertices must carry prize 0");
    }
  }
}

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Mst: return "MST";
    case Algorithm::PcstGw: return "PCST_GW";
    case Algorithm::PcstExact: return "PCST_EXACT";
  }
  return "?";
}

bool is_tree(const NetworkDesign& design) {
  const auto& verts = design.connected_vertices;
  if (verts.empty()) return design.edges.empty();
  if (design.edges.size() + 1 != verts.size()) return false;
  auto pos = [&](VertexId v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - verts.begin());
  };
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : design.edges) {
    auto a = pos(e.u), b = pos(e.v);
    if (!a || !b) return false;
    auto ra = find(*a), rb = find(*b);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;  // n-1 edges, acyclic => connected
}

}  // namespace fiberplan::net
