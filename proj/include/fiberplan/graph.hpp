#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fiberplan/geodata.hpp"

namespace fiberplan::net {

using VertexId = std::size_t;

struct Edge {
  VertexId u = 0;  // u < v
  VertexId v = 0;
  double weight_km = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

enum class VertexKind { Terminal, Steiner };

struct VertexPayload {
  VertexKind kind = VertexKind::Terminal;
  std::optional<std::string> settlement_id;
  std::optional<geo::GeoPoint> location;
};

// Undirected simple graph with positive edge weights.
class WeightedGraph {
 public:
  VertexId add_vertex(VertexPayload payload = {});

  // Stores the edge as (min, max). Adding an existing pair keeps the lighter
  // weight. Self-loops and non-positive weights raise InvalidGraph.
  void add_edge(VertexId a, VertexId b, double weight_km);

  std::size_t vertex_count() const noexcept { return payloads_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }
  // Indices into edges() incident to v, in insertion order.
  std::span<const std::size_t> incident(VertexId v) const { return adjacency_[v]; }

  const VertexPayload& payload(VertexId v) const { return payloads_[v]; }
  VertexPayload& payload(VertexId v) { return payloads_[v]; }
  bool is_terminal(VertexId v) const { return payloads_[v].kind == VertexKind::Terminal; }

  std::optional<std::size_t> find_edge(VertexId a, VertexId b) const;

 private:
  std::vector<VertexPayload> payloads_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_index_;
};

struct PrizedGraph {
  WeightedGraph graph;
  std::vector<double> prize;  // one per vertex, zero on Steiner vertices
  VertexId root = 0;

  // Throws RootMissing / InvalidPrize.
  void validate() const;
};

enum class Algorithm { Mst, PcstGw, PcstExact };

std::string to_string(Algorithm algorithm);

struct NetworkDesign {
  Algorithm algorithm = Algorithm::Mst;
  std::vector<Edge> edges;                    // sorted by (u, v)
  std::vector<VertexId> connected_vertices;   // sorted
  std::vector<VertexId> excluded_terminals;   // sorted
  double total_length_km = 0.0;
  double total_penalty = 0.0;
  std::size_t terminal_node_count = 0;

  double objective() const noexcept { return total_length_km + total_penalty; }
};

// True when `design.edges` form a single tree spanning exactly connected_vertices.
bool is_tree(const NetworkDesign& design);

}  // namespace fiberplan::net
