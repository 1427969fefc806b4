#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fiberplan/geodata.hpp"
#include "fiberplan/graph.hpp"
#include "fiberplan/solvers.hpp"

namespace fiberplan::net {

inline constexpr double kDefaultBufferKm = 2.0;
inline constexpr std::uint64_t kDefaultMainSettlementThreshold = 20'000;

// Settlements take the first matching role in this order. Local settlements
// are served through their subregion's access node.
enum class NodeRole { CoreAdjacent, Regional, Access, Local };

std::string to_string(NodeRole role);

struct RegionAnchor {
  std::string region_id;
  std::string settlement_id;        // routing node of the region
  bool has_regional_candidate = false;  // false: fallback to the most populous settlement
};

struct NodeClassification {
  std::map<std::string, NodeRole> roles;
  std::vector<RegionAnchor> regions;                 // sorted by region_id
  std::map<std::string, std::string> access_points;  // subregion_id -> settlement id

  // Regions flagged NoRegionalCandidate.
  std::vector<std::string> flagged_regions() const;
};

NodeClassification classify_nodes(std::span<const geo::Settlement> settlements,
                                  const geo::FiberLineSet& fiber,
                                  double buffer_km = kDefaultBufferKm,
                                  std::uint64_t main_settlement_threshold = kDefaultMainSettlementThreshold);

// Complete graph over the nodes weighted by great-circle distance. Vertex i is nodes[i].
WeightedGraph build_euclidean_graph(std::span<const geo::Settlement> nodes);

struct RoadAttachment {
  WeightedGraph graph;                   // road vertices first, then spur terminals
  std::vector<VertexId> terminal_vertex; // parallel to the input nodes
  std::vector<std::string> unattached;   // settlement ids with no road vertex in range
};

// Connects each settlement to its nearest road vertex by a spur edge, or merges
// it onto a coincident vertex. Settlements out of snap range are spurred to the
// nearest other settlement instead and listed in `unattached`.
RoadAttachment attach_terminals_to_roads(std::span<const geo::Settlement> nodes,
                                         const geo::RoadGraph& roads, double snap_radius_km);

enum class Level { Regional, Access };

std::string to_string(Level level);

enum class Method { Mst, Pcst };

struct DesignRequest {
  Level level = Level::Access;
  Method method = Method::Mst;
  std::vector<geo::Settlement> nodes;  // includes the root
  std::string root_id;
  std::vector<double> prizes;          // parallel to nodes; PCST only
  const geo::RoadGraph* roads = nullptr;  // PCST only
  double snap_radius_km = 10.0;
};

struct DesignResult {
  Level level = Level::Access;
  NetworkDesign design;
  WeightedGraph graph;
  VertexId root = 0;
  std::vector<std::string> unattached;
};

DesignResult design_network(const DesignRequest& request);

// Splits a design between the terminals it connects. Each connected terminal
// owns itself; each edge is owned by the terminal that owns its child endpoint
// (for Steiner vertices, the shallowest terminal below them, ties by vertex id).
struct TerminalShare {
  std::string settlement_id;
  double length_km = 0.0;
};

std::vector<TerminalShare> attribute_to_terminals(const DesignResult& result);

}  // namespace fiberplan::net
