#include "fiberplan/netdesign.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <tuple>

#include "fiberplan/error.hpp"

namespace fiberplan::net {

namespace {

[[noreturn]] void fail(std::string kind, const std::string& message) {
  throw Error(ErrorCategory::Solver, "netdesign", std::move(kind), message);
}

// Larger population first, then smaller id.
bool outranks(const geo::Settlement& a, const geo::Settlement& b) {
  if (a.population != b.population) return a.population > b.population;
  return a.id < b.id;
}

void reject_duplicate_coordinates(std::span<const geo::Settlement> nodes) {
  std::set<std::pair<double, double>> seen;
  for (const auto& s : nodes) {
    if (!seen.emplace(s.location.lat, s.location.lon).second) {
      fail("DuplicateCoordinate", "settlement " + s.id + " shares its coordinates with another node");
    }
  }
}

VertexPayload payload_for(const geo::Settlement& s) {
  return VertexPayload{VertexKind::Terminal, s.id, s.location};
}

}  // namespace

std::string to_string(NodeRole role) {
  switch (role) {
    case NodeRole::CoreAdjacent: return "core_adjacent";
    case NodeRole::Regional: return "regional";
    case NodeRole::Access: return "access";
    case NodeRole::Local: return "local";
  }
  return "?";
}

std::string to_string(Level level) { return level == Level::Regional ? "regional" : "access"; }

std::vector<std::string> NodeClassification::flagged_regions() const {
  std::vector<std::string> out;
  for (const auto& r : regions) {
    if (!r.has_regional_candidate) out.push_back(r.region_id);
  }
  return out;
}

NodeClassification classify_nodes(std::span<const geo::Settlement> settlements,
                                  const geo::FiberLineSet& fiber, double buffer_km,
                                  std::uint64_t main_settlement_threshold) {
  if (settlements.empty()) fail("EmptyNodeSet", "no settlements to classify");
  if (!(buffer_km > 0.0)) {
    throw Error(ErrorCategory::Validation, "netdesign", "InvalidBuffer", "buffer_km must be positive");
  }
  if (main_settlement_threshold == 0) {
    throw Error(ErrorCategory::Validation, "netdesign", "InvalidThreshold",
                "main settlement threshold must be positive");
  }

  std::map<std::string, const geo::Settlement*> best_in_region;
  std::map<std::string, const geo::Settlement*> best_candidate;
  std::map<std::string, const geo::Settlement*> best_in_subregion;
  for (const auto& s : settlements) {
    auto bump = [&](auto& table, const std::string& key) {
      auto [it, inserted] = table.try_emplace(key, &s);
      if (!inserted && outranks(s, *it->second)) it->second = &s;
    };
    bump(best_in_region, s.region_id);
    bump(best_in_subregion, s.subregion_id);
    if (s.population >= main_settlement_threshold) bump(best_candidate, s.region_id);
  }

  NodeClassification out;
  std::set<std::string> regional_ids;
  for (const auto& [region, top] : best_in_region) {
    auto cand = best_candidate.find(region);
    RegionAnchor anchor;
    anchor.region_id = region;
    anchor.has_regional_candidate = cand != best_candidate.end();
    anchor.settlement_id = anchor.has_regional_candidate ? cand->second->id : top->id;
    if (anchor.has_regional_candidate) regional_ids.insert(anchor.settlement_id);
    out.regions.push_back(std::move(anchor));
  }
  std::set<std::string> access_ids;
  for (const auto& [sub, top] : best_in_subregion) {
    out.access_points.emplace(sub, top->id);
    access_ids.insert(top->id);
  }
  for (const auto& s : settlements) {
    NodeRole role = NodeRole::Local;
    if (geo::within_buffer(s.location, fiber, buffer_km)) {
      role = NodeRole::CoreAdjacent;
    } else if (regional_ids.contains(s.id)) {
      role = NodeRole::Regional;
    } else if (access_ids.contains(s.id)) {
      role = NodeRole::Access;
    }
    out.roles.emplace(s.id, role);
  }
  return out;
}

WeightedGraph build_euclidean_graph(std::span<const geo::Settlement> nodes) {
  if (nodes.size() < 2) fail("EmptyNodeSet", "a distance graph needs at least 2 nodes");
  reject_duplicate_coordinates(nodes);
  WeightedGraph g;
  for (const auto& s : nodes) g.add_vertex(payload_for(s));
  for (VertexId i = 0; i < nodes.size(); ++i) {
    for (VertexId j = i + 1; j < nodes.size(); ++j) {
      g.add_edge(i, j, geo::haversine_km(nodes[i].location, nodes[j].location));
    }
  }
  return g;
}

RoadAttachment attach_terminals_to_roads(std::span<const geo::Settlement> nodes,
                                         const geo::RoadGraph& roads, double snap_radius_km) {
  if (roads.vertices.empty()) fail("EmptyRoadGraph", "road graph has no vertices");
  if (!(snap_radius_km > 0.0)) {
    throw Error(ErrorCategory::Validation, "netdesign", "InvalidSnapRadius", "snap radius must be positive");
  }
  reject_duplicate_coordinates(nodes);

  RoadAttachment out;
  for (const auto& p : roads.vertices) out.graph.add_vertex({VertexKind::Steiner, std::nullopt, p});
  for (const auto& e : roads.edges) out.graph.add_edge(e.u, e.v, e.length_km);

  std::vector<std::size_t> pending;
  out.terminal_vertex.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& s = nodes[i];
    VertexId nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (VertexId v = 0; v < roads.vertices.size(); ++v) {
      const double d = geo::haversine_km(s.location, roads.vertices[v]);
      if (d < best) {
        best = d;
        nearest = v;
      }
    }
    if (best == 0.0) {
      auto& payload = out.graph.payload(nearest);
      payload.kind = VertexKind::Terminal;
      payload.settlement_id = s.id;
      out.terminal_vertex[i] = nearest;
      continue;
    }
    const VertexId t = out.graph.add_vertex(payload_for(s));
    out.terminal_vertex[i] = t;
    if (best <= snap_radius_km) {
      out.graph.add_edge(t, nearest, best);
    } else {
      pending.push_back(i);
    }
  }

  for (std::size_t i : pending) {
    out.unattached.push_back(nodes[i].id);
    std::size_t other = nodes.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (j == i) continue;
      const double d = geo::haversine_km(nodes[i].location, nodes[j].location);
      if (d < best) {
        best = d;
        other = j;
      }
    }
    if (other < nodes.size()) out.graph.add_edge(out.terminal_vertex[i], out.terminal_vertex[other], best);
  }
  return out;
}

DesignResult design_network(const DesignRequest& request) {
  const auto& nodes = request.nodes;
  if (nodes.empty()) fail("EmptyNodeSet", "design request has no nodes");
  auto root_it = std::find_if(nodes.begin(), nodes.end(),
                              [&](const geo::Settlement& s) { return s.id == request.root_id; });
  if (root_it == nodes.end()) fail("RootMissing", "root " + request.root_id + " is not among the nodes");
  const std::size_t root_index = static_cast<std::size_t>(root_it - nodes.begin());
  const Algorithm tag = request.method == Method::Mst ? Algorithm::Mst : Algorithm::PcstGw;

  DesignResult result;
  result.level = request.level;
  if (nodes.size() == 1) {
    result.graph.add_vertex(payload_for(nodes.front()));
    result.design.algorithm = tag;
    result.design.connected_vertices = {0};
    result.design.terminal_node_count = 1;
    return result;
  }

  if (request.method == Method::Mst) {
    result.graph = build_euclidean_graph(nodes);
    result.root = root_index;
    result.design = prim_mst(result.graph, root_index);
    return result;
  }

  if (request.roads == nullptr) fail("MissingRoads", "PCST designs need a road graph");
  if (request.prizes.size() != nodes.size()) fail("InvalidPrize", "one prize per node is required");
  RoadAttachment attached = attach_terminals_to_roads(nodes, *request.roads, request.snap_radius_km);
  PrizedGraph instance;
  instance.prize.assign(attached.graph.vertex_count(), 0.0);
  for (std::size_t i = 0; i < nodes.size(); ++i) instance.prize[attached.terminal_vertex[i]] = request.prizes[i];
  instance.root = attached.terminal_vertex[root_index];
  instance.graph = std::move(attached.graph);
  result.design = pcst_gw(instance);
  result.graph = std::move(instance.graph);
  result.root = instance.root;
  result.unattached = std::move(attached.unattached);
  return result;
}

std::vector<TerminalShare> attribute_to_terminals(const DesignResult& result) {
  const auto& g = result.graph;
  const auto& design = result.design;
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < design.edges.size(); ++i) {
    adj[design.edges[i].u].push_back(i);
    adj[design.edges[i].v].push_back(i);
  }
  std::vector<std::size_t> depth(n, kNone), parent_edge(n, kNone);
  std::vector<VertexId> order{result.root};
  depth[result.root] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const VertexId v = order[k];
    for (std::size_t i : adj[v]) {
      const Edge& e = design.edges[i];
      const VertexId w = e.u == v ? e.v : e.u;
      if (depth[w] != kNone) continue;
      depth[w] = depth[v] + 1;
      parent_edge[w] = i;
      order.push_back(w);
    }
  }

  std::vector<VertexId> owner(n, kNone);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (g.is_terminal(v) && g.payload(v).settlement_id) owner[v] = v;
    if (v == result.root || owner[v] == kNone) continue;
    const Edge& e = design.edges[parent_edge[v]];
    const VertexId p = e.u == v ? e.v : e.u;
    if (owner[p] == p) continue;
    const VertexId o = owner[v];
    if (owner[p] == kNone || std::tie(depth[o], o) < std::tie(depth[owner[p]], owner[p])) owner[p] = o;
  }

  std::map<VertexId, double> length;
  for (VertexId v : order) {
    if (owner[v] != kNone) length.try_emplace(owner[v], 0.0);
  }
  for (VertexId v : order) {
    if (v == result.root) continue;
    VertexId o = owner[v];
    if (o == kNone) o = owner[result.root];
    if (o == kNone) continue;
    length[o] += design.edges[parent_edge[v]].weight_km;
  }
  std::vector<TerminalShare> out;
  for (const auto& [v, len] : length) out.push_back({*g.payload(v).settlement_id, len});
  return out;
}

}  // namespace fiberplan::net
