#include "fiberplan/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

#include "fiberplan/error.hpp"

namespace fiberplan::net {

namespace {

[[noreturn]] void solver_error(std::string kind, const std::string& message) {
  throw Error(ErrorCategory::Solver, "netdesign", std::move(kind), message);
}

// Fills the derived fields of a design from its edge list and vertex set.
NetworkDesign finish_design(const WeightedGraph& graph, const std::vector<double>* prize,
                            Algorithm algorithm, std::vector<Edge> edges,
                            std::vector<VertexId> connected) {
  NetworkDesign d;
  d.algorithm = algorithm;
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  std::sort(connected.begin(), connected.end());
  d.edges = std::move(edges);
  d.connected_vertices = std::move(connected);
  for (const auto& e : d.edges) d.total_length_km += e.weight_km;

  std::vector<bool> in(graph.vertex_count(), false);
  for (VertexId v : d.connected_vertices) in[v] = true;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (!graph.is_terminal(v)) continue;
    if (in[v]) {
      ++d.terminal_node_count;
    } else {
      d.excluded_terminals.push_back(v);
      if (prize) d.total_penalty += (*prize)[v];
    }
  }
  return d;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Attaches b's set under a's representative.
  void unite_into(std::size_t a, std::size_t b) { parent_[find(b)] = find(a); }

 private:
  std::vector<std::size_t> parent_;
};

// Keeps the subtree of `forest` reachable from root that maximises
// prize - edge cost. Children whose net worth does not exceed the connecting
// edge weight are cut.
std::pair<std::vector<Edge>, std::vector<VertexId>> strong_prune(const PrizedGraph& instance,
                                                                 const std::vector<std::size_t>& forest) {
  const auto& graph = instance.graph;
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t e : forest) {
    adj[graph.edge(e).u].push_back(e);
    adj[graph.edge(e).v].push_back(e);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> parent_edge(n, kNone);
  std::vector<bool> seen(n, false);
  std::vector<VertexId> order;
  std::vector<VertexId> stack{instance.root};
  seen[instance.root] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (std::size_t e : adj[v]) {
      const Edge& ed = graph.edge(e);
      VertexId w = ed.u == v ? ed.v : ed.u;
      if (seen[w]) continue;
      seen[w] = true;
      parent_edge[w] = e;
      stack.push_back(w);
    }
  }

  std::vector<double> worth(n, 0.0);
  for (VertexId v : order) worth[v] = instance.prize[v];
  std::vector<bool> keep(n, false);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    VertexId v = *it;
    if (v == instance.root) continue;
    const Edge& ed = graph.edge(parent_edge[v]);
    const double gain = worth[v] - ed.weight_km;
    if (gain > 0.0) {
      keep[v] = true;
      VertexId p = ed.u == v ? ed.v : ed.u;
      worth[p] += gain;
    }
  }

  std::vector<Edge> edges;
  std::vector<VertexId> verts{instance.root};
  std::vector<bool> alive(n, false);
  alive[instance.root] = true;
  for (VertexId v : order) {  // preorder: parents before children
    if (v == instance.root || !keep[v]) continue;
    const Edge& ed = graph.edge(parent_edge[v]);
    VertexId p = ed.u == v ? ed.v : ed.u;
    if (!alive[p]) continue;
    alive[v] = true;
    verts.push_back(v);
    edges.push_back(ed);
  }
  return {std::move(edges), std::move(verts)};
}

}  // namespace

NetworkDesign prim_mst(const WeightedGraph& graph, VertexId root) {
  const std::size_t n = graph.vertex_count();
  if (root >= n) solver_error("RootMissing", "MST root not in graph");

  using Key = std::tuple<double, VertexId, VertexId, std::size_t>;
  std::priority_queue<Key, std::vector<Key>, std::greater<>> frontier;
  std::vector<bool> in_tree(n, false);
  auto absorb = [&](VertexId v) {
    in_tree[v] = true;
    for (std::size_t e : graph.incident(v)) {
      const Edge& ed = graph.edge(e);
      VertexId w = ed.u == v ? ed.v : ed.u;
      if (!in_tree[w]) frontier.emplace(ed.weight_km, ed.u, ed.v, e);
    }
  };

  std::vector<Edge> edges;
  std::vector<VertexId> connected{root};
  absorb(root);
  while (!frontier.empty()) {
    auto [w, u, v, e] = frontier.top();
    frontier.pop();
    const bool iu = in_tree[u], iv = in_tree[v];
    if (iu && iv) continue;
    VertexId next = iu ? v : u;
    edges.push_back(graph.edge(e));
    connected.push_back(next);
    absorb(next);
  }
  if (connected.size() != n) {
    solver_error("DisconnectedGraph", "graph has vertices unreachable from the root (" +
                                          std::to_string(n - connected.size()) + " of " + std::to_string(n) + ")");
  }
  return finish_design(graph, nullptr, Algorithm::Mst, std::move(edges), std::move(connected));
}

NetworkDesign pcst_gw(const PrizedGraph& instance) {
  instance.validate();
  const auto& graph = instance.graph;
  const std::size_t n = graph.vertex_count();
  const std::size_t m = graph.edge_count();

  DisjointSets sets(n);
  // Component state lives at the representative.
  std::vector<bool> active(n);
  std::vector<double> slack(n);  // prize not yet paid for by moat growth
  std::vector<double> load(n, 0.0);  // total moat radius around each vertex
  const std::size_t root_rep0 = instance.root;
  for (VertexId v = 0; v < n; ++v) {
    slack[v] = instance.prize[v];
    active[v] = v != root_rep0 && slack[v] > 0.0;
  }

  std::vector<std::size_t> forest;
  // TODO: replace the per-event linear scan with an event priority queue so
  // continental road graphs (1e5+ vertices) solve in near-linear time.
  while (true) {
    double best_t = std::numeric_limits<double>::infinity();
    std::size_t best_edge = m;
    std::size_t best_comp = n;
    for (std::size_t e = 0; e < m; ++e) {
      const Edge& ed = graph.edge(e);
      const std::size_t cu = sets.find(ed.u), cv = sets.find(ed.v);
      if (cu == cv) continue;
      const int rate = static_cast<int>(active[cu]) + static_cast<int>(active[cv]);
      if (rate == 0) continue;
      const double t = std::max(0.0, ed.weight_km - load[ed.u] - load[ed.v]) / rate;
      if (t < best_t) {
        best_t = t;
        best_edge = e;
      }
    }
    for (VertexId v = 0; v < n; ++v) {
      if (sets.find(v) != v || !active[v]) continue;
      if (slack[v] < best_t) {  // strict: edge events win ties
        best_t = slack[v];
        best_edge = m;
        best_comp = v;
      }
    }
    if (!std::isfinite(best_t)) break;

    for (VertexId v = 0; v < n; ++v) {
      if (active[sets.find(v)]) load[v] += best_t;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (sets.find(v) == v && active[v]) slack[v] = std::max(0.0, slack[v] - best_t);
    }

    if (best_edge < m) {
      const Edge& ed = graph.edge(best_edge);
      const std::size_t cu = sets.find(ed.u), cv = sets.find(ed.v);
      const double merged_slack = slack[cu] + slack[cv];
      const bool has_root = cu == sets.find(instance.root) || cv == sets.find(instance.root);
      sets.unite_into(cu, cv);
      const std::size_t rep = sets.find(cu);
      forest.push_back(best_edge);
      slack[rep] = merged_slack;
      active[rep] = !has_root && merged_slack > 0.0;
      if (rep != cu) active[cu] = false;
      if (rep != cv) active[cv] = false;
    } else {
      active[best_comp] = false;
      slack[best_comp] = 0.0;
    }
  }

  // Only forest edges inside the root's component matter; pruning walks from the root.
  auto [edges, verts] = strong_prune(instance, forest);
  return finish_design(graph, &instance.prize, Algorithm::PcstGw, std::move(edges), std::move(verts));
}

NetworkDesign pcst_exact(const PrizedGraph& instance) {
  instance.validate();
  const auto& graph = instance.graph;
  const std::size_t n = graph.vertex_count();
  if (n > kExactPcstMaxVertices) {
    solver_error("InstanceTooLarge", "exact PCST limited to " + std::to_string(kExactPcstMaxVertices) +
                                         " vertices, got " + std::to_string(n));
  }

  std::vector<VertexId> others;
  for (VertexId v = 0; v < n; ++v) {
    if (v != instance.root) others.push_back(v);
  }
  const double total_prize = std::accumulate(instance.prize.begin(), instance.prize.end(), 0.0);
  const double inf = std::numeric_limits<double>::infinity();

  // Dense weight matrix of the graph.
  std::vector<double> w(n * n, inf);
  for (const auto& e : graph.edges()) w[e.u * n + e.v] = w[e.v * n + e.u] = e.weight_km;

  double best = inf;
  std::uint32_t best_mask = 0;
  std::vector<VertexId> members;
  std::vector<double> dist;
  std::vector<bool> in;
  for (std::uint32_t mask = 0; mask < (1u << others.size()); ++mask) {
    members.assign(1, instance.root);
    double kept_prize = instance.prize[instance.root];
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (mask & (1u << i)) {
        members.push_back(others[i]);
        kept_prize += instance.prize[others[i]];
      }
    }
    // Dense Prim on the induced subgraph; infinite key means disconnected.
    const std::size_t k = members.size();
    dist.assign(k, inf);
    in.assign(k, false);
    dist[0] = 0.0;
    double tree = 0.0;
    bool connected = true;
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t pick = k;
      for (std::size_t i = 0; i < k; ++i) {
        if (!in[i] && (pick == k || dist[i] < dist[pick])) pick = i;
      }
      if (!std::isfinite(dist[pick])) {
        connected = false;
        break;
      }
      in[pick] = true;
      tree += dist[pick];
      for (std::size_t i = 0; i < k; ++i) {
        if (!in[i]) dist[i] = std::min(dist[i], w[members[pick] * n + members[i]]);
      }
    }
    if (!connected) continue;
    const double objective = tree + (total_prize - kept_prize);
    if (objective < best) {
      best = objective;
      best_mask = mask;
    }
  }

  WeightedGraph sub;
  std::vector<VertexId> original;
  std::vector<VertexId> local(n, n);
  auto take = [&](VertexId v) {
    local[v] = sub.add_vertex();
    original.push_back(v);
  };
  take(instance.root);
  for (std::size_t i = 0; i < others.size(); ++i) {
    if (best_mask & (1u << i)) take(others[i]);
  }
  for (const auto& e : graph.edges()) {
    if (local[e.u] < n && local[e.v] < n) sub.add_edge(local[e.u], local[e.v], e.weight_km);
  }
  const NetworkDesign tree = prim_mst(sub, 0);
  std::vector<Edge> edges;
  for (const auto& e : tree.edges) {
    const VertexId a = original[e.u], b = original[e.v];
    edges.push_back({std::min(a, b), std::max(a, b), e.weight_km});
  }
  std::vector<VertexId> verts;
  for (VertexId v : tree.connected_vertices) verts.push_back(original[v]);
  return finish_design(graph, &instance.prize, Algorithm::PcstExact, std::move(edges), std::move(verts));
}

}  // namespace fiberplan::net
