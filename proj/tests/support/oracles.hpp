#pragma once
// Independent reference computations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <tuple>
#include <vector>

#include "fiberplan/geodata.hpp"
#include "fiberplan/graph.hpp"

namespace oracle {

inline constexpr double kRadiusKm = 6371.0088;

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Spherical law of cosines via the vector dot product, an algebraically
// different route to great-circle distance than the haversine.
inline double central_angle_km(fiberplan::geo::GeoPoint a, fiberplan::geo::GeoPoint b) {
  auto vec = [](fiberplan::geo::GeoPoint p) {
    return std::array<double, 3>{std::cos(rad(p.lat)) * std::cos(rad(p.lon)),
                                 std::cos(rad(p.lat)) * std::sin(rad(p.lon)), std::sin(rad(p.lat))};
  };
  const auto u = vec(a), v = vec(b);
  const double cross_x = u[1] * v[2] - u[2] * v[1];
  const double cross_y = u[2] * v[0] - u[0] * v[2];
  const double cross_z = u[0] * v[1] - u[1] * v[0];
  const double sin_theta = std::sqrt(cross_x * cross_x + cross_y * cross_y + cross_z * cross_z);
  const double cos_theta = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
  return kRadiusKm * std::atan2(sin_theta, cos_theta);
}

// Inverse haversine: destination along an initial bearing.
inline fiberplan::geo::GeoPoint destination(fiberplan::geo::GeoPoint from, double bearing_deg, double km) {
  const double delta = km / kRadiusKm;
  const double theta = rad(bearing_deg);
  const double phi1 = rad(from.lat), lambda1 = rad(from.lon);
  const double phi2 = std::asin(std::sin(phi1) * std::cos(delta) + std::cos(phi1) * std::sin(delta) * std::cos(theta));
  const double lambda2 = lambda1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(phi1),
                                              std::cos(delta) - std::sin(phi1) * std::sin(phi2));
  return {deg(phi2), deg(lambda2)};
}

// Kruskal over the whole edge list; returns total weight or -1 when disconnected.
inline double kruskal_total(const fiberplan::net::WeightedGraph& g) {
  std::vector<fiberplan::net::Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.weight_km, a.u, a.v) < std::tie(b.weight_km, b.u, b.v);
  });
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  double total = 0.0;
  std::size_t used = 0;
  for (const auto& e : edges) {
    auto a = find(e.u), b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    total += e.weight_km;
    ++used;
  }
  return used + 1 == g.vertex_count() ? total : -1.0;
}

// Random connected graph: random spanning tree plus extra edges, integer weights.
inline fiberplan::net::WeightedGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, int max_weight,
                                                            double extra_density) {
  fiberplan::net::WeightedGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex();
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (std::size_t v = 1; v < n; ++v) {
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    g.add_edge(pick(rng), v, weight(rng));
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!g.find_edge(a, b) && coin(rng) < extra_density) g.add_edge(a, b, weight(rng));
    }
  }
  return g;
}

// Random prized instance with integer weights and prizes; may be disconnected.
inline fiberplan::net::PrizedGraph random_prized_graph(std::mt19937_64& rng, std::size_t n) {
  fiberplan::net::PrizedGraph inst;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, 20);
  std::uniform_int_distribution<int> prize(0, 25);
  for (std::size_t i = 0; i < n; ++i) {
    const bool steiner = i > 0 && coin(rng) < 0.25;
    inst.graph.add_vertex({steiner ? fiberplan::net::VertexKind::Steiner : fiberplan::net::VertexKind::Terminal,
                           std::nullopt, std::nullopt});
    inst.prize.push_back(steiner ? 0.0 : static_cast<double>(prize(rng)));
  }
  const double density = 0.2 + 0.5 * coin(rng);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (coin(rng) < density) inst.graph.add_edge(a, b, weight(rng));
    }
  }
  inst.root = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  if (!inst.graph.is_terminal(inst.root)) inst.root = 0;
  return inst;
}

}  // namespace oracle
