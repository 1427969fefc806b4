#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fiberplan/error.hpp"
#include "fiberplan/solvers.hpp"
#include "oracles.hpp"

using namespace fiberplan;
using namespace fiberplan::net;

namespace {

std::string error_kind(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

PrizedGraph two_vertex(double cost, double prize) {
  PrizedGraph inst;
  inst.graph.add_vertex();
  inst.graph.add_vertex();
  inst.graph.add_edge(0, 1, cost);
  inst.prize = {0.0, prize};
  inst.root = 0;
  return inst;
}

double sum_weights(const NetworkDesign& d) {
  double s = 0;
  for (const auto& e : d.edges) s += e.weight_km;
  return s;
}

double excluded_prize(const PrizedGraph& inst, const NetworkDesign& d) {
  double s = 0;
  for (VertexId v : d.excluded_terminals) s += inst.prize[v];
  return s;
}

}  // namespace

TEST_CASE("weighted graph basics") {
  WeightedGraph g;
  g.add_vertex();
  g.add_vertex();
  g.add_edge(1, 0, 4.0);
  g.add_edge(0, 1, 2.5);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edge(0) == Edge{0, 1, 2.5});
  CHECK(error_kind([&] { g.add_edge(0, 0, 1.0); }) == "InvalidGraph");
  CHECK(error_kind([&] { g.add_edge(0, 1, 0.0); }) == "InvalidGraph");
}

TEST_CASE("prim on small graphs") {
  WeightedGraph tri;
  for (int i = 0; i < 3; ++i) tri.add_vertex();
  tri.add_edge(0, 1, 1);
  tri.add_edge(1, 2, 2);
  tri.add_edge(0, 2, 3);
  const auto mst = prim_mst(tri, 0);
  CHECK(mst.algorithm == Algorithm::Mst);
  CHECK(mst.edges == std::vector<Edge>{{0, 1, 1}, {1, 2, 2}});
  CHECK(mst.total_length_km == 3.0);
  CHECK(mst.terminal_node_count == 3);
  CHECK(mst.excluded_terminals.empty());

  WeightedGraph path;
  for (int i = 0; i < 5; ++i) path.add_vertex();
  for (int i = 0; i < 4; ++i) path.add_edge(i, i + 1, 1.0 + i);
  CHECK(prim_mst(path, 2).edges.size() == 4);
  CHECK(prim_mst(path, 2).total_length_km == 10.0);

  WeightedGraph split;
  for (int i = 0; i < 4; ++i) split.add_vertex();
  split.add_edge(0, 1, 1);
  split.add_edge(2, 3, 1);
  CHECK(error_kind([&] { prim_mst(split, 0); }) == "DisconnectedGraph");
  CHECK(error_kind([&] { prim_mst(split, 9); }) == "RootMissing");
}

TEST_CASE("prim matches the Kruskal oracle on random connected graphs") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> size(2, 50);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = oracle::random_connected_graph(rng, size(rng), 30, density(rng));
    const auto root = std::uniform_int_distribution<std::size_t>(0, g.vertex_count() - 1)(rng);
    const auto mst = prim_mst(g, root);
    REQUIRE(mst.total_length_km == oracle::kruskal_total(g));
    REQUIRE(is_tree(mst));
    REQUIRE(mst.connected_vertices.size() == g.vertex_count());
  }
}

TEST_CASE("prim under uniform weight scaling") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 20, 1000, 0.3);
    WeightedGraph scaled;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) scaled.add_vertex();
    for (const auto& e : g.edges()) scaled.add_edge(e.u, e.v, e.weight_km * 4.0);
    const auto a = prim_mst(g, 0);
    const auto b = prim_mst(scaled, 0);
    REQUIRE(b.total_length_km == a.total_length_km * 4.0);
    REQUIRE(a.edges.size() == b.edges.size());
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
      REQUIRE(a.edges[i].u == b.edges[i].u);
      REQUIRE(a.edges[i].v == b.edges[i].v);
    }
  }
}

TEST_CASE("two-vertex prize-collecting instances") {
  const auto low = two_vertex(5, 3);
  for (const auto& d : {pcst_gw(low), pcst_exact(low)}) {
    CHECK(d.objective() == 3.0);
    CHECK(d.total_length_km == 0.0);
    CHECK(d.excluded_terminals == std::vector<VertexId>{1});
  }
  const auto high = two_vertex(5, 10);
  for (const auto& d : {pcst_gw(high), pcst_exact(high)}) {
    CHECK(d.objective() == 5.0);
    CHECK(d.excluded_terminals.empty());
    CHECK(d.connected_vertices == std::vector<VertexId>{0, 1});
  }
}

TEST_CASE("prize-collecting degenerate instances") {
  PrizedGraph lone;
  lone.graph.add_vertex();
  lone.prize = {0.0};
  CHECK(pcst_exact(lone).objective() == 0.0);
  CHECK(pcst_gw(lone).objective() == 0.0);

  std::mt19937_64 rng(1);
  auto inst = oracle::random_prized_graph(rng, 10);
  std::fill(inst.prize.begin(), inst.prize.end(), 0.0);
  const auto d = pcst_gw(inst);
  CHECK(d.objective() == 0.0);
  CHECK(d.connected_vertices == std::vector<VertexId>{inst.root});

  auto big = oracle::random_prized_graph(rng, 17);
  CHECK(error_kind([&] { pcst_exact(big); }) == "InstanceTooLarge");
  big.root = 99;
  CHECK(error_kind([&] { pcst_gw(big); }) == "RootMissing");

  PrizedGraph negative = two_vertex(1, -1);
  CHECK(error_kind([&] { pcst_gw(negative); }) == "InvalidPrize");
}

TEST_CASE("prize-collecting sandwich and accounting on random instances") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = oracle::random_prized_graph(rng, size(rng));
    const auto gw = pcst_gw(inst);
    const auto exact = pcst_exact(inst);
    REQUIRE(exact.objective() <= gw.objective() + 1e-9);
    REQUIRE(gw.objective() <= 2.0 * exact.objective() + 1e-9);
    for (const auto* d : {&gw, &exact}) {
      REQUIRE(is_tree(*d));
      REQUIRE(std::binary_search(d->connected_vertices.begin(), d->connected_vertices.end(), inst.root));
      REQUIRE(d->total_penalty == excluded_prize(inst, *d));
      REQUIRE(std::abs(d->total_length_km - sum_weights(*d)) <= 1e-9 * std::max(1.0, d->total_length_km));
    }
  }
}

TEST_CASE("solvers are deterministic") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracle::random_prized_graph(rng, 12);
    const auto a = pcst_gw(inst), b = pcst_gw(inst);
    REQUIRE(a.edges == b.edges);
    REQUIRE(a.connected_vertices == b.connected_vertices);
    REQUIRE(a.objective() == b.objective());
  }
}
