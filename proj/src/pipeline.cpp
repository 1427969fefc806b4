#include "fiberplan/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "fiberplan/error.hpp"

namespace fiberplan::pipeline {

namespace {

[[noreturn]] void data_error(std::string kind, const std::string& message) {
  throw Error(ErrorCategory::Data, "pipeline", std::move(kind), message);
}

struct Hierarchy {
  std::map<std::string, const geo::Settlement*> by_id;
  std::map<std::string, std::string> region_of_subregion;
  std::map<std::string, std::vector<std::string>> subregions_of_region;  // sorted
};

Hierarchy build_hierarchy(const geo::SettlementSet& settlements) {
  Hierarchy h;
  for (const auto& s : settlements) {
    h.by_id.emplace(s.id, &s);
    auto [it, inserted] = h.region_of_subregion.try_emplace(s.subregion_id, s.region_id);
    if (!inserted && it->second != s.region_id) {
      data_error("InconsistentHierarchy", "subregion " + s.subregion_id + " appears in regions " + it->second +
                                              " and " + s.region_id);
    }
  }
  for (const auto& [sub, region] : h.region_of_subregion) h.subregions_of_region[region].push_back(sub);
  return h;
}

// Core-adjacent settlement closest to any regional anchor (ties by id).
std::optional<std::string> pick_core_root(const geo::SettlementSet& settlements,
                                          const net::NodeClassification& cls, const Hierarchy& h) {
  std::optional<std::string> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& s : settlements) {
    if (cls.roles.at(s.id) != net::NodeRole::CoreAdjacent) continue;
    double d = std::numeric_limits<double>::infinity();
    for (const auto& anchor : cls.regions) {
      d = std::min(d, geo::haversine_km(s.location, h.by_id.at(anchor.settlement_id)->location));
    }
    if (d < best_d || (d == best_d && best && s.id < *best)) {
      best_d = d;
      best = s.id;
    }
  }
  return best;
}

void add_shares(const net::DesignResult& result, const Hierarchy& h, std::vector<report::DesignShare>& out) {
  std::map<std::string, report::DesignShare> by_subregion;
  for (const auto& t : net::attribute_to_terminals(result)) {
    const auto& sub = h.by_id.at(t.settlement_id)->subregion_id;
    auto& share = by_subregion[sub];
    share.level = result.level;
    share.algorithm = result.design.algorithm;
    share.subregion_id = sub;
    share.length_km += t.length_km;
    share.node_count += 1;
  }
  const auto nodes = static_cast<double>(result.design.terminal_node_count);
  for (auto& [sub, share] : by_subregion) {
    share.opex_share = nodes > 0 ? static_cast<double>(share.node_count) / nodes : 0.0;
    out.push_back(std::move(share));
  }
}

}  // namespace

std::string to_string(FlagKind kind) {
  switch (kind) {
    case FlagKind::NoRegionalCandidate: return "NoRegionalCandidate";
    case FlagKind::NoCoreAdjacent: return "NoCoreAdjacent";
    case FlagKind::Unattached: return "NoRoadVertexInRange";
  }
  return "?";
}

void PlanParameters::validate() const {
  adoption.validate();
  auto invalid = [](std::string kind, const std::string& message) {
    throw Error(ErrorCategory::Validation, "pipeline", std::move(kind), message);
  };
  if (!(buffer_km > 0.0)) invalid("InvalidBuffer", "buffer_km must be positive");
  if (main_settlement_threshold == 0) invalid("InvalidThreshold", "main_settlement_threshold must be positive");
  if (!(snap_radius_km > 0.0)) invalid("InvalidSnapRadius", "snap_radius_km must be positive");
  if (!(prize_scale >= 0.0)) invalid("InvalidPrizeScale", "prize_scale must be non-negative");
  if (methods.empty()) invalid("NoAlgorithm", "at least one algorithm must be selected");
}

Plan design_plan(const PlanInputs& inputs, const PlanParameters& parameters) {
  parameters.validate();
  if (inputs.settlements.empty()) data_error("EmptyNodeSet", "no settlements");
  const bool needs_roads = std::find(parameters.methods.begin(), parameters.methods.end(), net::Method::Pcst) !=
                           parameters.methods.end();
  if (needs_roads && !inputs.roads) data_error("MissingRoads", "PCST designs need a road graph");

  Plan plan;
  const auto subregions = demand::aggregate_subregions(inputs.settlements, inputs.areas);
  plan.demand = demand::assign_deciles(subregions, parameters.adoption);
  plan.classification = net::classify_nodes(inputs.settlements, inputs.fiber, parameters.buffer_km,
                                            parameters.main_settlement_threshold);
  const Hierarchy h = build_hierarchy(inputs.settlements);

  std::map<std::string, double> users_of_subregion;
  for (const auto& d : plan.demand) users_of_subregion[d.subregion_id] = demand::users_for_node(d);
  std::map<std::string, double> users_of_region;
  for (const auto& [sub, region] : h.region_of_subregion) users_of_region[region] += users_of_subregion[sub];

  for (const auto& region : plan.classification.flagged_regions()) {
    plan.flags.push_back({FlagKind::NoRegionalCandidate, region});
  }

  // Regional level: every region's routing node plus the core hand-off point.
  std::vector<geo::Settlement> regional_nodes;
  std::vector<double> regional_prizes;
  for (const auto& anchor : plan.classification.regions) {
    regional_nodes.push_back(*h.by_id.at(anchor.settlement_id));
    regional_prizes.push_back(users_of_region[anchor.region_id] * parameters.prize_scale);
  }
  if (auto core = pick_core_root(inputs.settlements, plan.classification, h)) {
    plan.core_root_id = *core;
    const bool is_anchor = std::any_of(regional_nodes.begin(), regional_nodes.end(),
                                       [&](const geo::Settlement& s) { return s.id == *core; });
    if (!is_anchor) {
      regional_nodes.push_back(*h.by_id.at(*core));
      regional_prizes.push_back(0.0);
    }
  } else {
    plan.flags.push_back({FlagKind::NoCoreAdjacent, "national"});
    const auto best = std::min_element(regional_nodes.begin(), regional_nodes.end(),
                                       [](const geo::Settlement& a, const geo::Settlement& b) {
                                         if (a.population != b.population) return a.population > b.population;
                                         return a.id < b.id;
                                       });
    plan.core_root_id = best->id;
  }

  std::set<std::string> unattached;
  for (const auto method : parameters.methods) {
    net::DesignRequest regional;
    regional.level = net::Level::Regional;
    regional.method = method;
    regional.nodes = regional_nodes;
    regional.root_id = plan.core_root_id;
    regional.prizes = regional_prizes;
    regional.roads = inputs.roads ? &*inputs.roads : nullptr;
    regional.snap_radius_km = parameters.snap_radius_km;
    plan.designs.push_back({"national", net::design_network(regional)});

    for (const auto& anchor : plan.classification.regions) {
      net::DesignRequest access;
      access.level = net::Level::Access;
      access.method = method;
      access.root_id = anchor.settlement_id;
      access.nodes.push_back(*h.by_id.at(anchor.settlement_id));
      access.prizes.push_back(users_of_region[anchor.region_id] * parameters.prize_scale);
      for (const auto& sub : h.subregions_of_region.at(anchor.region_id)) {
        const auto& point = plan.classification.access_points.at(sub);
        if (point == anchor.settlement_id) continue;
        access.nodes.push_back(*h.by_id.at(point));
        access.prizes.push_back(users_of_subregion[sub] * parameters.prize_scale);
      }
      access.roads = regional.roads;
      access.snap_radius_km = parameters.snap_radius_km;
      plan.designs.push_back({anchor.region_id, net::design_network(access)});
    }
  }

  for (const auto& record : plan.designs) {
    add_shares(record.result, h, plan.shares);
    unattached.insert(record.result.unattached.begin(), record.result.unattached.end());
  }
  for (const auto& id : unattached) plan.flags.push_back({FlagKind::Unattached, id});
  return plan;
}

std::vector<report::DecileReportRow> price_plan(const Plan& plan, const cost::CostBook& cost_book,
                                                const lca::EmissionFactorBook& emission_book) {
  cost_book.validate();
  emission_book.validate();
  const auto outcomes = report::evaluate_shares(plan.shares, plan.demand, cost_book, emission_book);
  return report::build_report(outcomes, plan.demand, cost_book, emission_book);
}

}  // namespace fiberplan::pipeline
