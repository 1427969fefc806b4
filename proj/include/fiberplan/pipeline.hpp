#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiberplan/demand.hpp"
#include "fiberplan/geodata.hpp"
#include "fiberplan/netdesign.hpp"
#include "fiberplan/report.hpp"

namespace fiberplan::pipeline {

struct PlanInputs {
  geo::SettlementSet settlements;
  std::vector<demand::AreaRecord> areas;
  geo::FiberLineSet fiber;
  std::optional<geo::RoadGraph> roads;  // required for PCST
};

struct PlanParameters {
  demand::AdoptionScenario adoption;
  double buffer_km = net::kDefaultBufferKm;
  std::uint64_t main_settlement_threshold = net::kDefaultMainSettlementThreshold;
  double snap_radius_km = 10.0;
  double prize_scale = 1.0;  // km-equivalent prize per potential user
  std::vector<net::Method> methods{net::Method::Mst, net::Method::Pcst};

  void validate() const;
};

struct DesignRecord {
  std::string scope;  // region id for access designs, "national" for the regional design
  net::DesignResult result;
};

enum class FlagKind { NoRegionalCandidate, NoCoreAdjacent, Unattached };

std::string to_string(FlagKind kind);

struct Flag {
  FlagKind kind;
  std::string id;

  friend bool operator==(const Flag&, const Flag&) = default;
};

struct Plan {
  std::vector<demand::SubregionDemand> demand;
  net::NodeClassification classification;
  std::string core_root_id;
  std::vector<DesignRecord> designs;  // per method: regional design, then access designs by region
  std::vector<report::DesignShare> shares;
  std::vector<Flag> flags;
};

// Demand, node classification and network designs for every requested method
// at both levels.
Plan design_plan(const PlanInputs& inputs, const PlanParameters& parameters);

std::vector<report::DecileReportRow> price_plan(const Plan& plan, const cost::CostBook& cost_book,
                                                const lca::EmissionFactorBook& emission_book);

}  // namespace fiberplan::pipeline
