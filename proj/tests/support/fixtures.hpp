#pragma once
// Small hand-built inputs shared by several test binaries.

#include <string>
#include <vector>

#include "fiberplan/demand.hpp"
#include "fiberplan/report.hpp"

namespace fixture {

struct PricedInputs {
  std::vector<fiberplan::demand::SubregionDemand> demand;
  std::vector<fiberplan::report::DesignShare> shares;
};

// Twenty subregions, two per decile, each carrying an access share under both
// algorithms and a regional MST share on the densest one.
inline PricedInputs twenty_subregions(double adoption = 0.5) {
  using namespace fiberplan;
  std::vector<demand::SubregionInput> in;
  for (int i = 0; i < 20; ++i) {
    char id[8];
    std::snprintf(id, sizeof id, "A%02d", i);
    in.push_back({id, static_cast<std::uint64_t>(200'000 / (i + 1)), 10.0 + 5.0 * i});
  }
  PricedInputs out;
  out.demand = demand::assign_deciles(in, {adoption, 0});
  for (const auto& d : out.demand) {
    const double km = 3.0 + d.area_km2 / 4.0;
    out.shares.push_back({net::Level::Access, net::Algorithm::Mst, d.subregion_id, km, 1, 0.05});
    out.shares.push_back({net::Level::Access, net::Algorithm::PcstGw, d.subregion_id, km * 1.3, 1, 0.05});
  }
  out.shares.push_back({net::Level::Regional, net::Algorithm::Mst, out.demand.front().subregion_id, 120.0, 2, 1.0});
  return out;
}

}  // namespace fixture
