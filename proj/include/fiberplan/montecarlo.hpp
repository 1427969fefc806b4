#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fiberplan/report.hpp"

namespace fiberplan::mc {

struct Distribution {
  enum class Kind { Fixed, Uniform, Triangular };

  Kind kind = Kind::Fixed;
  double lo = 0;
  double mode = 0;
  double hi = 0;

  static Distribution fixed(double value) { return {Kind::Fixed, value, value, value}; }
  static Distribution uniform(double lo, double hi) { return {Kind::Uniform, lo, (lo + hi) / 2, hi}; }
  static Distribution triangular(double lo, double mode, double hi) { return {Kind::Triangular, lo, mode, hi}; }

  // "fixed(v)", "uniform(lo, hi)" or "triangular(lo, mode, hi)"; a bare number is fixed.
  static Distribution parse(std::string_view text);

  // Throws InvalidDistributionBounds unless lo <= mode <= hi.
  void validate() const;

  // Inverse CDF at u in [0, 1).
  double quantile(double u) const;
};

struct McConfig {
  std::uint64_t draws = 1000;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, Distribution>> distributions;  // parameter key -> distribution

  void validate(const cost::CostBook& cost_book, const lca::EmissionFactorBook& emission_book) const;
};

// Uniform variate in [0, 1) for (seed, draw, stream). Independent of evaluation order.
double uniform_variate(std::uint64_t seed, std::uint64_t draw, std::uint64_t stream);

struct Summary {
  std::optional<double> mean, p5, p50, p95;
};

// Mean and linearly interpolated percentiles. Empty when any sample is undefined.
Summary summarize(std::span<const std::optional<double>> samples);

struct MetricSummary {
  std::string metric;
  int decile = 0;
  net::Level level = net::Level::Access;
  net::Algorithm algorithm = net::Algorithm::Mst;
  Summary summary;
};

struct ParameterSummary {
  std::string key;
  Summary summary;
};

struct McResult {
  std::vector<MetricSummary> metrics;       // report row order, then metric order
  std::vector<ParameterSummary> parameters; // config order
};

// Re-prices the fixed design shares once per draw with sampled parameters.
McResult monte_carlo(std::span<const report::DesignShare> shares,
                     std::span<const demand::SubregionDemand> demand, const cost::CostBook& cost_book,
                     const lca::EmissionFactorBook& emission_book, const McConfig& config);

inline constexpr std::string_view kSummaryHeader = "metric,decile,level,algorithm,mean,p5,p50,p95";

// Parameter rows use metric "param:<key>" with empty decile/level/algorithm.
std::string mc_summary_csv(const McResult& result, const report::OutputMetadata& meta);

}  // namespace fiberplan::mc
