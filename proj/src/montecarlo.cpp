#include "fiberplan/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "fiberplan/error.hpp"
#include "fiberplan/params.hpp"

namespace fiberplan::mc {

namespace {

[[noreturn]] void bounds_error(const std::string& message) {
  throw Error(ErrorCategory::Validation, "report", "InvalidDistributionBounds", message);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double percentile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double a = sorted[lo], b = sorted[hi];
  if (a == b) return a;
  return a + (h - static_cast<double>(lo)) * (b - a);
}

}  // namespace

Distribution Distribution::parse(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) return fixed(params::parse_number(text, "distribution"));
  if (text.back() != ')') bounds_error("malformed distribution '" + std::string(text) + "'");
  const auto name = trim(text.substr(0, open));
  auto body = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> args;
  while (true) {
    const auto comma = body.find(',');
    args.push_back(params::parse_number(body.substr(0, comma), "distribution argument"));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  Distribution d;
  if (name == "fixed" && args.size() == 1) {
    d = fixed(args[0]);
  } else if (name == "uniform" && args.size() == 2) {
    d = uniform(args[0], args[1]);
  } else if (name == "triangular" && args.size() == 3) {
    d = triangular(args[0], args[1], args[2]);
  } else {
    bounds_error("unknown distribution '" + std::string(text) + "'");
  }
  d.validate();
  return d;
}

void Distribution::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(mode) || !std::isfinite(hi) || !(lo <= mode && mode <= hi)) {
    bounds_error("distribution bounds must satisfy lo <= mode <= hi");
  }
}

double Distribution::quantile(double u) const {
  switch (kind) {
    case Kind::Fixed:
      return lo;
    case Kind::Uniform:
      return lo + u * (hi - lo);
    case Kind::Triangular: {
      if (lo == hi) return lo;
      const double width = hi - lo;
      const double split = (mode - lo) / width;
      if (u < split) return lo + std::sqrt(u * width * (mode - lo));
      return hi - std::sqrt((1.0 - u) * width * (hi - mode));
    }
  }
  return lo;
}

void McConfig::validate(const cost::CostBook& cost_book, const lca::EmissionFactorBook& emission_book) const {
  if (draws < 1) throw Error(ErrorCategory::Validation, "report", "InvalidDraws", "draws must be >= 1");
  for (const auto& [key, dist] : distributions) {
    if (!params::has_parameter(key, cost_book, emission_book)) {
      throw Error(ErrorCategory::Validation, "report", "UnknownParameterKey",
                  "Monte Carlo parameter '" + key + "' does not exist");
    }
    dist.validate();
  }
}

double uniform_variate(std::uint64_t seed, std::uint64_t draw, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 engine(seq);
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

Summary summarize(std::span<const std::optional<double>> samples) {
  Summary out;
  if (samples.empty()) return out;
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) {
    if (!s) return out;
    values.push_back(*s);
  }
  // Anchored at the first sample so identical draws reproduce it exactly.
  const double anchor = values.front();
  double offset = 0.0;
  for (double v : values) offset += v - anchor;
  out.mean = anchor + offset / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  out.p5 = percentile(values, 0.05);
  out.p50 = percentile(values, 0.50);
  out.p95 = percentile(values, 0.95);
  return out;
}

McResult monte_carlo(std::span<const report::DesignShare> shares,
                     std::span<const demand::SubregionDemand> demand, const cost::CostBook& cost_book,
                     const lca::EmissionFactorBook& emission_book, const McConfig& config) {
  config.validate(cost_book, emission_book);
  cost_book.validate();
  emission_book.validate();

  const auto base_rows =
      report::build_report(report::evaluate_shares(shares, demand, cost_book, emission_book), demand, cost_book,
                           emission_book);
  const auto& metrics = report::report_metrics();
  const std::size_t width = base_rows.size() * metrics.size();
  const std::size_t n_params = config.distributions.size();
  const std::size_t draws = static_cast<std::size_t>(config.draws);

  // samples[(row * metrics + metric) * draws + draw]
  std::vector<std::optional<double>> samples(width * draws);
  std::vector<std::optional<double>> param_samples(n_params * draws);

  auto run_draw = [&](std::size_t draw) {
    cost::CostBook c = cost_book;
    lca::EmissionFactorBook l = emission_book;
    for (std::size_t k = 0; k < n_params; ++k) {
      const auto& [key, dist] = config.distributions[k];
      const double value = dist.quantile(uniform_variate(config.seed, draw, k));
      params::set_parameter(key, value, c, l);
      param_samples[k * draws + draw] = params::get_parameter(key, c, l);
    }
    c.validate();
    l.validate();
    const auto rows = report::build_report(report::evaluate_shares(shares, demand, c, l), demand, c, l);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t m = 0; m < metrics.size(); ++m) {
        samples[(r * metrics.size() + m) * draws + draw] = metrics[m].value(rows[r]);
      }
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), draws / 64));
  if (workers == 1) {
    for (std::size_t d = 0; d < draws; ++d) run_draw(d);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t d = w; d < draws; d += workers) run_draw(d);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  McResult out;
  for (std::size_t r = 0; r < base_rows.size(); ++r) {
    for (std::size_t m = 0; m < metrics.size(); ++m) {
      MetricSummary s;
      s.metric = std::string(metrics[m].name);
      s.decile = base_rows[r].decile;
      s.level = base_rows[r].level;
      s.algorithm = base_rows[r].algorithm;
      s.summary = summarize(std::span(samples).subspan((r * metrics.size() + m) * draws, draws));
      out.metrics.push_back(std::move(s));
    }
  }
  for (std::size_t k = 0; k < n_params; ++k) {
    out.parameters.push_back(
        {config.distributions[k].first, summarize(std::span(param_samples).subspan(k * draws, draws))});
  }
  return out;
}

std::string mc_summary_csv(const McResult& result, const report::OutputMetadata& meta) {
  using report::format_value;
  std::string out = meta.comment_line() + "\n";
  out += kSummaryHeader;
  out += '\n';
  auto tail = [&](const Summary& s) {
    return format_value(s.mean) + ',' + format_value(s.p5) + ',' + format_value(s.p50) + ',' + format_value(s.p95) +
           '\n';
  };
  for (const auto& m : result.metrics) {
    out += m.metric + ',' + std::to_string(m.decile) + ',' + net::to_string(m.level) + ',' +
           net::to_string(m.algorithm) + ',' + tail(m.summary);
  }
  for (const auto& p : result.parameters) out += "param:" + p.key + ",,,," + tail(p.summary);
  return out;
}

}  // namespace fiberplan::mc
