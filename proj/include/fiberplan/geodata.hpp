#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fiberplan::geo {

// Mean Earth radius (IUGG).
inline constexpr double kEarthRadiusKm = 6371.0088;

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p) noexcept;

// Throws Error{Data, "CoordinateOutOfRange"} naming `where` when outside WGS84 bounds.
GeoPoint make_point(double lat, double lon, std::string_view where = {});

struct Settlement {
  std::string id;
  GeoPoint location;
  std::uint64_t population = 0;
  std::string region_id;     // first-level subdivision
  std::string subregion_id;  // second-level subdivision
};

using SettlementSet = std::vector<Settlement>;

enum class SettlementFormat { Csv, GeoJson };

// Guesses the format from the file extension (.geojson/.json -> GeoJson).
SettlementFormat settlement_format_for(const std::filesystem::path& path);

SettlementSet load_settlements(const std::filesystem::path& path, SettlementFormat format);
SettlementSet parse_settlements_csv(std::istream& in, std::string_view source = "<csv>");
SettlementSet parse_settlements_geojson(std::string_view text, std::string_view source = "<geojson>");

// Canonical CSV: fixed header, shortest round-trip decimal for coordinates.
std::string settlements_to_csv(std::span<const Settlement> settlements);

using Polyline = std::vector<GeoPoint>;

struct FiberLineSet {
  std::vector<Polyline> lines;
};

FiberLineSet load_fiber_lines(const std::filesystem::path& path);
FiberLineSet parse_fiber_lines(std::string_view geojson, std::string_view source = "<geojson>");

struct RoadEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length_km = 0.0;
};

struct RoadGraph {
  std::vector<GeoPoint> vertices;
  std::vector<RoadEdge> edges;  // u < v, unique pairs

  std::size_t component_count() const;
};

RoadGraph load_road_graph(const std::filesystem::path& path);
RoadGraph parse_road_graph(std::string_view geojson, std::string_view source = "<geojson>");

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept;

// Distance from p to segment ab, measured in a tangent plane centred on p.
double point_segment_distance_km(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) noexcept;

// Minimum distance from p to any segment of any polyline; +inf for an empty set.
double distance_to_lines_km(const GeoPoint& p, const FiberLineSet& lines) noexcept;

bool within_buffer(const GeoPoint& p, const FiberLineSet& lines, double radius_km);

}  // namespace fiberplan::geo
