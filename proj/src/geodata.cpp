#include "fiberplan/geodata.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "fiberplan/error.hpp"

namespace fiberplan::geo {

namespace {

using nlohmann::json;

[[noreturn]] void data_error(std::string kind, const std::string& message) {
  throw Error(ErrorCategory::Data, "geodata", std::move(kind), message);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::Io, "geodata", "IoError", "cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr double to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    data_error("MalformedValue", where + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::uint64_t parse_population(std::string_view text, const std::string& where) {
  if (!text.empty() && text.front() == '-') {
    data_error("NegativePopulation", where + ": population " + std::string(text));
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    data_error("MalformedValue", where + ": population '" + std::string(text) + "' is not a non-negative integer");
  }
  return value;
}

void check_settlement(const Settlement& s, const std::string& where,
                      std::unordered_set<std::string>& seen) {
  if (s.id.empty()) data_error("MissingValue", where + ": empty id");
  if (s.region_id.empty()) data_error("MissingValue", where + ": empty region_id");
  if (s.subregion_id.empty()) data_error("MissingValue", where + ": empty subregion_id");
  if (!seen.insert(s.id).second) data_error("DuplicateId", where + ": duplicate id " + s.id);
}

GeoPoint point_from_position(const json& pos, const std::string& where) {
  if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
    data_error("MalformedGeometry", where + ": position must be [lon, lat]");
  }
  return make_point(pos[1].get<double>(), pos[0].get<double>(), where);
}

json parse_json(std::string_view text, std::string_view source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    data_error("MalformedJson", std::string(source) + ": " + e.what());
  }
}

const json& features_of(const json& doc, std::string_view source) {
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    data_error("MalformedJson", std::string(source) + ": expected a FeatureCollection");
  }
  const json& features = doc["features"];
  if (features.empty()) data_error("EmptyCollection", std::string(source) + ": no features");
  return features;
}

double polyline_length_km(const Polyline& line) {
  double total = 0.0;
  for (std::size_t i = 1; i < line.size(); ++i) total += haversine_km(line[i - 1], line[i]);
  return total;
}

// Flattens LineString / MultiLineString features into polylines.
std::vector<Polyline> collect_lines(const json& features, std::string_view source) {
  std::vector<Polyline> lines;
  for (std::size_t f = 0; f < features.size(); ++f) {
    const std::string where = std::string(source) + " feature " + std::to_string(f);
    const json& geom = features[f].contains("geometry") ? features[f]["geometry"] : json();
    if (!geom.is_object()) data_error("MalformedGeometry", where + ": missing geometry");
    const std::string type = geom.value("type", "");
    const json& coords = geom.contains("coordinates") ? geom["coordinates"] : json();
    auto take = [&](const json& part, const std::string& w) {
      if (!part.is_array()) data_error("MalformedGeometry", w + ": coordinates must be an array");
      Polyline line;
      for (const auto& pos : part) line.push_back(point_from_position(pos, w));
      if (line.size() < 2) data_error("DegenerateGeometry", w + ": polyline needs at least 2 vertices");
      if (polyline_length_km(line) <= 0.0) data_error("DegenerateGeometry", w + ": polyline has zero length");
      lines.push_back(std::move(line));
    };
    if (type == "LineString") {
      take(coords, where);
    } else if (type == "MultiLineString") {
      if (!coords.is_array()) data_error("MalformedGeometry", where + ": coordinates must be an array");
      for (std::size_t p = 0; p < coords.size(); ++p) take(coords[p], where + " part " + std::to_string(p));
    } else {
      data_error("UnsupportedGeometry", where + ": expected LineString or MultiLineString, got '" + type + "'");
    }
  }
  return lines;
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

bool is_valid(const GeoPoint& p) noexcept {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

GeoPoint make_point(double lat, double lon, std::string_view where) {
  GeoPoint p{lat, lon};
  if (!is_valid(p)) {
    std::ostringstream msg;
    msg << (where.empty() ? std::string_view("point") : where) << ": (" << lat << ", " << lon
        << ") outside WGS84 range";
    data_error("CoordinateOutOfRange", msg.str());
  }
  return p;
}

SettlementFormat settlement_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return (ext == ".geojson" || ext == ".json") ? SettlementFormat::GeoJson : SettlementFormat::Csv;
}

SettlementSet load_settlements(const std::filesystem::path& path, SettlementFormat format) {
  if (format == SettlementFormat::GeoJson) {
    return parse_settlements_geojson(read_file(path), path.string());
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::Io, "geodata", "IoError", "cannot open " + path.string());
  return parse_settlements_csv(in, path.string());
}

SettlementSet parse_settlements_csv(std::istream& in, std::string_view source) {
  static constexpr std::array<std::string_view, 6> kColumns = {
      "id", "lat", "lon", "population", "region_id", "subregion_id"};

  std::string line;
  if (!std::getline(in, line)) data_error("MissingColumn", std::string(source) + ": empty file, no header");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  const auto header = split_csv_line(line);
  std::array<std::size_t, kColumns.size()> index{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find(header.begin(), header.end(), kColumns[c]);
    if (it == header.end()) {
      data_error("MissingColumn", std::string(source) + ": header lacks column '" + std::string(kColumns[c]) + "'");
    }
    index[c] = static_cast<std::size_t>(it - header.begin());
  }

  SettlementSet out;
  std::unordered_set<std::string> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::string row_where = std::string(source) + " row " + std::to_string(row);
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      data_error("MalformedRow", row_where + ": expected " + std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
    }
    Settlement s;
    s.id = std::string(fields[index[0]]);
    const std::string where = row_where + " (id " + s.id + ")";
    const double lat = parse_double(fields[index[1]], where + " lat");
    const double lon = parse_double(fields[index[2]], where + " lon");
    s.location = make_point(lat, lon, where);
    s.population = parse_population(fields[index[3]], where);
    s.region_id = std::string(fields[index[4]]);
    s.subregion_id = std::string(fields[index[5]]);
    check_settlement(s, where, seen);
    out.push_back(std::move(s));
  }
  return out;
}

SettlementSet parse_settlements_geojson(std::string_view text, std::string_view source) {
  const json doc = parse_json(text, source);
  const json& features = features_of(doc, source);
  SettlementSet out;
  std::unordered_set<std::string> seen;
  for (std::size_t f = 0; f < features.size(); ++f) {
    const std::string where = std::string(source) + " feature " + std::to_string(f);
    const json& feat = features[f];
    const json& geom = feat.contains("geometry") ? feat["geometry"] : json();
    if (!geom.is_object() || geom.value("type", "") != "Point") {
      data_error("UnsupportedGeometry", where + ": settlements must be Point features");
    }
    const json& props = feat.contains("properties") ? feat["properties"] : json();
    for (const char* key : {"id", "population", "region_id", "subregion_id"}) {
      if (!props.is_object() || !props.contains(key)) {
        data_error("MissingColumn", where + ": missing property '" + key + "'");
      }
    }
    auto as_text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    Settlement s;
    s.id = as_text(props["id"]);
    s.location = point_from_position(geom.contains("coordinates") ? geom["coordinates"] : json(), where);
    const json& pop = props["population"];
    if (!pop.is_number()) data_error("MalformedValue", where + ": population must be numeric");
    if (pop.get<double>() < 0) data_error("NegativePopulation", where + ": population " + pop.dump());
    if (!pop.is_number_integer()) data_error("MalformedValue", where + ": population must be an integer");
    s.population = pop.get<std::uint64_t>();
    s.region_id = as_text(props["region_id"]);
    s.subregion_id = as_text(props["subregion_id"]);
    check_settlement(s, where, seen);
    out.push_back(std::move(s));
  }
  return out;
}

std::string settlements_to_csv(std::span<const Settlement> settlements) {
  std::string out = "id,lat,lon,population,region_id,subregion_id\n";
  for (const auto& s : settlements) {
    out += s.id;
    out += ',';
    out += format_shortest(s.location.lat);
    out += ',';
    out += format_shortest(s.location.lon);
    out += ',';
    out += std::to_string(s.population);
    out += ',';
    out += s.region_id;
    out += ',';
    out += s.subregion_id;
    out += '\n';
  }
  return out;
}

FiberLineSet load_fiber_lines(const std::filesystem::path& path) {
  return parse_fiber_lines(read_file(path), path.string());
}

FiberLineSet parse_fiber_lines(std::string_view geojson, std::string_view source) {
  const json doc = parse_json(geojson, source);
  return FiberLineSet{collect_lines(features_of(doc, source), source)};
}

RoadGraph load_road_graph(const std::filesystem::path& path) {
  return parse_road_graph(read_file(path), path.string());
}

RoadGraph parse_road_graph(std::string_view geojson, std::string_view source) {
  const json doc = parse_json(geojson, source);
  const auto lines = collect_lines(features_of(doc, source), source);

  RoadGraph graph;
  std::map<std::pair<double, double>, std::size_t> vertex_of;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_of;
  auto vertex = [&](const GeoPoint& p) {
    auto [it, inserted] = vertex_of.try_emplace({p.lat, p.lon}, graph.vertices.size());
    if (inserted) graph.vertices.push_back(p);
    return it->second;
  };
  for (const auto& line : lines) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      const std::size_t a = vertex(line[i - 1]);
      const std::size_t b = vertex(line[i]);
      if (a == b) continue;  // repeated coordinate inside a line
      const double len = haversine_km(line[i - 1], line[i]);
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_of.try_emplace({key.first, key.second}, graph.edges.size());
      if (inserted) {
        graph.edges.push_back({key.first, key.second, len});
      } else {
        graph.edges[it->second].length_km = std::min(graph.edges[it->second].length_km, len);
      }
    }
  }
  return graph;
}

std::size_t RoadGraph::component_count() const {
  std::vector<std::size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = vertices.size();
  for (const auto& e : edges) {
    auto a = find(e.u), b = find(e.v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

double haversine_km(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double dlat = to_rad(b.lat - a.lat);
  const double dlon = to_rad(b.lon - a.lon);
  const double s1 = std::sin(dlat / 2);
  const double s2 = std::sin(dlon / 2);
  double h = s1 * s1 + std::cos(to_rad(a.lat)) * std::cos(to_rad(b.lat)) * s2 * s2;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

double point_segment_distance_km(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) noexcept {
  const double k = std::cos(to_rad(p.lat));
  auto project = [&](const GeoPoint& q) {
    double dlon = q.lon - p.lon;
    if (dlon > 180.0) dlon -= 360.0;
    if (dlon < -180.0) dlon += 360.0;
    return std::pair{kEarthRadiusKm * to_rad(dlon) * k, kEarthRadiusKm * to_rad(q.lat - p.lat)};
  };
  const auto [ax, ay] = project(a);
  const auto [bx, by] = project(b);
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return haversine_km(p, a);
  const double t = std::clamp(-(ax * dx + ay * dy) / len2, 0.0, 1.0);
  if (t == 0.0) return haversine_km(p, a);
  if (t == 1.0) return haversine_km(p, b);
  return std::hypot(ax + t * dx, ay + t * dy);
}

double distance_to_lines_km(const GeoPoint& p, const FiberLineSet& lines) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& line : lines.lines) {
    for (std::size_t i = 1; i < line.size(); ++i) {
      best = std::min(best, point_segment_distance_km(p, line[i - 1], line[i]));
    }
  }
  return best;
}

bool within_buffer(const GeoPoint& p, const FiberLineSet& lines, double radius_km) {
  if (!(radius_km > 0.0)) {
    throw Error(ErrorCategory::Validation, "geodata", "InvalidRadius", "buffer radius must be positive");
  }
  return distance_to_lines_km(p, lines) <= radius_km;
}

}  // namespace fiberplan::geo
