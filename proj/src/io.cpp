#include "seatrack/io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "seatrack/exporters.hpp"

namespace seatrack {

namespace {

bool parse_field(const std::string& s, double& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

bool parse_field(const std::string& s, std::int64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string f;
  std::stringstream ss(line);
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

std::vector<PositionReport> read_ais_csv(std::istream& is, AisCsvStats* stats) {
  std::vector<PositionReport> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = fields_of(line);
    std::int64_t mmsi = 0, tau = 0;
    PositionReport r;
    const bool ok = f.size() == 4 && parse_field(f[0], mmsi) && parse_field(f[1], r.pos.lon) &&
                    parse_field(f[2], r.pos.lat) && parse_field(f[3], tau) && mmsi > 0 &&
                    tau >= 0 && is_valid(r.pos);
    if (!ok) {
      // a non-numeric first row is the optional header, everything else is noise
      if (!(first && f.size() == 4)) {
        if (stats) ++stats->malformed;
      }
      first = false;
      continue;
    }
    first = false;
    r.mmsi = static_cast<Mmsi>(mmsi);
    r.tau = tau;
    out.push_back(r);
    if (stats) ++stats->parsed;
  }
  return out;
}

void write_ais_csv(std::ostream& os, std::span<const PositionReport> reports) {
  os << "mmsi,lon,lat,tau\n";
  for (const PositionReport& r : reports) {
    os << r.mmsi << ',' << format_double(r.pos.lon) << ',' << format_double(r.pos.lat) << ','
       << r.tau << '\n';
  }
}

std::vector<Port> read_ports_csv(std::istream& is, double default_radius_m) {
  std::vector<Port> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = fields_of(line);
    std::int64_t id = 0;
    Port p;
    p.radius_m = default_radius_m;
    bool ok = (f.size() == 3 || f.size() == 4) && parse_field(f[0], id) &&
              parse_field(f[1], p.pos.lon) && parse_field(f[2], p.pos.lat);
    if (ok && f.size() == 4) ok = parse_field(f[3], p.radius_m);
    if (!ok) {
      if (first) {
        first = false;
        continue;   // header
      }
      throw IoFailure("bad ports row: " + line);
    }
    first = false;
    p.id = static_cast<int>(id);
    out.push_back(p);
  }
  return out;
}

void write_ports_csv(std::ostream& os, std::span<const Port> ports) {
  os << "id,lon,lat,radius_m\n";
  for (const Port& p : ports) {
    os << p.id << ',' << format_double(p.pos.lon) << ',' << format_double(p.pos.lat) << ','
       << format_double(p.radius_m) << '\n';
  }
}

std::vector<AreaPolygon> read_areas_geojson(std::istream& is) {
  nlohmann::json doc;
  try {
    is >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure(std::string("bad areas GeoJSON: ") + e.what());
  }
  std::vector<AreaPolygon> out;
  if (!doc.contains("features")) return out;
  int next_id = 0;
  for (const auto& feat : doc["features"]) {
    const auto& geom = feat.at("geometry");
    if (geom.at("type") != "Polygon") continue;
    AreaPolygon poly;
    poly.id = next_id;
    if (feat.contains("properties") && feat["properties"].is_object()) {
      const auto& props = feat["properties"];
      if (props.contains("id") && props["id"].is_number_integer()) {
        poly.id = props["id"].get<int>();
      }
      if (props.contains("kind")) poly.protected_area = props["kind"] == "protected";
    }
    const auto& rings = geom.at("coordinates");
    if (rings.empty()) continue;
    for (const auto& vertex : rings[0]) {
      poly.ring.push_back({vertex.at(0).get<double>(), vertex.at(1).get<double>()});
    }
    // drop an explicit closing vertex; the ring closes implicitly
    if (poly.ring.size() > 1 && poly.ring.front() == poly.ring.back()) {
      poly.ring.pop_back();
    }
    if (poly.ring.size() >= 3) {
      out.push_back(std::move(poly));
      ++next_id;
    }
  }
  return out;
}

void write_areas_geojson(std::ostream& os, std::span<const AreaPolygon> areas) {
  nlohmann::json features = nlohmann::json::array();
  for (const AreaPolygon& a : areas) {
    nlohmann::json ring = nlohmann::json::array();
    for (const GeoPoint& v : a.ring) ring.push_back({v.lon, v.lat});
    if (!a.ring.empty()) ring.push_back({a.ring.front().lon, a.ring.front().lat});
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Polygon"}, {"coordinates", {ring}}}},
        {"properties", {{"id", a.id}, {"kind", a.protected_area ? "protected" : "other"}}},
    });
  }
  nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
  os << doc.dump(2) << '\n';
}

}  // namespace seatrack
