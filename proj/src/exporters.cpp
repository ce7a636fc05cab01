#include "seatrack/exporters.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace seatrack {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, end);
}

void write_critical_csv(std::ostream& os, std::span<const CriticalPoint> points) {
  os << "mmsi,t_start,t_end,lon,lat,event_type,speed,heading\n";
  for (const CriticalPoint& c : points) {
    os << c.mmsi << ',' << c.t_start << ',' << c.t_end << ',' << format_double(c.pos.lon)
       << ',' << format_double(c.pos.lat) << ',' << to_string(c.annotation) << ','
       << format_double(c.velocity.speed_knots) << ',' << format_double(c.velocity.heading_deg)
       << '\n';
  }
  if (!os) throw IoFailure("write_critical_csv: stream failure");
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw IoFailure("bad numeric field: " + s);
  }
  return v;
}

}  // namespace

std::vector<CriticalPoint> read_critical_csv(std::istream& is) {
  std::vector<CriticalPoint> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first && line.rfind("mmsi,", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const auto f = split_csv(line);
    if (f.size() != 8) throw IoFailure("bad critical-point row: " + line);
    CriticalPoint c;
    c.mmsi = static_cast<Mmsi>(std::stoul(f[0]));
    c.t_start = std::stoll(f[1]);
    c.t_end = std::stoll(f[2]);
    c.pos.lon = parse_double(f[3]);
    c.pos.lat = parse_double(f[4]);
    auto a = annotation_from(f[5]);
    if (!a) throw IoFailure("unknown event type: " + f[5]);
    c.annotation = *a;
    c.velocity.speed_knots = parse_double(f[6]);
    c.velocity.heading_deg = parse_double(f[7]);
    out.push_back(c);
  }
  return out;
}

void write_geojson(std::ostream& os, std::span<const CriticalPoint> points) {
  nlohmann::json features = nlohmann::json::array();
  for (const CriticalPoint& c : points) {
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {c.pos.lon, c.pos.lat}}}},
        {"properties",
         {{"mmsi", c.mmsi},
          {"t_start", c.t_start},
          {"t_end", c.t_end},
          {"event_type", std::string(to_string(c.annotation))},
          {"speed_knots", c.velocity.speed_knots},
          {"heading_deg", c.velocity.heading_deg}}},
    });
  }
  nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
  os << doc.dump(2) << '\n';
  if (!os) throw IoFailure("write_geojson: stream failure");
}

void write_kml(std::ostream& os, std::span<const CriticalPoint> points) {
  std::map<Mmsi, std::vector<const CriticalPoint*>> by_vessel;
  for (const CriticalPoint& c : points) by_vessel[c.mmsi].push_back(&c);
  for (auto& [mmsi, pts] : by_vessel) {
    std::sort(pts.begin(), pts.end(),
              [](const CriticalPoint* a, const CriticalPoint* b) { return merge_less(*a, *b); });
  }

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n"
     << "<Document>\n<name>trajectory synopses</name>\n";
  for (const auto& [mmsi, pts] : by_vessel) {
    os << "<Folder><name>vessel " << mmsi << "</name>\n";
    for (const CriticalPoint* c : pts) {
      os << "<Placemark><name>" << to_string(c->annotation) << "</name>"
         << "<description>t_start=" << c->t_start << " t_end=" << c->t_end
         << " speed=" << format_double(c->velocity.speed_knots)
         << "kn heading=" << format_double(c->velocity.heading_deg) << "</description>"
         << "<Point><coordinates>" << format_double(c->pos.lon) << ','
         << format_double(c->pos.lat) << ",0</coordinates></Point></Placemark>\n";
    }
    if (pts.size() > 1) {
      os << "<Placemark><name>track " << mmsi << "</name><LineString><coordinates>";
      for (const CriticalPoint* c : pts) {
        os << format_double(c->pos.lon) << ',' << format_double(c->pos.lat) << ",0 ";
      }
      os << "</coordinates></LineString></Placemark>\n";
    }
    os << "</Folder>\n";
  }
  os << "</Document>\n</kml>\n";
  if (!os) throw IoFailure("write_kml: stream failure");
}

void export_points(std::ostream& os, std::span<const CriticalPoint> points,
                   ExportFormat format) {
  switch (format) {
    case ExportFormat::kCsv:     write_critical_csv(os, points); break;
    case ExportFormat::kGeoJson: write_geojson(os, points); break;
    case ExportFormat::kKml:     write_kml(os, points); break;
  }
}

}  // namespace seatrack
