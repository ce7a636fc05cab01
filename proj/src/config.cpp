#include "seatrack/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace seatrack {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct Binder {
  std::map<std::string, std::function<void(const std::string&)>> setters;

  void number(const std::string& key, double* target) {
    setters[key] = [target, key](const std::string& v) {
      std::size_t pos = 0;
      *target = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("config: bad value for " + key);
    };
  }
  void integer(const std::string& key, Timestamp* target) {
    setters[key] = [target, key](const std::string& v) {
      std::size_t pos = 0;
      *target = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("config: bad value for " + key);
    };
  }
  void integer(const std::string& key, int* target) {
    setters[key] = [target, key](const std::string& v) {
      std::size_t pos = 0;
      *target = std::stoi(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("config: bad value for " + key);
    };
  }
};

Binder make_binder(RunConfig& c) {
  Binder b;
  b.number("noise.max_speed_knots", &c.noise.max_speed_knots);
  b.number("noise.abrupt_turn_deg", &c.noise.abrupt_turn_deg);
  b.number("noise.offcourse_turn_deg", &c.noise.offcourse_turn_deg);
  b.number("noise.offcourse_speed_ratio", &c.noise.offcourse_speed_ratio);
  b.number("noise.duplicate_epsilon_m", &c.noise.duplicate_epsilon_m);
  b.number("noise.min_speed_knots", &c.noise.min_speed_knots);

  b.number("tracker.min_speed_knots", &c.tracker.min_speed_knots);
  b.number("tracker.speed_change_pct", &c.tracker.speed_change_pct);
  b.integer("tracker.gap_period_s", &c.tracker.gap_period_s);
  b.number("tracker.turn_threshold_deg", &c.tracker.turn_threshold_deg);
  b.number("tracker.stop_radius_m", &c.tracker.stop_radius_m);
  b.integer("tracker.history_points", &c.tracker.history_points);

  b.integer("window.range_s", &c.window.range_s);
  b.integer("window.slide_s", &c.window.slide_s);

  b.number("grid.min_lon", &c.grid.min_lon);
  b.number("grid.min_lat", &c.grid.min_lat);
  b.number("grid.max_lon", &c.grid.max_lon);
  b.number("grid.max_lat", &c.grid.max_lat);
  b.integer("grid.nx", &c.grid.nx);
  b.integer("grid.ny", &c.grid.ny);

  b.number("ce.fast_speed_knots", &c.ce.fast_speed_knots);
  b.integer("ce.picking_max_gap_s", &c.ce.picking_max_gap_s);
  b.number("ce.picking_max_dist_m", &c.ce.picking_max_dist_m);
  b.number("ce.delay_speed_knots", &c.ce.delay_speed_knots);
  b.number("ce.approach_radius_m", &c.ce.approach_radius_m);
  b.number("ce.approach_cone_deg", &c.ce.approach_cone_deg);

  b.number("ports.radius_m", &c.port_radius_m);
  return b;
}

}  // namespace

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  Binder binder = make_binder(cfg);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = binder.setters.find(key);
    if (it == binder.setters.end()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
    it->second(value);
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(f);
}

void write_config(std::ostream& os, const RunConfig& c) {
  os << "# tracking and recognition parameters\n"
     << "noise.max_speed_knots = " << c.noise.max_speed_knots << "\n"
     << "noise.abrupt_turn_deg = " << c.noise.abrupt_turn_deg << "\n"
     << "noise.offcourse_turn_deg = " << c.noise.offcourse_turn_deg << "\n"
     << "noise.offcourse_speed_ratio = " << c.noise.offcourse_speed_ratio << "\n"
     << "noise.duplicate_epsilon_m = " << c.noise.duplicate_epsilon_m << "\n"
     << "noise.min_speed_knots = " << c.noise.min_speed_knots << "\n"
     << "tracker.min_speed_knots = " << c.tracker.min_speed_knots << "\n"
     << "tracker.speed_change_pct = " << c.tracker.speed_change_pct << "\n"
     << "tracker.gap_period_s = " << c.tracker.gap_period_s << "\n"
     << "tracker.turn_threshold_deg = " << c.tracker.turn_threshold_deg << "\n"
     << "tracker.stop_radius_m = " << c.tracker.stop_radius_m << "\n"
     << "tracker.history_points = " << c.tracker.history_points << "\n"
     << "window.range_s = " << c.window.range_s << "\n"
     << "window.slide_s = " << c.window.slide_s << "\n"
     << "grid.min_lon = " << c.grid.min_lon << "\n"
     << "grid.min_lat = " << c.grid.min_lat << "\n"
     << "grid.max_lon = " << c.grid.max_lon << "\n"
     << "grid.max_lat = " << c.grid.max_lat << "\n"
     << "grid.nx = " << c.grid.nx << "\n"
     << "grid.ny = " << c.grid.ny << "\n"
     << "ce.fast_speed_knots = " << c.ce.fast_speed_knots << "\n"
     << "ce.picking_max_gap_s = " << c.ce.picking_max_gap_s << "\n"
     << "ce.picking_max_dist_m = " << c.ce.picking_max_dist_m << "\n"
     << "ce.delay_speed_knots = " << c.ce.delay_speed_knots << "\n"
     << "ce.approach_radius_m = " << c.ce.approach_radius_m << "\n"
     << "ce.approach_cone_deg = " << c.ce.approach_cone_deg << "\n"
     << "ports.radius_m = " << c.port_radius_m << "\n";
}

}  // namespace seatrack
