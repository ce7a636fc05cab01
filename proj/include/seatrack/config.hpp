#pragma once

#include <iosfwd>
#include <string>

#include "seatrack/grid.hpp"
#include "seatrack/noise.hpp"
#include "seatrack/synopsis.hpp"
#include "seatrack/tracker.hpp"

namespace seatrack {

struct CeConfig {
  double fast_speed_knots = 20.0;      // fast-approach speed floor
  Timestamp picking_max_gap_s = 3600;  // drop-to-pick deadline
  double picking_max_dist_m = 500.0;   // drop-to-pick stop separation
  double delay_speed_knots = 1.0;      // straight-line speed bound for a suspicious delay
  double approach_radius_m = 5000.0;   // neighborhood searched for approach targets
  double approach_cone_deg = 30.0;     // full bearing cone toward a target
};

/// Everything a run needs, loadable from a key = value file.
struct RunConfig {
  NoiseConfig noise;
  TrackerConfig tracker;
  WindowSpec window;
  GridConfig grid{23.0, 35.0, 27.0, 39.0, 30, 30};
  CeConfig ce;
  double port_radius_m = 2000.0;
};

/// Parse "section.key = value" lines; '#' starts a comment; unknown keys are
/// an error. Missing keys keep their defaults.
RunConfig parse_config(std::istream& is);
RunConfig load_config_file(const std::string& path);

/// Write every key with its current value, suitable for parse_config.
void write_config(std::ostream& os, const RunConfig& cfg);

}  // namespace seatrack
