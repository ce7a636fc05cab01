#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "seatrack/config.hpp"
#include "seatrack/grid.hpp"
#include "seatrack/points.hpp"

namespace seatrack {

/// Synthetic-fleet recipe. Vessels follow parallel east-west lanes spaced
/// wider than the approach radius, so the only vessel interactions are the
/// planted ones. Pair scenarios get dedicated lanes.
struct SyntheticFleetSpec {
  int straight = 4;
  int turning = 4;
  int anchoring = 2;           // alternating port / open-sea anchorages
  int gappy = 2;               // silent periods with the vessel under way
  int delayed = 0;             // silent periods spent loitering
  int rendezvous_pairs = 0;
  int approach_pairs = 0;
  int picking_pairs = 0;

  Timestamp duration_s = 6 * 3600;
  Timestamp report_period_s = 120;
  double cruise_knots = 12.0;   // keep voyages inside the region: lower for long runs

  /// Course-change magnitudes cycled through by turning vessels. The default
  /// mixes corners below and above the usual turn threshold; pass only large
  /// ones for tracks whose corners should all be captured.
  std::vector<double> turn_cycle{4.0, 8.0, 12.0, 18.0, 25.0, 35.0};
  bool smooth_arcs = true;   // interleave gradual course changes between legs

  // injected impurities per 1000 reports
  double dup_per_kilo = 0.0;
  double outseq_per_kilo = 0.0;
  double conflict_per_kilo = 0.0;
  double spike_per_kilo = 0.0;

  int increase_factor = 1;     // trajectory replication under fresh vessel ids
  Timestamp t0 = 1622505600;   // stream epoch
};

struct InvalidSpec : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One scripted scenario and where/when to expect its detection.
struct Plant {
  enum class Kind { kStop, kGap, kDelay, kRendezvous, kFastApproach, kPicking };
  Kind kind = Kind::kStop;
  Mmsi a = 0;
  Mmsi b = 0;          // second participant, 0 if none
  Timestamp t0 = 0;    // expected span (start)
  Timestamp t1 = 0;    // expected span (end)
  GeoPoint where;
};

std::string_view to_string(Plant::Kind k);

struct FleetData {
  std::vector<PositionReport> stream;   // arrival order
  std::vector<Plant> plants;
  int vessel_count = 0;
  std::uint64_t injected_noise = 0;
};

/// Deterministic for a given (spec, seed): same bytes out every time.
FleetData generate_fleet(const SyntheticFleetSpec& spec, std::uint64_t seed);

/// Fixed synthetic geometry matching the default grid region: ports on
/// their own latitudes south of the traffic lanes, plus a few protected
/// polygons.
std::vector<Port> demo_ports(double radius_m = 2000.0);
std::vector<AreaPolygon> demo_areas();

}  // namespace seatrack
