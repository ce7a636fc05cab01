#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "seatrack/points.hpp"

namespace seatrack {

struct WindowSpec {
  Timestamp range_s = 21600;   // omega
  Timestamp slide_s = 3600;    // beta

  bool valid() const { return slide_s > 0 && slide_s <= range_s; }
};

struct ZeroRaw : std::invalid_argument {
  ZeroRaw() : std::invalid_argument("compression_ratio: zero raw count") {}
};

struct EmptySynopsis : std::invalid_argument {
  EmptySynopsis() : std::invalid_argument("rmse: synopsis has no points") {}
};

/// Fraction of raw accepted positions discarded by synopsis construction.
double compression_ratio(std::uint64_t raw_count, std::uint64_t critical_count);

/// Root-mean-square deviation in meters between a vessel's raw accepted
/// positions and the time-aligned reconstruction from its synopsis. Dropped
/// raw points compare against the linear lon/lat interpolation between the
/// bracketing critical points; a stop spans its whole interval at the
/// centroid; points before the first or after the last critical point fall
/// back to the nearest one. Throws EmptySynopsis when there is nothing to
/// reconstruct from.
double synopsis_rmse(std::span<const PositionReport> raw,
                     std::span<const CriticalPoint> synopsis);

/// Window-scoped retention of critical points per vessel.
class SynopsisStore {
 public:
  explicit SynopsisStore(WindowSpec spec) : spec_(spec) {
    if (!spec_.valid()) throw std::invalid_argument("SynopsisStore: invalid window spec");
  }

  void add(const CriticalPoint& cp);

  /// Evict and return every point with t_end <= now - range; what remains
  /// lies entirely in (now - range, now].
  std::vector<CriticalPoint> slide(Timestamp now);

  std::size_t size() const { return size_; }
  const WindowSpec& spec() const { return spec_; }
  const std::map<Mmsi, std::vector<CriticalPoint>>& by_vessel() const { return points_; }

 private:
  WindowSpec spec_;
  std::size_t size_ = 0;
  std::map<Mmsi, std::vector<CriticalPoint>> points_;
};

/// Ordered critical points between two stops. Segments before the first or
/// after the last stop of a vessel's history are open-ended.
struct Trip {
  Mmsi mmsi = 0;
  std::vector<CriticalPoint> points;
  bool open_start = false;
  bool open_end = false;
  Timestamp travel_time_s = 0;   // departure of first stop to arrival at next
  double distance_m = 0.0;       // sum of legs between consecutive points
};

/// Break one vessel's chronologically sorted critical points into trips
/// delimited by stopped points.
std::vector<Trip> reconstruct_trips(std::span<const CriticalPoint> points);

}  // namespace seatrack
