#pragma once

#include <optional>
#include <string_view>
#include <tuple>

#include "seatrack/geo.hpp"

namespace seatrack {

/// One decoded AIS position tuple.
struct PositionReport {
  Mmsi mmsi = 0;
  GeoPoint pos;
  Timestamp tau = 0;

  friend bool operator==(const PositionReport&, const PositionReport&) = default;
};

enum class Annotation {
  kStopped,
  kGapStart,
  kGapEnd,
  kTurn,
  kSpeedChange,
  kLowSpeedStart,
  kLowSpeedEnd,
};

std::string_view to_string(Annotation a);
std::optional<Annotation> annotation_from(std::string_view s);

/// Annotated synopsis point. t_start < t_end only for kStopped; every other
/// annotation is instantaneous (t_start == t_end).
struct CriticalPoint {
  Mmsi mmsi = 0;
  Timestamp t_start = 0;
  Timestamp t_end = 0;
  GeoPoint pos;
  Annotation annotation = Annotation::kTurn;
  VelocityVector velocity;

  friend bool operator==(const CriticalPoint&, const CriticalPoint&) = default;
};

/// Deterministic merge order for critical points coming out of parallel shards.
inline auto merge_key(const CriticalPoint& c) {
  return std::make_tuple(c.t_start, c.mmsi, static_cast<int>(c.annotation), c.t_end);
}

inline bool merge_less(const CriticalPoint& a, const CriticalPoint& b) {
  return merge_key(a) < merge_key(b);
}

}  // namespace seatrack
