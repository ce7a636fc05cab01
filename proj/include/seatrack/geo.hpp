#pragma once

#include <cstdint>
#include <stdexcept>

namespace seatrack {

using Timestamp = std::int64_t;   // UNIX epoch seconds
using Mmsi = std::uint32_t;

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kMetersPerNauticalMile = 1852.0;

/// Position in decimal degrees, lon in [-180, 180], lat in [-90, 90].
struct GeoPoint {
  double lon = 0.0;
  double lat = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

/// Speed over ground plus course over ground.
struct VelocityVector {
  double speed_knots = 0.0;
  double heading_deg = 0.0;   // [0, 360)

  friend bool operator==(const VelocityVector&, const VelocityVector&) = default;
};

double deg2rad(double deg);
double rad2deg(double rad);

/// Great-circle distance in meters on the mean-radius sphere.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Initial great-circle bearing from a to b, normalized to [0, 360).
/// Identical points yield 0.
double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b);

/// Normalize any finite heading into [0, 360).
double normalize_heading(double deg);

/// Minimal absolute circular difference between two headings, in [0, 180].
double heading_delta_deg(double h1, double h2);

/// Signed change of course from one heading to another, in (-180, 180].
/// Positive means clockwise (starboard).
double signed_heading_change_deg(double from_deg, double to_deg);

/// Convert a displacement over a duration into knots.
double knots(double meters, double seconds);

struct EqualTimestamps : std::invalid_argument {
  EqualTimestamps() : std::invalid_argument("velocity_between: equal timestamps") {}
};

/// Velocity implied by moving from (p1, t1) to (p2, t2). Requires t2 > t1;
/// equal timestamps throw (a contradicting-position case the noise filter
/// must resolve before calling). Zero displacement yields heading 0 by
/// convention; callers tracking a vessel carry the previous heading forward.
VelocityVector velocity_between(const GeoPoint& p1, Timestamp t1,
                                const GeoPoint& p2, Timestamp t2);

/// Point reached from p after traveling dist_m along the given initial bearing.
GeoPoint destination_point(const GeoPoint& p, double bearing_deg, double dist_m);

}  // namespace seatrack
