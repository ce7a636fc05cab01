#include "seatrack/geo.hpp"

#include <algorithm>
#include <cmath>

namespace seatrack {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double deg2rad(double deg) { return deg * kPi / 180.0; }
double rad2deg(double rad) { return rad * 180.0 / kPi; }

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lon) && std::isfinite(p.lat) &&
         p.lon >= -180.0 && p.lon <= 180.0 &&
         p.lat >= -90.0 && p.lat <= 90.0;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = deg2rad(a.lat);
  const double lat2 = deg2rad(b.lat);
  const double dlat = deg2rad(b.lat - a.lat);
  const double dlon = deg2rad(b.lon - a.lon);

  const double sl = std::sin(dlat / 2.0);
  const double so = std::sin(dlon / 2.0);
  double h = sl * sl + std::cos(lat1) * std::cos(lat2) * so * so;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

double normalize_heading(double deg) {
  double h = std::fmod(deg, 360.0);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h = 0.0;   // fmod can land exactly on 360 after the fixup
  return h;
}

double initial_bearing_deg(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = deg2rad(a.lat);
  const double lat2 = deg2rad(b.lat);
  const double dlon = deg2rad(b.lon - a.lon);

  const double y = std::sin(dlon) * std::cos(lat2);
  const double x = std::cos(lat1) * std::sin(lat2) -
                   std::sin(lat1) * std::cos(lat2) * std::cos(dlon);
  if (x == 0.0 && y == 0.0) return 0.0;
  return normalize_heading(rad2deg(std::atan2(y, x)));
}

double heading_delta_deg(double h1, double h2) {
  double d = std::fabs(normalize_heading(h1) - normalize_heading(h2));
  if (d > 180.0) d = 360.0 - d;
  return d;
}

double signed_heading_change_deg(double from_deg, double to_deg) {
  double d = normalize_heading(to_deg) - normalize_heading(from_deg);
  if (d > 180.0) d -= 360.0;
  if (d <= -180.0) d += 360.0;
  return d;
}

double knots(double meters, double seconds) {
  return meters / seconds * 3600.0 / kMetersPerNauticalMile;
}

VelocityVector velocity_between(const GeoPoint& p1, Timestamp t1,
                                const GeoPoint& p2, Timestamp t2) {
  if (t2 == t1) throw EqualTimestamps{};
  if (t2 < t1) throw std::invalid_argument("velocity_between: t2 < t1");

  const double dist = haversine_m(p1, p2);
  VelocityVector v;
  v.speed_knots = knots(dist, static_cast<double>(t2 - t1));
  v.heading_deg = dist > 0.0 ? initial_bearing_deg(p1, p2) : 0.0;
  return v;
}

GeoPoint destination_point(const GeoPoint& p, double bearing_deg, double dist_m) {
  const double delta = dist_m / kEarthRadiusM;
  const double theta = deg2rad(bearing_deg);
  const double lat1 = deg2rad(p.lat);
  const double lon1 = deg2rad(p.lon);

  const double lat2 = std::asin(std::sin(lat1) * std::cos(delta) +
                                std::cos(lat1) * std::sin(delta) * std::cos(theta));
  const double lon2 =
      lon1 + std::atan2(std::sin(theta) * std::sin(delta) * std::cos(lat1),
                        std::cos(delta) - std::sin(lat1) * std::sin(lat2));

  GeoPoint out;
  out.lat = rad2deg(lat2);
  out.lon = rad2deg(lon2);
  if (out.lon > 180.0) out.lon -= 360.0;
  if (out.lon < -180.0) out.lon += 360.0;
  return out;
}

}  // namespace seatrack
