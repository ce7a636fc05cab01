// Independent reference implementations used to check the library. These
// deliberately re-derive results by brute force instead of calling into the
// code paths they verify.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "seatrack/geo.hpp"
#include "seatrack/grid.hpp"
#include "seatrack/points.hpp"

namespace oracle {

using seatrack::GeoPoint;
using seatrack::Timestamp;

/// Law of inertia evaluated independently per time point: the fluent holds at
/// t iff some initiation at ts <= t has no termination in (ts, t].
inline bool holds_at_timepoint(const std::vector<Timestamp>& inits,
                               const std::vector<Timestamp>& terms, Timestamp t) {
  for (Timestamp ts : inits) {
    if (ts > t) continue;
    bool terminated = false;
    for (Timestamp tf : terms) {
      if (tf > ts && tf <= t) {
        terminated = true;
        break;
      }
    }
    if (!terminated) return true;
  }
  return false;
}

/// Winding-number containment with an explicit boundary check; boundary
/// counts as inside.
inline bool winding_inside(const GeoPoint& p, const std::vector<GeoPoint>& ring) {
  const std::size_t n = ring.size();
  auto is_left = [](const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) {
    return (b.lon - a.lon) * (c.lat - a.lat) - (c.lon - a.lon) * (b.lat - a.lat);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[(i + 1) % n];
    const double cross = is_left(a, b, p);
    if (cross == 0.0 && p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
        p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat)) {
      return true;
    }
  }
  int wn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = ring[i];
    const GeoPoint& b = ring[(i + 1) % n];
    if (a.lat <= p.lat) {
      if (b.lat > p.lat && is_left(a, b, p) > 0.0) ++wn;
    } else {
      if (b.lat <= p.lat && is_left(a, b, p) < 0.0) --wn;
    }
  }
  return wn != 0;
}

/// Root-mean-square synchronized deviation computed directly from its
/// definition: time-align every raw point onto the piecewise path through the
/// synopsis anchors, take haversine residuals.
inline double rmse_reference(const std::vector<seatrack::PositionReport>& raw,
                             const std::vector<seatrack::CriticalPoint>& synopsis) {
  struct TimePos {
    Timestamp t;
    GeoPoint p;
  };
  std::vector<TimePos> path;
  for (const auto& cp : synopsis) {
    path.push_back({cp.t_start, cp.pos});
    if (cp.t_end != cp.t_start) path.push_back({cp.t_end, cp.pos});
  }
  std::sort(path.begin(), path.end(),
            [](const TimePos& a, const TimePos& b) { return a.t < b.t; });

  double acc = 0.0;
  for (const auto& r : raw) {
    GeoPoint q;
    if (r.tau <= path.front().t) {
      q = path.front().p;
    } else if (r.tau >= path.back().t) {
      q = path.back().p;
    } else {
      std::size_t k = 1;
      while (path[k].t < r.tau) ++k;
      const auto& lo = path[k - 1];
      const auto& hi = path[k];
      if (hi.t == lo.t) {
        q = lo.p;
      } else {
        const double f = double(r.tau - lo.t) / double(hi.t - lo.t);
        q = {lo.p.lon + f * (hi.p.lon - lo.p.lon), lo.p.lat + f * (hi.p.lat - lo.p.lat)};
      }
    }
    const double e = seatrack::haversine_m(r.pos, q);
    acc += e * e;
  }
  return raw.empty() ? 0.0 : std::sqrt(acc / double(raw.size()));
}

}  // namespace oracle
