#include "seatrack/synopsis.hpp"

#include <algorithm>
#include <cmath>

namespace seatrack {

double compression_ratio(std::uint64_t raw_count, std::uint64_t critical_count) {
  if (raw_count == 0) throw ZeroRaw{};
  if (critical_count > raw_count) critical_count = raw_count;
  return static_cast<double>(raw_count - critical_count) / static_cast<double>(raw_count);
}

namespace {

struct Anchor {
  Timestamp t;
  GeoPoint pos;
};

std::vector<Anchor> anchors_of(std::span<const CriticalPoint> synopsis) {
  std::vector<Anchor> a;
  a.reserve(synopsis.size() + 4);
  for (const CriticalPoint& cp : synopsis) {
    a.push_back({cp.t_start, cp.pos});
    if (cp.t_end != cp.t_start) a.push_back({cp.t_end, cp.pos});
  }
  std::sort(a.begin(), a.end(), [](const Anchor& x, const Anchor& y) { return x.t < y.t; });
  return a;
}

GeoPoint reconstruct_at(const std::vector<Anchor>& a, Timestamp t) {
  if (t <= a.front().t) return a.front().pos;
  if (t >= a.back().t) return a.back().pos;
  auto hi = std::lower_bound(a.begin(), a.end(), t,
                             [](const Anchor& x, Timestamp v) { return x.t < v; });
  auto lo = std::prev(hi);
  if (hi->t == lo->t) return lo->pos;
  const double f = static_cast<double>(t - lo->t) / static_cast<double>(hi->t - lo->t);
  GeoPoint p;
  p.lon = lo->pos.lon + f * (hi->pos.lon - lo->pos.lon);
  p.lat = lo->pos.lat + f * (hi->pos.lat - lo->pos.lat);
  return p;
}

}  // namespace

double synopsis_rmse(std::span<const PositionReport> raw,
                     std::span<const CriticalPoint> synopsis) {
  if (synopsis.empty()) throw EmptySynopsis{};
  if (raw.empty()) return 0.0;

  const std::vector<Anchor> a = anchors_of(synopsis);
  double sum_sq = 0.0;
  for (const PositionReport& p : raw) {
    const GeoPoint q = reconstruct_at(a, p.tau);
    const double err = haversine_m(p.pos, q);
    sum_sq += err * err;
  }
  return std::sqrt(sum_sq / static_cast<double>(raw.size()));
}

void SynopsisStore::add(const CriticalPoint& cp) {
  points_[cp.mmsi].push_back(cp);
  ++size_;
}

std::vector<CriticalPoint> SynopsisStore::slide(Timestamp now) {
  const Timestamp low = now - spec_.range_s;
  std::vector<CriticalPoint> evicted;
  for (auto it = points_.begin(); it != points_.end();) {
    auto& pts = it->second;
    auto keep = std::stable_partition(pts.begin(), pts.end(),
                                      [low](const CriticalPoint& c) { return c.t_end > low; });
    for (auto e = keep; e != pts.end(); ++e) evicted.push_back(*e);
    size_ -= static_cast<std::size_t>(std::distance(keep, pts.end()));
    pts.erase(keep, pts.end());
    it = pts.empty() ? points_.erase(it) : std::next(it);
  }
  std::sort(evicted.begin(), evicted.end(), merge_less);
  return evicted;
}

std::vector<Trip> reconstruct_trips(std::span<const CriticalPoint> points) {
  std::vector<Trip> trips;
  if (points.empty()) return trips;

  auto leg_sum = [](const std::vector<CriticalPoint>& pts) {
    double d = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      d += haversine_m(pts[i - 1].pos, pts[i].pos);
    }
    return d;
  };

  Trip cur;
  cur.mmsi = points.front().mmsi;
  cur.open_start = true;   // until a stop proves otherwise
  for (const CriticalPoint& cp : points) {
    cur.points.push_back(cp);
    if (cp.annotation == Annotation::kStopped) {
      if (cur.points.size() > 1 || !cur.open_start) {
        cur.open_end = false;
        cur.distance_m = leg_sum(cur.points);
        const CriticalPoint& first = cur.points.front();
        cur.travel_time_s =
            cur.open_start ? cp.t_start - first.t_start : cp.t_start - first.t_end;
        trips.push_back(std::move(cur));
      }
      cur = Trip{};
      cur.mmsi = cp.mmsi;
      cur.open_start = false;
      cur.points.push_back(cp);
    }
  }
  // trailing segment: open-ended unless it is just the final stop itself
  if (cur.points.size() > 1 || cur.open_start) {
    cur.open_end = true;
    cur.distance_m = leg_sum(cur.points);
    cur.travel_time_s = cur.points.back().t_start -
                        (cur.open_start ? cur.points.front().t_start : cur.points.front().t_end);
    trips.push_back(std::move(cur));
  }
  return trips;
}

}  // namespace seatrack
