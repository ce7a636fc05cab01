#include "seatrack/grid.hpp"

#include <algorithm>
#include <cmath>

namespace seatrack {

namespace {

constexpr double kMetersPerDegLat = kEarthRadiusM * 3.14159265358979323846 / 180.0;

bool on_segment(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
  const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

struct Rect {
  double lo_x, lo_y, hi_x, hi_y;
  bool contains(const GeoPoint& p) const {
    return p.lon >= lo_x && p.lon <= hi_x && p.lat >= lo_y && p.lat <= hi_y;
  }
};

int orient(const GeoPoint& a, const GeoPoint& b, const GeoPoint& c) {
  const double v = (b.lon - a.lon) * (c.lat - a.lat) - (b.lat - a.lat) * (c.lon - a.lon);
  return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

bool segments_intersect(const GeoPoint& a, const GeoPoint& b,
                        const GeoPoint& c, const GeoPoint& d) {
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(c, a, b)) return true;
  if (o2 == 0 && on_segment(d, a, b)) return true;
  if (o3 == 0 && on_segment(a, c, d)) return true;
  if (o4 == 0 && on_segment(b, c, d)) return true;
  return false;
}

bool polygon_overlaps_rect(const AreaPolygon& poly, const Rect& r) {
  for (const GeoPoint& v : poly.ring) {
    if (r.contains(v)) return true;
  }
  const GeoPoint corners[4] = {
      {r.lo_x, r.lo_y}, {r.hi_x, r.lo_y}, {r.hi_x, r.hi_y}, {r.lo_x, r.hi_y}};
  for (const GeoPoint& c : corners) {
    if (point_in_polygon(c, poly)) return true;
  }
  const std::size_t n = poly.ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GeoPoint& a = poly.ring[i];
    const GeoPoint& b = poly.ring[(i + 1) % n];
    for (int e = 0; e < 4; ++e) {
      if (segments_intersect(a, b, corners[e], corners[(e + 1) % 4])) return true;
    }
  }
  return false;
}

}  // namespace

CellId cell_of(const GeoPoint& p, const GridConfig& cfg) {
  const double cw = (cfg.max_lon - cfg.min_lon) / cfg.nx;
  const double ch = (cfg.max_lat - cfg.min_lat) / cfg.ny;
  int ix = static_cast<int>(std::floor((p.lon - cfg.min_lon) / cw));
  int iy = static_cast<int>(std::floor((p.lat - cfg.min_lat) / ch));
  ix = std::clamp(ix, 0, cfg.nx - 1);
  iy = std::clamp(iy, 0, cfg.ny - 1);
  return {ix, iy};
}

bool point_in_polygon(const GeoPoint& p, const AreaPolygon& poly) {
  const std::size_t n = poly.ring.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const GeoPoint& a = poly.ring[i];
    const GeoPoint& b = poly.ring[j];
    if (on_segment(p, a, b)) return true;
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat);
      if (p.lon < x) inside = !inside;
    }
  }
  return inside;
}

GridIndex::GridIndex(GridConfig cfg, std::vector<AreaPolygon> areas, std::vector<Port> ports)
    : cfg_(cfg), areas_(std::move(areas)), ports_(std::move(ports)) {
  if (cfg_.nx < 1 || cfg_.ny < 1 || cfg_.max_lon <= cfg_.min_lon ||
      cfg_.max_lat <= cfg_.min_lat) {
    throw std::invalid_argument("GridIndex: degenerate grid configuration");
  }

  const std::size_t cells = static_cast<std::size_t>(cfg_.nx) * cfg_.ny;
  cell_areas_.resize(cells);
  cell_ports_.resize(cells);
  cell_vessels_.resize(cells);

  const double cw = (cfg_.max_lon - cfg_.min_lon) / cfg_.nx;
  const double ch = (cfg_.max_lat - cfg_.min_lat) / cfg_.ny;
  const double worst_lat = std::max(std::fabs(cfg_.min_lat), std::fabs(cfg_.max_lat));
  const double m_per_deg_lon = kMetersPerDegLat * std::cos(deg2rad(worst_lat));
  min_cell_extent_m_ = std::min(ch * kMetersPerDegLat, cw * std::max(m_per_deg_lon, 1.0));

  for (std::size_t a = 0; a < areas_.size(); ++a) {
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const GeoPoint& v : areas_[a].ring) {
      if (v.lon < cfg_.min_lon || v.lon > cfg_.max_lon || v.lat < cfg_.min_lat ||
          v.lat > cfg_.max_lat) {
        throw GeometryOutOfBounds("area " + std::to_string(areas_[a].id) +
                                  " outside the grid bounding box");
      }
      lo_x = std::min(lo_x, v.lon);
      hi_x = std::max(hi_x, v.lon);
      lo_y = std::min(lo_y, v.lat);
      hi_y = std::max(hi_y, v.lat);
    }
    const CellId lo = cell_of({lo_x, lo_y}, cfg_);
    const CellId hi = cell_of({hi_x, hi_y}, cfg_);
    for (int iy = lo.iy; iy <= hi.iy; ++iy) {
      for (int ix = lo.ix; ix <= hi.ix; ++ix) {
        const Rect r{cfg_.min_lon + ix * cw, cfg_.min_lat + iy * ch,
                     cfg_.min_lon + (ix + 1) * cw, cfg_.min_lat + (iy + 1) * ch};
        if (polygon_overlaps_rect(areas_[a], r)) {
          cell_areas_[flat({ix, iy})].push_back(static_cast<int>(a));
        }
      }
    }
  }

  for (std::size_t pi = 0; pi < ports_.size(); ++pi) {
    const Port& port = ports_[pi];
    if (port.pos.lon < cfg_.min_lon || port.pos.lon > cfg_.max_lon ||
        port.pos.lat < cfg_.min_lat || port.pos.lat > cfg_.max_lat) {
      throw GeometryOutOfBounds("port " + std::to_string(port.id) +
                                " outside the grid bounding box");
    }
    cell_ports_[flat(cell(port.pos))].push_back(static_cast<int>(pi));
    max_port_radius_m_ = std::max(max_port_radius_m_, port.radius_m);
  }
}

int GridIndex::ring_for(double radius_m) const {
  if (radius_m <= min_cell_extent_m_) return 1;
  return static_cast<int>(std::ceil(radius_m / min_cell_extent_m_));
}

std::vector<int> GridIndex::areas_at(const GeoPoint& p) const {
  std::vector<int> out;
  for (int idx : cell_areas_[flat(cell(p))]) {
    if (point_in_polygon(p, areas_[idx])) out.push_back(areas_[idx].id);
  }
  return out;
}

bool GridIndex::near_ports(const GeoPoint& p) const {
  if (ports_.empty()) return false;
  const CellId c = cell(p);
  const int ring = ring_for(max_port_radius_m_);
  for (int dy = -ring; dy <= ring; ++dy) {
    for (int dx = -ring; dx <= ring; ++dx) {
      const int ix = c.ix + dx, iy = c.iy + dy;
      if (ix < 0 || ix >= cfg_.nx || iy < 0 || iy >= cfg_.ny) continue;
      for (int pi : cell_ports_[flat({ix, iy})]) {
        if (haversine_m(p, ports_[pi].pos) <= ports_[pi].radius_m) return true;
      }
    }
  }
  return false;
}

void GridIndex::refresh_vessels(const std::vector<std::pair<Mmsi, GeoPoint>>& vessels) {
  vessel_pos_.clear();
  for (auto& bucket : cell_vessels_) bucket.clear();
  for (const auto& [mmsi, pos] : vessels) {
    vessel_pos_[mmsi] = pos;
    cell_vessels_[flat(cell(pos))].push_back(mmsi);
  }
}

std::vector<std::pair<Mmsi, GeoPoint>> GridIndex::nearby_vessels(Mmsi v,
                                                                 double radius_m) const {
  auto it = vessel_pos_.find(v);
  if (it == vessel_pos_.end()) {
    throw UnknownVessel("vessel " + std::to_string(v) + " not in the current snapshot");
  }
  const GeoPoint& p = it->second;
  const CellId c = cell(p);
  const int ring = ring_for(radius_m);

  std::vector<std::pair<Mmsi, GeoPoint>> out;
  for (int dy = -ring; dy <= ring; ++dy) {
    for (int dx = -ring; dx <= ring; ++dx) {
      const int ix = c.ix + dx, iy = c.iy + dy;
      if (ix < 0 || ix >= cfg_.nx || iy < 0 || iy >= cfg_.ny) continue;
      for (Mmsi other : cell_vessels_[flat({ix, iy})]) {
        if (other == v) continue;
        const GeoPoint& q = vessel_pos_.at(other);
        if (haversine_m(p, q) <= radius_m) out.emplace_back(other, q);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool GridIndex::heading_to_vessels(Mmsi v, double heading_deg, double radius_m,
                                   double cone_deg) const {
  const auto neighbors = nearby_vessels(v, radius_m);   // validates v
  const GeoPoint& p = vessel_pos_.at(v);
  for (const auto& [other, q] : neighbors) {
    (void)other;
    const double bearing = initial_bearing_deg(p, q);
    if (heading_delta_deg(bearing, heading_deg) <= cone_deg / 2.0) return true;
  }
  return false;
}

}  // namespace seatrack
