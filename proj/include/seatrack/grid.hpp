#pragma once

#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "seatrack/geo.hpp"

namespace seatrack {

/// Equal-cell partition of the surveillance area.
struct GridConfig {
  double min_lon = 0.0;
  double min_lat = 0.0;
  double max_lon = 1.0;
  double max_lat = 1.0;
  int nx = 30;
  int ny = 30;
};

struct CellId {
  int ix = 0;
  int iy = 0;
  auto operator<=>(const CellId&) const = default;
};

struct AreaPolygon {
  int id = 0;
  std::vector<GeoPoint> ring;   // closed implicitly (last edge back to front)
  bool protected_area = true;
};

struct Port {
  int id = 0;
  GeoPoint pos;
  double radius_m = 2000.0;
};

struct GeometryOutOfBounds : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownVessel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cell of a point: floor arithmetic on the coordinates, clamped onto the
/// grid so that out-of-area vessels land in the nearest border cell.
CellId cell_of(const GeoPoint& p, const GridConfig& cfg);

/// Ray-crossing containment test on planar lon/lat; boundary points count
/// as inside.
bool point_in_polygon(const GeoPoint& p, const AreaPolygon& poly);

/// Static geometry index plus a per-query vessel snapshot. Cells know which
/// areas overlap them and which ports sit in them, so point queries only
/// touch geometry registered in the local neighborhood.
class GridIndex {
 public:
  GridIndex(GridConfig cfg, std::vector<AreaPolygon> areas, std::vector<Port> ports);

  const GridConfig& config() const { return cfg_; }
  const std::vector<AreaPolygon>& areas() const { return areas_; }
  const std::vector<Port>& ports() const { return ports_; }

  CellId cell(const GeoPoint& p) const { return cell_of(p, cfg_); }

  /// Ids of every area containing p.
  std::vector<int> areas_at(const GeoPoint& p) const;

  bool in_area(const GeoPoint& p) const { return !areas_at(p).empty(); }

  /// True when p lies within some port's radius.
  bool near_ports(const GeoPoint& p) const;

  /// Replace the vessel-position snapshot used by proximity queries.
  void refresh_vessels(const std::vector<std::pair<Mmsi, GeoPoint>>& vessels);

  /// All other vessels within radius_m of v's snapshot position, sorted by id.
  std::vector<std::pair<Mmsi, GeoPoint>> nearby_vessels(Mmsi v, double radius_m) const;

  /// True when v's course points at some vessel within radius_m, with at
  /// most cone_deg/2 bearing error.
  bool heading_to_vessels(Mmsi v, double heading_deg, double radius_m,
                          double cone_deg) const;

  /// Smallest cell extent in meters; proximity searches widen their cell
  /// ring when the query radius exceeds it.
  double min_cell_extent_m() const { return min_cell_extent_m_; }

 private:
  std::size_t flat(CellId c) const {
    return static_cast<std::size_t>(c.iy) * cfg_.nx + c.ix;
  }
  int ring_for(double radius_m) const;

  GridConfig cfg_;
  std::vector<AreaPolygon> areas_;
  std::vector<Port> ports_;
  std::vector<std::vector<int>> cell_areas_;
  std::vector<std::vector<int>> cell_ports_;
  double min_cell_extent_m_ = 0.0;
  double max_port_radius_m_ = 0.0;

  std::unordered_map<Mmsi, GeoPoint> vessel_pos_;
  std::vector<std::vector<Mmsi>> cell_vessels_;
};

}  // namespace seatrack
