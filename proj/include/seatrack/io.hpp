#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seatrack/grid.hpp"
#include "seatrack/points.hpp"

namespace seatrack {

struct AisCsvStats {
  std::uint64_t parsed = 0;
  std::uint64_t malformed = 0;
};

/// Decoded AIS records, one "mmsi,lon,lat,tau" row per line, optional header.
/// Malformed rows are skipped and counted.
std::vector<PositionReport> read_ais_csv(std::istream& is, AisCsvStats* stats = nullptr);
void write_ais_csv(std::ostream& os, std::span<const PositionReport> reports);

/// Ports as "id,lon,lat[,radius_m]" rows; omitted radius takes the default.
std::vector<Port> read_ports_csv(std::istream& is, double default_radius_m);
void write_ports_csv(std::ostream& os, std::span<const Port> ports);

/// Protected areas as a GeoJSON FeatureCollection of Polygons (outer rings
/// only; holes are not modeled).
std::vector<AreaPolygon> read_areas_geojson(std::istream& is);
void write_areas_geojson(std::ostream& os, std::span<const AreaPolygon> areas);

}  // namespace seatrack
