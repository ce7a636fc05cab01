#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seatrack/points.hpp"

namespace seatrack {

enum class ExportFormat { kCsv, kGeoJson, kKml };

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Column layout: mmsi,t_start,t_end,lon,lat,event_type,speed,heading.
void write_critical_csv(std::ostream& os, std::span<const CriticalPoint> points);
std::vector<CriticalPoint> read_critical_csv(std::istream& is);

/// FeatureCollection with one Point feature per critical point.
void write_geojson(std::ostream& os, std::span<const CriticalPoint> points);

/// One placemark per critical point plus one track polyline per vessel.
void write_kml(std::ostream& os, std::span<const CriticalPoint> points);

void export_points(std::ostream& os, std::span<const CriticalPoint> points,
                   ExportFormat format);

}  // namespace seatrack
