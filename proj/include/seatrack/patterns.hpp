#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seatrack/config.hpp"
#include "seatrack/grid.hpp"
#include "seatrack/intervals.hpp"

namespace seatrack {

enum class CeType {
  kGap,
  kSuspiciousDelay,
  kPossibleRendezvous,
  kFastApproach,
  kPossiblePicking,
};

std::string_view to_string(CeType t);
std::optional<CeType> ce_type_from(std::string_view s);

/// One recognized complex event. Durative events carry an interval (possibly
/// still open at the query horizon); instantaneous ones have t_start == t_end.
struct CeInstance {
  CeType type = CeType::kGap;
  Mmsi v1 = 0;
  Mmsi v2 = 0;                // 0 for single-vessel events
  Timestamp t_start = 0;
  Timestamp t_end = 0;
  bool open = false;
  GeoPoint pos;
  bool has_pos = false;
  CellId cell;

  auto key() const {
    return std::tie(type, v1, v2, t_start, t_end, cell.ix, cell.iy, open);
  }
  friend bool operator==(const CeInstance&, const CeInstance&) = default;
};

inline bool ce_less(const CeInstance& a, const CeInstance& b) { return a.key() < b.key(); }

/// Filter deciding which grid cells an evaluation instance reports for;
/// parallel sub-grid shards each own a disjoint set of cells.
using CellOwnership = std::function<bool(CellId)>;

/// Evaluate the five maritime patterns over the movement events of one
/// recognition window. The result is a pure function of the event multiset:
/// arrival order never matters. Events must be the in-window set for query
/// time q; grid's vessel snapshot is refreshed internally per evaluation
/// instant.
std::vector<CeInstance> recognize(std::span<const CriticalPoint> events, Timestamp q,
                                  Timestamp omega, GridIndex& grid, const CeConfig& cfg,
                                  const CellOwnership& own_cell = {});

/// Movement-event timeline of one vessel: piecewise-constant last-known
/// position, the gap fluent, and the open-sea stop fluent, all derived from
/// the in-window events.
class VesselTimeline {
 public:
  VesselTimeline(Mmsi mmsi, std::span<const CriticalPoint> events, Timestamp q,
                 Timestamp omega, const GridIndex& grid);

  Mmsi mmsi() const { return mmsi_; }

  /// Last known position at or before t, if any.
  std::optional<GeoPoint> position_at(Timestamp t) const;

  /// Maximal intervals of presence per grid cell, clipped to the window.
  const std::vector<std::pair<CellId, IntervalList>>& cell_intervals() const {
    return in_cell_;
  }

  std::optional<CellId> cell_at(Timestamp t, const GridIndex& grid) const;

  /// Communication-gap fluent: initiated by an open-sea gap start, terminated
  /// by the matching gap end; open intervals end at the horizon q+1.
  const IntervalList& gap() const { return gap_; }

  /// Gap intervals whose straight-line endpoint speed stays below the bound.
  IntervalList suspicious_delay(const CeConfig& cfg) const;

  /// Open-sea stop intervals with their centroids.
  struct Stop {
    Interval span;
    GeoPoint centroid;
  };
  const std::vector<Stop>& stops() const { return stops_; }

  GeoPoint gap_start_pos(Timestamp init) const;   // position that initiated a gap

 private:
  Mmsi mmsi_;
  Timestamp horizon_;
  std::vector<std::pair<Timestamp, GeoPoint>> coords_;   // sorted, unique times
  std::vector<std::pair<CellId, IntervalList>> in_cell_;
  IntervalList gap_;
  std::vector<std::pair<Timestamp, GeoPoint>> gap_starts_;
  std::vector<std::pair<Timestamp, GeoPoint>> gap_ends_;
  std::vector<Stop> stops_;
};

}  // namespace seatrack
