#include "seatrack/patterns.hpp"

#include <algorithm>
#include <map>

namespace seatrack {

std::string_view to_string(CeType t) {
  switch (t) {
    case CeType::kGap:                return "gap";
    case CeType::kSuspiciousDelay:    return "suspiciousDelay";
    case CeType::kPossibleRendezvous: return "possibleRendezvous";
    case CeType::kFastApproach:       return "fastApproach";
    case CeType::kPossiblePicking:    return "possiblePicking";
  }
  return "unknown";
}

std::optional<CeType> ce_type_from(std::string_view s) {
  if (s == "gap") return CeType::kGap;
  if (s == "suspiciousDelay") return CeType::kSuspiciousDelay;
  if (s == "possibleRendezvous") return CeType::kPossibleRendezvous;
  if (s == "fastApproach") return CeType::kFastApproach;
  if (s == "possiblePicking") return CeType::kPossiblePicking;
  return std::nullopt;
}

VesselTimeline::VesselTimeline(Mmsi mmsi, std::span<const CriticalPoint> events,
                               Timestamp q, Timestamp omega, const GridIndex& grid)
    : mmsi_(mmsi), horizon_(q + 1) {
  std::vector<Timestamp> gap_inits, gap_terms;

  for (const CriticalPoint& me : events) {
    coords_.emplace_back(me.t_start, me.pos);
    if (me.t_end != me.t_start) coords_.emplace_back(me.t_end, me.pos);

    switch (me.annotation) {
      case Annotation::kGapStart:
        if (!grid.near_ports(me.pos)) {
          gap_inits.push_back(me.t_start);
          gap_starts_.emplace_back(me.t_start, me.pos);
        }
        break;
      case Annotation::kGapEnd:
        gap_terms.push_back(me.t_start);
        gap_ends_.emplace_back(me.t_start, me.pos);
        break;
      case Annotation::kStopped:
        if (!grid.near_ports(me.pos) && me.t_start < me.t_end) {
          stops_.push_back({{me.t_start, me.t_end}, me.pos});
        }
        break;
      default:
        break;
    }
  }

  std::sort(coords_.begin(), coords_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  coords_.erase(std::unique(coords_.begin(), coords_.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                coords_.end());

  gap_ = holds_for(std::move(gap_inits), std::move(gap_terms), horizon_);

  std::sort(stops_.begin(), stops_.end(),
            [](const Stop& a, const Stop& b) { return a.span.start < b.span.start; });
  auto by_time = [](const auto& a, const auto& b) { return a.first < b.first; };
  std::sort(gap_starts_.begin(), gap_starts_.end(), by_time);
  std::sort(gap_ends_.begin(), gap_ends_.end(), by_time);

  // Piecewise-constant cell membership from the coordinate timeline, clipped
  // to the recognition window.
  const Timestamp window_lo = q - omega + 1;
  std::map<CellId, std::vector<Interval>> per_cell;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const Timestamp from = coords_[i].first;
    const Timestamp to = i + 1 < coords_.size() ? coords_[i + 1].first : horizon_;
    const Timestamp s = std::max(from, window_lo);
    const Timestamp e = std::min(to, horizon_);
    if (s >= e) continue;
    per_cell[grid.cell(coords_[i].second)].push_back({s, e});
  }
  for (auto& [cell, raw] : per_cell) {
    in_cell_.emplace_back(cell, IntervalList(std::move(raw)));
  }
}

std::optional<GeoPoint> VesselTimeline::position_at(Timestamp t) const {
  auto it = std::upper_bound(coords_.begin(), coords_.end(), t,
                             [](Timestamp v, const auto& e) { return v < e.first; });
  if (it == coords_.begin()) return std::nullopt;
  return std::prev(it)->second;
}

std::optional<CellId> VesselTimeline::cell_at(Timestamp t, const GridIndex& grid) const {
  const auto p = position_at(t);
  if (!p) return std::nullopt;
  return grid.cell(*p);
}

GeoPoint VesselTimeline::gap_start_pos(Timestamp init) const {
  auto it = std::lower_bound(gap_starts_.begin(), gap_starts_.end(), init,
                             [](const auto& e, Timestamp v) { return e.first < v; });
  if (it != gap_starts_.end() && it->first == init) return it->second;
  return {};
}

IntervalList VesselTimeline::suspicious_delay(const CeConfig& cfg) const {
  std::vector<Interval> kept;
  for (const Interval& g : gap_.intervals()) {
    if (g.end >= horizon_) continue;   // open gap: no end position to bound the speed
    auto s = std::lower_bound(gap_starts_.begin(), gap_starts_.end(), g.start,
                              [](const auto& e, Timestamp v) { return e.first < v; });
    auto e = std::lower_bound(gap_ends_.begin(), gap_ends_.end(), g.end,
                              [](const auto& x, Timestamp v) { return x.first < v; });
    if (s == gap_starts_.end() || s->first != g.start) continue;
    if (e == gap_ends_.end() || e->first != g.end) continue;
    const double straight_m = haversine_m(s->second, e->second);
    const double bound_knots = knots(straight_m, static_cast<double>(g.end - g.start));
    if (bound_knots < cfg.delay_speed_knots) kept.push_back(g);
  }
  return IntervalList(std::move(kept));
}

namespace {

struct Recognizer {
  Timestamp q;
  Timestamp omega;
  GridIndex& grid;
  const CeConfig& cfg;
  const CellOwnership& own_cell;
  std::vector<CeInstance> out;

  bool owned(CellId c) const { return !own_cell || own_cell(c); }

  void emit(CeInstance ce) { out.push_back(ce); }
};

}  // namespace

std::vector<CeInstance> recognize(std::span<const CriticalPoint> events, Timestamp q,
                                  Timestamp omega, GridIndex& grid, const CeConfig& cfg,
                                  const CellOwnership& own_cell) {
  const Timestamp horizon = q + 1;

  std::map<Mmsi, std::vector<CriticalPoint>> by_vessel;
  for (const CriticalPoint& me : events) by_vessel[me.mmsi].push_back(me);

  std::map<Mmsi, VesselTimeline> timelines;
  for (const auto& [mmsi, mes] : by_vessel) {
    timelines.emplace(mmsi, VesselTimeline(mmsi, mes, q, omega, grid));
  }

  Recognizer rec{q, omega, grid, cfg, own_cell, {}};

  // gap and suspiciousDelay, anchored at the initiating gap-start cell
  std::map<Mmsi, IntervalList> delays;
  for (const auto& [mmsi, tl] : timelines) {
    const IntervalList delay = tl.suspicious_delay(cfg);
    if (!delay.empty()) delays.emplace(mmsi, delay);

    for (const Interval& g : tl.gap().intervals()) {
      const GeoPoint where = tl.gap_start_pos(g.start);
      const CellId cell = grid.cell(where);
      if (!rec.owned(cell)) continue;
      CeInstance ce;
      ce.type = CeType::kGap;
      ce.v1 = mmsi;
      ce.t_start = g.start;
      ce.t_end = g.end;
      ce.open = g.end >= horizon;
      ce.pos = where;
      ce.has_pos = true;
      ce.cell = cell;
      rec.emit(ce);
    }
    for (const Interval& d : delay.intervals()) {
      const GeoPoint where = tl.gap_start_pos(d.start);
      const CellId cell = grid.cell(where);
      if (!rec.owned(cell)) continue;
      CeInstance ce;
      ce.type = CeType::kSuspiciousDelay;
      ce.v1 = mmsi;
      ce.t_start = d.start;
      ce.t_end = d.end;
      ce.pos = where;
      ce.has_pos = true;
      ce.cell = cell;
      rec.emit(ce);
    }
  }

  // possibleRendezvous: two simultaneously delayed vessels sharing a cell
  for (auto it1 = delays.begin(); it1 != delays.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != delays.end(); ++it2) {
      const VesselTimeline& t1 = timelines.at(it1->first);
      const VesselTimeline& t2 = timelines.at(it2->first);
      for (const auto& [cell, in1] : t1.cell_intervals()) {
        if (!rec.owned(cell)) continue;
        const auto in2 = std::find_if(t2.cell_intervals().begin(), t2.cell_intervals().end(),
                                      [&](const auto& e) { return e.first == cell; });
        if (in2 == t2.cell_intervals().end()) continue;
        const IntervalList operands[4] = {in1, in2->second, it1->second, it2->second};
        const IntervalList meet = intersect_all(operands);
        for (const Interval& m : meet.intervals()) {
          CeInstance ce;
          ce.type = CeType::kPossibleRendezvous;
          ce.v1 = it1->first;
          ce.v2 = it2->first;
          ce.t_start = m.start;
          ce.t_end = m.end;
          ce.open = m.end >= horizon;
          ce.cell = cell;
          rec.emit(ce);
        }
      }
    }
  }

  // fastApproach: a speed change at open sea, above the speed floor, headed
  // at some vessel nearby. Neighbor positions are the last known ones at the
  // event instant.
  for (const auto& [mmsi, mes] : by_vessel) {
    for (const CriticalPoint& me : mes) {
      if (me.annotation != Annotation::kSpeedChange) continue;
      if (me.velocity.speed_knots <= cfg.fast_speed_knots) continue;
      if (grid.near_ports(me.pos)) continue;
      const CellId cell = grid.cell(me.pos);
      if (!rec.owned(cell)) continue;

      std::vector<std::pair<Mmsi, GeoPoint>> snapshot;
      for (const auto& [other, tl] : timelines) {
        const auto p = tl.position_at(me.t_start);
        if (p) snapshot.emplace_back(other, *p);
      }
      grid.refresh_vessels(snapshot);
      if (!grid.heading_to_vessels(mmsi, me.velocity.heading_deg, cfg.approach_radius_m,
                                   cfg.approach_cone_deg)) {
        continue;
      }
      CeInstance ce;
      ce.type = CeType::kFastApproach;
      ce.v1 = mmsi;
      ce.t_start = me.t_start;
      ce.t_end = me.t_start;
      ce.pos = me.pos;
      ce.has_pos = true;
      ce.cell = cell;
      rec.emit(ce);
    }
  }

  // possiblePicking: one vessel leaves an open-sea stop, another arrives and
  // stops at the same spot shortly after.
  for (const auto& [dropper, t1] : timelines) {
    if (t1.stops().empty()) continue;
    for (const auto& [picker, t2] : timelines) {
      if (picker == dropper || t2.stops().empty()) continue;
      for (const auto& drop : t1.stops()) {
        const Timestamp t_drop = drop.span.end;
        const auto drop_cell = t1.cell_at(t_drop, grid);
        if (!drop_cell) continue;
        for (const auto& pick : t2.stops()) {
          const Timestamp t_pick = pick.span.start;
          if (t_pick <= t_drop || t_pick - t_drop >= cfg.picking_max_gap_s) continue;
          const auto pick_cell = t2.cell_at(t_pick, grid);
          if (!pick_cell || *pick_cell != *drop_cell) continue;
          if (!rec.owned(*pick_cell)) continue;
          if (haversine_m(drop.centroid, pick.centroid) >= cfg.picking_max_dist_m) continue;
          CeInstance ce;
          ce.type = CeType::kPossiblePicking;
          ce.v1 = dropper;
          ce.v2 = picker;
          ce.t_start = t_pick;
          ce.t_end = t_pick;
          ce.pos = pick.centroid;
          ce.has_pos = true;
          ce.cell = *pick_cell;
          rec.emit(ce);
        }
      }
    }
  }

  std::sort(rec.out.begin(), rec.out.end(), ce_less);
  return rec.out;
}

}  // namespace seatrack
