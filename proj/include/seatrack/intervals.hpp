#pragma once

#include <map>
#include <span>
#include <vector>

#include "seatrack/points.hpp"

namespace seatrack {

/// Closed-open time interval [start, end).
struct Interval {
  Timestamp start = 0;
  Timestamp end = 0;

  bool contains(Timestamp t) const { return start <= t && t < end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise disjoint, non-adjacent list of maximal intervals for one
/// fluent value. An interval ending exactly at the evaluation horizon is
/// open-ended: no termination has been observed for it yet.
class IntervalList {
 public:
  IntervalList() = default;
  explicit IntervalList(std::vector<Interval> raw) : v_(std::move(raw)) { normalize(); }

  const std::vector<Interval>& intervals() const { return v_; }
  bool empty() const { return v_.empty(); }
  std::size_t size() const { return v_.size(); }

  /// holdsAt: t belongs to one of the maximal intervals.
  bool contains(Timestamp t) const;

  /// Restrict to [lo, hi); empty result if nothing overlaps.
  IntervalList clipped(Timestamp lo, Timestamp hi) const;

  /// Total covered duration in seconds.
  Timestamp covered() const;

  bool valid() const;   // sorted, disjoint, non-adjacent, non-empty intervals

  friend bool operator==(const IntervalList&, const IntervalList&) = default;

 private:
  void normalize();
  std::vector<Interval> v_;
};

/// Law-of-inertia interval construction: each initiation time not already
/// covered opens an interval closed by the first strictly later termination,
/// or by the horizon when none exists.
IntervalList holds_for(std::vector<Timestamp> inits, std::vector<Timestamp> terms,
                       Timestamp horizon);

IntervalList intersect(const IntervalList& a, const IntervalList& b);

/// Intersection of all operand lists. An empty operand annihilates the
/// result; an empty span yields the empty list (callers pass the full-window
/// interval explicitly when they need the identity).
IntervalList intersect_all(std::span<const IntervalList> lists);

/// Start timepoints of every maximal interval.
std::vector<Timestamp> interval_starts(const IntervalList& l);

/// End timepoints of intervals actually closed by a termination, i.e. not
/// still open at the horizon.
std::vector<Timestamp> interval_ends(const IntervalList& l, Timestamp horizon);

/// Buffer of movement events consumed by windowed recognition queries.
/// Events may arrive late or out of order; a delayed event that occurred
/// inside the current window is picked up by the next query. Duplicate
/// ingests of the same event coalesce.
class EventWindow {
 public:
  explicit EventWindow(Timestamp omega_s) : omega_(omega_s) {}

  void ingest(const CriticalPoint& me);

  /// Ordered events with occurrence time in (q - omega, q]. Also discards
  /// everything at or before q - omega; call with non-decreasing q.
  std::vector<CriticalPoint> collect(Timestamp q);

  Timestamp omega() const { return omega_; }
  std::size_t buffered() const { return events_.size(); }
  std::size_t ingested() const { return ingested_; }

  /// Occurrence time of a movement event: the time at which it becomes
  /// known to the stream (t_end; equals t_start except for stops).
  static Timestamp occurrence(const CriticalPoint& me) { return me.t_end; }

 private:
  struct Key {
    Mmsi mmsi;
    int annotation;
    Timestamp t_start;
    Timestamp t_end;
    auto operator<=>(const Key&) const = default;
  };

  Timestamp omega_;
  std::size_t ingested_ = 0;
  std::map<Key, CriticalPoint> events_;
};

}  // namespace seatrack
