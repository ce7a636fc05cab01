#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "seatrack/points.hpp"

namespace seatrack {

struct TrackerConfig {
  double min_speed_knots = 1.0;     // below this a vessel counts as paused
  double speed_change_pct = 25.0;   // relative speed deviation that flags a change
  Timestamp gap_period_s = 600;     // silence longer than this is a reporting gap
  double turn_threshold_deg = 15.0; // heading change that flags a turn
  double stop_radius_m = 250.0;     // pause cluster radius for a long-term stop
  int history_points = 10;          // positions inspected for runs and mean velocity
};

/// Per-position event bits; several may be set at once.
struct InstantFlags {
  bool pause = false;
  bool speed_change = false;
  bool turn = false;

  bool any() const { return pause || speed_change || turn; }
};

/// How a raw accepted position ended up classified once the stream moved past it.
enum class RawClass { kNormal = 0, kGap, kStop, kTurn, kSpeedChange, kLowSpeed, kCount };

/// Relative speed deviation |now - ref| / now, with the singular cases pinned:
/// a standstill after movement is an infinite change, standstill after
/// standstill is none.
double speed_deviation_ratio(double now_knots, double ref_knots);

InstantFlags instantaneous_flags(const VelocityVector& now,
                                 const std::optional<VelocityVector>& prev,
                                 const TrackerConfig& cfg);

struct BufferedPoint {
  GeoPoint pos;
  Timestamp tau = 0;
  VelocityVector vel;        // velocity on arrival; meaningless when !has_vel
  bool has_vel = false;
  double turn_delta = 0.0;   // signed course change vs the previous sample
  InstantFlags flags;
  bool in_pause_run = false;
  bool in_slow_run = false;
  bool in_turn_episode = false;
};

/// Rolling per-vessel tracking state. Feed accepted reports in arrival order;
/// each call may emit critical points for events the new report completes.
///
/// Long-lasting events are checked in a fixed order and at most one fires per
/// report: a reporting gap; a long-term stop or slow motion (both examined
/// only when movement resumes after a pause); a smooth turn accumulated over
/// the buffered course; then the single-point turn and speed-change rules.
class VesselState {
 public:
  VesselState(Mmsi mmsi, const TrackerConfig& cfg) : mmsi_(mmsi), cfg_(cfg) {}

  std::vector<CriticalPoint> advance(const PositionReport& r);

  /// Same-timestamp conflict resolution: retract the last accepted report and
  /// process the replacement in its place. Returns the points emitted by the
  /// replacement. Critical points already emitted for the retracted report
  /// cannot be recalled from the stream; only the state is rewound.
  std::vector<CriticalPoint> replace_last(const PositionReport& r);

  Mmsi mmsi() const { return mmsi_; }
  const TrackerConfig& config() const { return cfg_; }
  bool empty() const { return buf_.empty(); }
  std::size_t accepted() const { return accepted_; }
  const BufferedPoint* last() const { return buf_.empty() ? nullptr : &buf_.back(); }
  const std::deque<BufferedPoint>& buffer() const { return buf_; }

  /// Velocity implied by appending r after the last accepted report. Headings
  /// below the movement threshold carry the previous course forward so that
  /// GPS jitter of an idle vessel does not read as turning. Tolerates r.tau
  /// on either side of the last report (speed over |dt|) but not equal.
  VelocityVector velocity_for(const PositionReport& r) const;

  /// Most recent velocity sample, if any.
  std::optional<VelocityVector> current_velocity() const;

  /// Mean velocity over the buffered samples: speed averages over all of
  /// them, but only samples that assert movement contribute to the circular
  /// mean course (an idle vessel has no course).
  struct MeanVelocity {
    double speed_knots = 0.0;
    std::optional<double> course_deg;
  };
  std::optional<MeanVelocity> mean_velocity() const;

  /// Classification tallies for accepted positions consumed by events; the
  /// remainder of accepted positions is "normal" course.
  using ClassCounts = std::array<std::uint64_t, static_cast<std::size_t>(RawClass::kCount)>;
  ClassCounts class_counts() const;

 private:
  struct RunEntry {
    GeoPoint pos;
    Timestamp tau;
    VelocityVector vel;
  };
  struct EpisodeEntry {
    GeoPoint pos;
    Timestamp tau;
    VelocityVector vel;
    double delta;
  };

  void classify(Timestamp tau, RawClass cls);
  void declassify(Timestamp tau);
  void prune_classified();
  std::optional<MeanVelocity> mean_excluding_newest() const;

  Mmsi mmsi_;
  TrackerConfig cfg_;
  std::deque<BufferedPoint> buf_;
  std::size_t accepted_ = 0;

  std::vector<RunEntry> pause_run_;     // consecutive pause-or-turn positions
  std::deque<RunEntry> slow_run_;       // consecutive below-threshold speeds
  std::deque<EpisodeEntry> episode_;    // samples feeding the smooth-turn accumulator
  double turn_accum_ = 0.0;

  std::map<Timestamp, RawClass> classified_;
  ClassCounts counts_{};
};

}  // namespace seatrack
