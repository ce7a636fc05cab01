#include "seatrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seatrack {

double speed_deviation_ratio(double now_knots, double ref_knots) {
  if (now_knots == 0.0) {
    return ref_knots > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return std::fabs(now_knots - ref_knots) / now_knots;
}

InstantFlags instantaneous_flags(const VelocityVector& now,
                                 const std::optional<VelocityVector>& prev,
                                 const TrackerConfig& cfg) {
  InstantFlags f;
  f.pause = now.speed_knots < cfg.min_speed_knots;
  if (prev) {
    // speed and course comparisons only assert anything when at least one
    // side reflects actual movement: sub-threshold jitter has neither a
    // stable speed nor a course
    const bool now_moving = now.speed_knots >= cfg.min_speed_knots;
    const bool was_moving = prev->speed_knots >= cfg.min_speed_knots;
    if (now_moving || was_moving) {
      f.speed_change = speed_deviation_ratio(now.speed_knots, prev->speed_knots) >
                       cfg.speed_change_pct / 100.0;
    }
    if (was_moving) {
      f.turn = heading_delta_deg(prev->heading_deg, now.heading_deg) > cfg.turn_threshold_deg;
    }
  }
  return f;
}

VelocityVector VesselState::velocity_for(const PositionReport& r) const {
  if (buf_.empty()) throw std::logic_error("velocity_for: no prior report");
  const BufferedPoint& prev = buf_.back();
  const Timestamp dt = std::llabs(r.tau - prev.tau);
  const double dist = haversine_m(prev.pos, r.pos);

  VelocityVector v;
  v.speed_knots = knots(dist, static_cast<double>(dt));
  if (dist > 0.0 && v.speed_knots >= cfg_.min_speed_knots) {
    v.heading_deg = initial_bearing_deg(prev.pos, r.pos);
  } else if (prev.has_vel) {
    v.heading_deg = prev.vel.heading_deg;   // idle or drifting: keep the course
  } else if (dist > 0.0) {
    v.heading_deg = initial_bearing_deg(prev.pos, r.pos);
  } else {
    v.heading_deg = 0.0;
  }
  return v;
}

std::optional<VelocityVector> VesselState::current_velocity() const {
  if (buf_.empty() || !buf_.back().has_vel) return std::nullopt;
  return buf_.back().vel;
}

namespace {

std::optional<VesselState::MeanVelocity> buffer_mean(const std::deque<BufferedPoint>& buf,
                                                     std::size_t skip_newest,
                                                     double min_speed_knots) {
  double speed_sum = 0.0, sin_sum = 0.0, cos_sum = 0.0;
  std::size_t n = 0, moving = 0;
  const std::size_t limit = buf.size() - std::min(buf.size(), skip_newest);
  for (std::size_t i = 0; i < limit; ++i) {
    if (!buf[i].has_vel) continue;
    speed_sum += buf[i].vel.speed_knots;
    ++n;
    if (buf[i].vel.speed_knots >= min_speed_knots) {
      sin_sum += std::sin(deg2rad(buf[i].vel.heading_deg));
      cos_sum += std::cos(deg2rad(buf[i].vel.heading_deg));
      ++moving;
    }
  }
  if (n == 0) return std::nullopt;
  VesselState::MeanVelocity m;
  m.speed_knots = speed_sum / static_cast<double>(n);
  if (moving > 0 && (sin_sum != 0.0 || cos_sum != 0.0)) {
    m.course_deg = normalize_heading(rad2deg(std::atan2(sin_sum, cos_sum)));
  }
  return m;
}

}  // namespace

std::optional<VesselState::MeanVelocity> VesselState::mean_velocity() const {
  return buffer_mean(buf_, 0, cfg_.min_speed_knots);
}

std::optional<VesselState::MeanVelocity> VesselState::mean_excluding_newest() const {
  return buffer_mean(buf_, 1, cfg_.min_speed_knots);
}

void VesselState::classify(Timestamp tau, RawClass cls) {
  auto [it, inserted] = classified_.emplace(tau, cls);
  if (inserted) ++counts_[static_cast<std::size_t>(cls)];
}

void VesselState::declassify(Timestamp tau) {
  auto it = classified_.find(tau);
  if (it != classified_.end()) {
    --counts_[static_cast<std::size_t>(it->second)];
    classified_.erase(it);
  }
}

void VesselState::prune_classified() {
  Timestamp keep_from = buf_.empty() ? 0 : buf_.front().tau;
  if (!pause_run_.empty()) keep_from = std::min(keep_from, pause_run_.front().tau);
  if (!slow_run_.empty()) keep_from = std::min(keep_from, slow_run_.front().tau);
  if (!episode_.empty()) keep_from = std::min(keep_from, episode_.front().tau);
  while (!classified_.empty() && classified_.begin()->first < keep_from) {
    classified_.erase(classified_.begin());
  }
}

VesselState::ClassCounts VesselState::class_counts() const {
  ClassCounts c = counts_;
  std::uint64_t tagged = 0;
  for (std::size_t i = 1; i < c.size(); ++i) tagged += c[i];
  c[static_cast<std::size_t>(RawClass::kNormal)] = accepted_ - tagged;
  return c;
}

std::vector<CriticalPoint> VesselState::advance(const PositionReport& r) {
  std::vector<CriticalPoint> out;

  if (buf_.empty()) {
    BufferedPoint first;
    first.pos = r.pos;
    first.tau = r.tau;
    ++accepted_;
    buf_.push_back(first);
    return out;
  }

  const BufferedPoint prev = buf_.back();
  const VelocityVector v_now = velocity_for(r);
  const std::optional<VelocityVector> v_prev =
      prev.has_vel ? std::optional<VelocityVector>(prev.vel) : std::nullopt;
  const std::optional<MeanVelocity> v_mean = mean_velocity();

  const InstantFlags flags = instantaneous_flags(v_now, v_prev, cfg_);
  const bool moving = v_now.speed_knots > cfg_.min_speed_knots;
  // course change relative to an actual previous course; a heading carried
  // through an idle spell is stale and contributes nothing
  const bool prev_moving = prev.has_vel && prev.vel.speed_knots >= cfg_.min_speed_knots;
  const double turn_delta =
      (prev_moving && moving) ? signed_heading_change_deg(prev.vel.heading_deg, v_now.heading_deg)
                              : 0.0;

  auto emit = [&](Annotation a, Timestamp ts, Timestamp te, GeoPoint pos, VelocityVector vel,
                  RawClass cls) {
    out.push_back({mmsi_, ts, te, pos, a, vel});
    classify(ts == te ? ts : te, cls);
  };

  bool fired = false;

  // 1. Reporting gap: the pair of points delimiting the silent period.
  if (r.tau - prev.tau > cfg_.gap_period_s) {
    out.push_back({mmsi_, prev.tau, prev.tau, prev.pos, Annotation::kGapStart, prev.vel});
    classify(prev.tau, RawClass::kGap);
    out.push_back({mmsi_, r.tau, r.tau, r.pos, Annotation::kGapEnd, v_now});
    classify(r.tau, RawClass::kGap);
    fired = true;
    // The course across the gap is unknown; idle/turn runs do not survive it.
    pause_run_.clear();
    slow_run_.clear();
    episode_.clear();
    turn_accum_ = 0.0;
  }

  // 2./3. Long-term stop, else slow motion. Checked only when the vessel is
  // seen moving right after a pause.
  if (!fired && moving && prev.flags.pause) {
    if (pause_run_.size() >= static_cast<std::size_t>(cfg_.history_points)) {
      GeoPoint centroid{0.0, 0.0};
      for (const RunEntry& e : pause_run_) {
        centroid.lon += e.pos.lon;
        centroid.lat += e.pos.lat;
      }
      centroid.lon /= static_cast<double>(pause_run_.size());
      centroid.lat /= static_cast<double>(pause_run_.size());
      const bool compact =
          std::all_of(pause_run_.begin(), pause_run_.end(), [&](const RunEntry& e) {
            return haversine_m(e.pos, centroid) <= cfg_.stop_radius_m;
          });
      if (compact) {
        out.push_back({mmsi_, pause_run_.front().tau, pause_run_.back().tau, centroid,
                       Annotation::kStopped, pause_run_.back().vel});
        for (const RunEntry& e : pause_run_) classify(e.tau, RawClass::kStop);
        fired = true;
        pause_run_.clear();
        slow_run_.clear();
      }
    }
    if (!fired && slow_run_.size() >= static_cast<std::size_t>(cfg_.history_points)) {
      emit(Annotation::kLowSpeedStart, slow_run_.front().tau, slow_run_.front().tau,
           slow_run_.front().pos, slow_run_.front().vel, RawClass::kLowSpeed);
      emit(Annotation::kLowSpeedEnd, slow_run_.back().tau, slow_run_.back().tau,
           slow_run_.back().pos, slow_run_.back().vel, RawClass::kLowSpeed);
      fired = true;
      pause_run_.clear();
      slow_run_.clear();
    }
  }

  // Smooth-turn accumulator: moving samples only, bounded by the inspection
  // window. A course change revealed by this report happened at the previous
  // position, so that vertex is what a firing emits. Bookkeeping happens
  // every report; the check honors the one-event-per-report rule.
  bool episode_member = false;
  if (prev_moving && moving) {
    episode_.push_back({prev.pos, prev.tau, v_now, turn_delta});
    turn_accum_ += turn_delta;
    episode_member = true;
    while (episode_.size() > static_cast<std::size_t>(cfg_.history_points)) {
      turn_accum_ -= episode_.front().delta;
      episode_.pop_front();
    }
  }

  // 4. Smooth turn: cumulative course change across the buffered samples.
  // Each threshold crossing yields one turning point at the vertex that
  // completed it, so a long smooth turn emits a series of points spaced one
  // threshold's worth of course change apart.
  if (!fired && std::fabs(turn_accum_) > cfg_.turn_threshold_deg && !episode_.empty()) {
    const EpisodeEntry& e = episode_.back();
    emit(Annotation::kTurn, e.tau, e.tau, e.pos, e.vel, RawClass::kTurn);
    fired = true;
    episode_.clear();
    turn_accum_ = 0.0;
  }

  // 5./6. Single-point rules over the bitmap, against the mean velocity. The
  // turning point is the vertex where the course actually changed; emitting
  // it consumes the pending cumulative change so the series rule cannot
  // report the same vertex again.
  if (!fired && flags.turn && v_mean && v_mean->course_deg &&
      heading_delta_deg(v_now.heading_deg, *v_mean->course_deg) > cfg_.turn_threshold_deg) {
    emit(Annotation::kTurn, prev.tau, prev.tau, prev.pos, v_now, RawClass::kTurn);
    fired = true;
    episode_.clear();
    turn_accum_ = 0.0;
  }
  if (!fired && flags.speed_change && v_mean &&
      speed_deviation_ratio(v_now.speed_knots, v_mean->speed_knots) >
          cfg_.speed_change_pct / 100.0) {
    emit(Annotation::kSpeedChange, prev.tau, prev.tau, prev.pos, v_now,
         RawClass::kSpeedChange);
    fired = true;
  }

  // Run bookkeeping with the new point, then append it to the buffer.
  BufferedPoint bp;
  bp.pos = r.pos;
  bp.tau = r.tau;
  bp.vel = v_now;
  bp.has_vel = true;
  bp.turn_delta = turn_delta;
  bp.flags = flags;
  bp.in_turn_episode = episode_member;

  if (flags.pause || flags.turn) {
    pause_run_.push_back({r.pos, r.tau, v_now});
    bp.in_pause_run = true;
  } else {
    pause_run_.clear();
  }
  if (v_now.speed_knots <= cfg_.min_speed_knots) {
    slow_run_.push_back({r.pos, r.tau, v_now});
    bp.in_slow_run = true;
  } else {
    slow_run_.clear();
  }

  buf_.push_back(bp);
  ++accepted_;
  while (buf_.size() > static_cast<std::size_t>(cfg_.history_points)) {
    buf_.pop_front();   // non-critical history simply ages out
  }
  prune_classified();
  return out;
}

std::vector<CriticalPoint> VesselState::replace_last(const PositionReport& r) {
  if (buf_.empty()) return advance(r);

  const BufferedPoint old = buf_.back();
  buf_.pop_back();
  --accepted_;
  declassify(old.tau);
  if (old.in_pause_run && !pause_run_.empty()) pause_run_.pop_back();
  if (old.in_slow_run && !slow_run_.empty()) slow_run_.pop_back();
  if (old.in_turn_episode && !episode_.empty()) {
    turn_accum_ -= episode_.back().delta;
    episode_.pop_back();
  }
  return advance(r);
}

}  // namespace seatrack
