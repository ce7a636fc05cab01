#include "seatrack/noise.hpp"

#include <algorithm>
#include <cmath>

namespace seatrack {

std::string_view to_string(NoiseReason r) {
  switch (r) {
    case NoiseReason::kOffCourse:         return "OffCourse";
    case NoiseReason::kAbruptTurn:        return "AbruptTurn";
    case NoiseReason::kImplausibleSpeed:  return "ImplausibleSpeed";
    case NoiseReason::kDuplicate:         return "Duplicate";
    case NoiseReason::kTimestampConflict: return "TimestampConflict";
  }
  return "unknown";
}

NoiseVerdict assess(const PositionReport& r, const VesselState& state,
                    const NoiseConfig& cfg) {
  if (state.empty()) return NoiseVerdict::ok();

  const BufferedPoint* last = state.last();
  if (r.tau == last->tau) {
    return NoiseVerdict::reject(NoiseReason::kTimestampConflict);
  }
  if (haversine_m(r.pos, last->pos) <= cfg.duplicate_epsilon_m) {
    return NoiseVerdict::reject(NoiseReason::kDuplicate);
  }

  const VelocityVector cand = state.velocity_for(r);
  if (cand.speed_knots > cfg.max_speed_knots) {
    return NoiseVerdict::reject(NoiseReason::kImplausibleSpeed);
  }

  if (state.accepted() >= 2) {   // earlier reports carry no usable course yet
    // course comparisons require the reference course to reflect movement;
    // a vessel leaving an anchorage may depart in any direction
    const auto prev = state.current_velocity();
    if (prev && prev->speed_knots >= cfg.min_speed_knots &&
        heading_delta_deg(prev->heading_deg, cand.heading_deg) > cfg.abrupt_turn_deg) {
      return NoiseVerdict::reject(NoiseReason::kAbruptTurn);
    }
    const auto mean = state.mean_velocity();
    if (mean && mean->course_deg) {
      const double course_dev = heading_delta_deg(*mean->course_deg, cand.heading_deg);
      const double speed_dev = std::fabs(cand.speed_knots - mean->speed_knots) /
                               std::max(mean->speed_knots, cfg.min_speed_knots);
      if (course_dev > cfg.offcourse_turn_deg && speed_dev > cfg.offcourse_speed_ratio) {
        return NoiseVerdict::reject(NoiseReason::kOffCourse);
      }
    }
  }

  if (r.tau < last->tau) {
    return NoiseVerdict::reject(NoiseReason::kTimestampConflict);
  }
  return NoiseVerdict::ok();
}

std::vector<CriticalPoint> apply_verdict(const NoiseVerdict& v, const PositionReport& r,
                                         VesselState& state) {
  if (v.accepted) return state.advance(r);
  if (v.reason == NoiseReason::kTimestampConflict && state.last() != nullptr &&
      state.last()->tau == r.tau) {
    return state.replace_last(r);
  }
  return {};
}

}  // namespace seatrack
