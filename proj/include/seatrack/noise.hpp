#pragma once

#include <optional>
#include <string_view>

#include "seatrack/tracker.hpp"

namespace seatrack {

struct NoiseConfig {
  double max_speed_knots = 50.0;       // anything faster is not a vessel
  double abrupt_turn_deg = 60.0;       // single-step course jump vs the last leg
  double offcourse_turn_deg = 60.0;    // course deviation vs the mean velocity
  double offcourse_speed_ratio = 0.5;  // paired speed deviation for off-course
  double duplicate_epsilon_m = 0.0;    // coordinate tolerance for duplicates
  double min_speed_knots = 1.0;        // denominator floor; keep equal to the tracker's
};

enum class NoiseReason {
  kOffCourse,
  kAbruptTurn,
  kImplausibleSpeed,
  kDuplicate,
  kTimestampConflict,
};

std::string_view to_string(NoiseReason r);

struct NoiseVerdict {
  bool accepted = true;
  NoiseReason reason = NoiseReason::kOffCourse;   // meaningful only when rejected

  static NoiseVerdict ok() { return {}; }
  static NoiseVerdict reject(NoiseReason r) { return {false, r}; }
};

/// Single-pass noise check of one report against the vessel's rolling state.
/// Cheap rules run first; the first matching rule rejects:
///   1. timestamp equal to the last accepted report (contradicting messages;
///      the caller retains the later one, see apply_verdict)
///   2. coordinates within duplicate_epsilon_m of the last accepted point
///   3. implied speed above max_speed_knots (computed over |dt|, so a
///      twisted-timestamp position that jumps backwards is caught)
///   4. single-step course change above abrupt_turn_deg
///   5. course and speed both deviating from the mean velocity
/// A report older than the last accepted one that survives all of the above
/// is still rejected as a timestamp conflict: the trajectory cannot be
/// extended backwards. The first two reports of a vessel bypass rules 4-5.
NoiseVerdict assess(const PositionReport& r, const VesselState& state,
                    const NoiseConfig& cfg);

/// Feed a report and its verdict into the vessel state. Accepted reports
/// advance the tracker. An equal-timestamp conflict retains the latest
/// message: the previous report is retracted and this one replaces it.
/// Returns the critical points emitted.
std::vector<CriticalPoint> apply_verdict(const NoiseVerdict& v, const PositionReport& r,
                                         VesselState& state);

}  // namespace seatrack
