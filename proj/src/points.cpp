#include "seatrack/points.hpp"

namespace seatrack {

std::string_view to_string(Annotation a) {
  switch (a) {
    case Annotation::kStopped:       return "stopped";
    case Annotation::kGapStart:      return "gapStart";
    case Annotation::kGapEnd:        return "gapEnd";
    case Annotation::kTurn:          return "turn";
    case Annotation::kSpeedChange:   return "speedChange";
    case Annotation::kLowSpeedStart: return "lowSpeedStart";
    case Annotation::kLowSpeedEnd:   return "lowSpeedEnd";
  }
  return "unknown";
}

std::optional<Annotation> annotation_from(std::string_view s) {
  if (s == "stopped") return Annotation::kStopped;
  if (s == "gapStart") return Annotation::kGapStart;
  if (s == "gapEnd") return Annotation::kGapEnd;
  if (s == "turn") return Annotation::kTurn;
  if (s == "speedChange") return Annotation::kSpeedChange;
  if (s == "lowSpeedStart") return Annotation::kLowSpeedStart;
  if (s == "lowSpeedEnd") return Annotation::kLowSpeedEnd;
  return std::nullopt;
}

}  // namespace seatrack
