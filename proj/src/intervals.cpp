#include "seatrack/intervals.hpp"

#include <algorithm>
#include <limits>

namespace seatrack {

void IntervalList::normalize() {
  std::erase_if(v_, [](const Interval& i) { return i.start >= i.end; });
  std::sort(v_.begin(), v_.end(),
            [](const Interval& a, const Interval& b) { return a.start < b.start; });
  std::vector<Interval> out;
  for (const Interval& i : v_) {
    if (!out.empty() && i.start <= out.back().end) {
      out.back().end = std::max(out.back().end, i.end);
    } else {
      out.push_back(i);
    }
  }
  v_ = std::move(out);
}

bool IntervalList::contains(Timestamp t) const {
  auto it = std::upper_bound(v_.begin(), v_.end(), t,
                             [](Timestamp x, const Interval& i) { return x < i.start; });
  if (it == v_.begin()) return false;
  return std::prev(it)->contains(t);
}

IntervalList IntervalList::clipped(Timestamp lo, Timestamp hi) const {
  std::vector<Interval> out;
  for (const Interval& i : v_) {
    const Timestamp s = std::max(i.start, lo);
    const Timestamp e = std::min(i.end, hi);
    if (s < e) out.push_back({s, e});
  }
  return IntervalList(std::move(out));
}

Timestamp IntervalList::covered() const {
  Timestamp total = 0;
  for (const Interval& i : v_) total += i.end - i.start;
  return total;
}

bool IntervalList::valid() const {
  for (std::size_t k = 0; k < v_.size(); ++k) {
    if (v_[k].start >= v_[k].end) return false;
    if (k > 0 && v_[k - 1].end >= v_[k].start) return false;
  }
  return true;
}

IntervalList holds_for(std::vector<Timestamp> inits, std::vector<Timestamp> terms,
                       Timestamp horizon) {
  std::sort(inits.begin(), inits.end());
  std::sort(terms.begin(), terms.end());

  std::vector<Interval> out;
  Timestamp covered_until = std::numeric_limits<Timestamp>::min();
  for (Timestamp ts : inits) {
    if (ts >= horizon) break;
    if (ts < covered_until) continue;   // re-initiation absorbed by the open interval
    auto it = std::upper_bound(terms.begin(), terms.end(), ts);
    const Timestamp tf = it == terms.end() ? horizon : std::min(*it, horizon);
    if (ts < tf) {
      out.push_back({ts, tf});
      covered_until = tf;
    }
  }
  return IntervalList(std::move(out));
}

IntervalList intersect(const IntervalList& a, const IntervalList& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const Timestamp s = std::max(x[i].start, y[j].start);
    const Timestamp e = std::min(x[i].end, y[j].end);
    if (s < e) out.push_back({s, e});
    if (x[i].end < y[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalList(std::move(out));
}

IntervalList intersect_all(std::span<const IntervalList> lists) {
  if (lists.empty()) return {};
  IntervalList acc = lists.front();
  for (std::size_t k = 1; k < lists.size() && !acc.empty(); ++k) {
    acc = intersect(acc, lists[k]);
  }
  return acc;
}

std::vector<Timestamp> interval_starts(const IntervalList& l) {
  std::vector<Timestamp> out;
  out.reserve(l.size());
  for (const Interval& i : l.intervals()) out.push_back(i.start);
  return out;
}

std::vector<Timestamp> interval_ends(const IntervalList& l, Timestamp horizon) {
  std::vector<Timestamp> out;
  for (const Interval& i : l.intervals()) {
    if (i.end < horizon) out.push_back(i.end);
  }
  return out;
}

void EventWindow::ingest(const CriticalPoint& me) {
  ++ingested_;
  Key k{me.mmsi, static_cast<int>(me.annotation), me.t_start, me.t_end};
  events_.emplace(k, me);   // duplicate occurrences coalesce
}

std::vector<CriticalPoint> EventWindow::collect(Timestamp q) {
  const Timestamp low = q - omega_;
  std::erase_if(events_, [low](const auto& kv) {
    return occurrence(kv.second) <= low;
  });

  std::vector<CriticalPoint> out;
  out.reserve(events_.size());
  for (const auto& [k, me] : events_) {
    const Timestamp tau = occurrence(me);
    if (tau > low && tau <= q) out.push_back(me);
  }
  std::sort(out.begin(), out.end(), merge_less);
  return out;
}

}  // namespace seatrack
