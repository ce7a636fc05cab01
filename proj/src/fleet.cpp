#include "seatrack/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace seatrack {

std::string_view to_string(Plant::Kind k) {
  switch (k) {
    case Plant::Kind::kStop:         return "stop";
    case Plant::Kind::kGap:          return "gap";
    case Plant::Kind::kDelay:        return "suspiciousDelay";
    case Plant::Kind::kRendezvous:   return "possibleRendezvous";
    case Plant::Kind::kFastApproach: return "fastApproach";
    case Plant::Kind::kPicking:      return "possiblePicking";
  }
  return "unknown";
}

std::vector<Port> demo_ports(double radius_m) {
  // south of every traffic lane, each on its own latitude
  return {
      {1, {23.60, 35.06}, radius_m},
      {2, {24.60, 35.10}, radius_m},
      {3, {25.60, 35.14}, radius_m},
      {4, {26.40, 35.18}, radius_m},
  };
}

std::vector<AreaPolygon> demo_areas() {
  return {
      {1, {{24.10, 36.30}, {24.70, 36.25}, {24.75, 36.70}, {24.40, 36.55}, {24.05, 36.65}}, true},
      {2, {{25.40, 37.00}, {25.90, 37.05}, {25.65, 37.45}}, true},
      {3, {{23.30, 38.60}, {23.80, 38.55}, {23.85, 38.90}, {23.35, 38.95}}, false},
  };
}

namespace {

constexpr Mmsi kCloneStride = 1'000'000;

std::uint64_t splitmix64_mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// default surveillance grid; plant sites sit on cell centers of this grid
constexpr double kLon0 = 23.0, kLat0 = 35.0, kCellDeg = 4.0 / 30.0;

GeoPoint cell_center(int ci, int cj) {
  return {kLon0 + (ci + 0.5) * kCellDeg, kLat0 + (cj + 0.5) * kCellDeg};
}

struct VesselBuild {
  Mmsi mmsi;
  std::vector<PositionReport> reports;
};

class RouteCursor {
 public:
  RouteCursor(Mmsi mmsi, GeoPoint start, Timestamp t0, Timestamp period, std::mt19937_64& rng)
      : mmsi_(mmsi), pos_(start), tau_(t0), period_(period), rng_(rng) {}

  void anchor(int n, double jitter_m = 25.0) {
    std::uniform_real_distribution<double> angle(0.0, 360.0);
    std::uniform_real_distribution<double> rad(0.0, jitter_m);
    const GeoPoint center = pos_;
    for (int i = 0; i < n; ++i) {
      emit(destination_point(center, angle(rng_), rad(rng_)));
    }
    pos_ = center;
  }

  /// n reporting slots under way; with emit_reports false the position still
  /// advances but nothing is transmitted.
  void cruise(int n, double heading_deg, double speed_knots, bool emit_reports = true,
              double jitter = 0.004) {
    std::uniform_real_distribution<double> j(1.0 - jitter, 1.0 + jitter);
    for (int i = 0; i < n; ++i) {
      const double step = speed_knots * kMetersPerNauticalMile / 3600.0 *
                          static_cast<double>(period_) * j(rng_);
      pos_ = destination_point(pos_, heading_deg, step);
      if (emit_reports) {
        emit(pos_);
      } else {
        tau_ += period_;
      }
    }
  }

  /// Silent loitering: a small total drift spread over n unreported slots.
  void loiter_silent(int n, double total_drift_m, double heading_deg) {
    pos_ = destination_point(pos_, heading_deg, total_drift_m);
    tau_ += static_cast<Timestamp>(n) * period_;
  }

  void emit(GeoPoint p) {
    reports_.push_back({mmsi_, p, tau_});
    tau_ += period_;
  }

  GeoPoint pos() const { return pos_; }
  Timestamp tau() const { return tau_; }
  std::vector<PositionReport> take() { return std::move(reports_); }

 private:
  Mmsi mmsi_;
  GeoPoint pos_;
  Timestamp tau_;
  Timestamp period_;
  std::mt19937_64& rng_;
  std::vector<PositionReport> reports_;
};

constexpr int kStartAnchor = 14;
constexpr int kEndAnchor = 15;
constexpr int kMidStay = 13;

struct Builder {
  const SyntheticFleetSpec& spec;
  std::vector<Port> ports = demo_ports();
  std::vector<VesselBuild> vessels;
  std::vector<Plant> plants;
  int regular_lanes = 0;
  int plant_rows = 0;
  Mmsi next_mmsi = 1001;
  int total_slots;

  explicit Builder(const SyntheticFleetSpec& s)
      : spec(s), total_slots(static_cast<int>(s.duration_s / s.report_period_s)) {
    if (s.report_period_s <= 0 || total_slots < 120) {
      throw InvalidSpec("fleet duration must cover at least 120 reporting periods");
    }
    if (s.increase_factor < 1) throw InvalidSpec("increase factor must be >= 1");
    if (s.rendezvous_pairs + s.approach_pairs + s.picking_pairs > 9) {
      throw InvalidSpec("at most 9 pair scenarios fit the dedicated lanes");
    }
  }

  double step() const {
    return spec.cruise_knots * kMetersPerNauticalMile / 3600.0 *
           static_cast<double>(spec.report_period_s);
  }

  double regular_lat() { return 35.35 + 0.08 * (regular_lanes++ % 24); }

  // pair scenarios get cell-center latitudes above the regular band
  int plant_row() { return 25 - plant_rows++; }

  std::mt19937_64 rng_for(Mmsi m, std::uint64_t seed) const {
    return std::mt19937_64(splitmix64_mix(seed ^ (0x51edULL + std::uint64_t(m) * 0x9e37ULL)));
  }

  Timestamp slot_time(int slot) const {
    return spec.t0 + static_cast<Timestamp>(slot) * spec.report_period_s;
  }

  void plant_stop(Mmsi m, int first_pause_slot, int last_pause_slot, GeoPoint center) {
    plants.push_back({Plant::Kind::kStop, m, 0, slot_time(first_pause_slot),
                      slot_time(last_pause_slot), center});
  }

  /// Shared voyage skeleton: start anchorage, scripted middle covering
  /// exactly the remaining slots, end anchorage closed by a slow departure
  /// step so the final stop is emitted before the stream ends.
  template <typename MiddleFn>
  void voyage(Mmsi m, GeoPoint start, std::uint64_t seed, MiddleFn&& middle) {
    auto rng = rng_for(m, seed);
    RouteCursor c(m, start, spec.t0, spec.report_period_s, rng);
    c.anchor(kStartAnchor);
    // the vessel's very first report carries no velocity; pauses start next
    plant_stop(m, 1, kStartAnchor - 1, start);

    const int middle_slots = total_slots - kStartAnchor - kEndAnchor - 1;
    middle(c, rng, middle_slots);

    const GeoPoint end_center = c.pos();
    const int end_first = total_slots - kEndAnchor - 1;
    c.anchor(kEndAnchor);
    plant_stop(m, end_first, end_first + kEndAnchor - 1, end_center);
    c.cruise(1, 90.0, 2.0);
    vessels.push_back({m, c.take()});
  }

  void add_straight(std::uint64_t seed) {
    const Mmsi m = next_mmsi++;
    auto rng = rng_for(m, seed);
    const double lat = regular_lat();
    const double lon = 23.15 + 0.11 * static_cast<double>((m * 7) % 18);
    RouteCursor c(m, {lon, lat}, spec.t0, spec.report_period_s, rng);
    c.cruise(total_slots + 1, 90.0, spec.cruise_knots);
    vessels.push_back({m, c.take()});
  }

  void add_turning(std::uint64_t seed, std::span<const double> cycle) {
    const Mmsi m = next_mmsi++;
    const double lat = regular_lat();
    const double lon = 23.15 + 0.11 * static_cast<double>((m * 7) % 18);
    voyage(m, {lon, lat}, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
      // legs longer than the tracker's inspection window, so each course
      // change is judged with a fully decayed accumulator
      const int leg = 12;
      const int arc = 8;
      std::size_t k = 0;
      int used = 0;
      double sign = 1.0;
      while (used + 2 * leg <= slots) {
        const double amp = cycle[k % cycle.size()];
        // out and back: two course changes of magnitude amp each
        c.cruise(leg, 90.0 + sign * amp, spec.cruise_knots);
        c.cruise(leg, 90.0, spec.cruise_knots);
        used += 2 * leg;
        ++k;
        sign = -sign;
        if (spec.smooth_arcs && k % 3 == 2 && used + arc + 2 * leg <= slots) {
          // gradual swing onto an offset course and a sharp leg back
          for (int i = 1; i <= arc; ++i) {
            c.cruise(1, 90.0 + sign * 2.2 * i, spec.cruise_knots);
          }
          c.cruise(leg, 90.0 + sign * 2.2 * arc, spec.cruise_knots);
          c.cruise(leg, 90.0, spec.cruise_knots);
          used += arc + 2 * leg;
        }
      }
      if (used < slots) c.cruise(slots - used, 90.0, spec.cruise_knots);
    });
  }

  void add_anchoring(std::uint64_t seed, bool at_port) {
    const Mmsi m = next_mmsi++;
    const int mid_slot = total_slots / 2;
    const int pre = mid_slot - kStartAnchor;
    GeoPoint start;
    if (at_port) {
      const Port& p = ports[1 + m % 2];   // the two inner ports keep routes in-area
      const GeoPoint target = destination_point(p.pos, 90.0, 400.0);
      start = destination_point(target, 270.0, pre * step());
    } else {
      start = {23.2 + 0.09 * static_cast<double>((m * 5) % 16), regular_lat()};
    }
    voyage(m, start, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
      c.cruise(pre, 90.0, spec.cruise_knots);
      const GeoPoint center = c.pos();
      const int first = kStartAnchor + pre;
      c.anchor(kMidStay);
      plant_stop(m, first, first + kMidStay - 1, center);
      c.cruise(slots - pre - kMidStay, 90.0, spec.cruise_knots);
    });
  }

  void add_gappy(std::uint64_t seed, bool loiter) {
    const Mmsi m = next_mmsi++;
    const GeoPoint start{23.2 + 0.09 * static_cast<double>((m * 5) % 16), regular_lat()};
    voyage(m, start, seed, [&](RouteCursor& c, std::mt19937_64& rng, int slots) {
      const int silence = loiter ? 15 : 12;
      std::uniform_int_distribution<int> frac(35, 55);
      const int pre = slots * frac(rng) / 100;
      c.cruise(pre, 90.0, spec.cruise_knots);
      const GeoPoint lost = c.pos();
      const Timestamp t_lost = c.tau() - spec.report_period_s;
      if (loiter) {
        c.loiter_silent(silence, 60.0, 90.0);
      } else {
        c.cruise(silence, 90.0, spec.cruise_knots, /*emit_reports=*/false);
      }
      const Timestamp t_back = c.tau();
      plants.push_back({Plant::Kind::kGap, m, 0, t_lost, t_back, lost});
      if (loiter) {
        plants.push_back({Plant::Kind::kDelay, m, 0, t_lost, t_back, lost});
      }
      c.cruise(slots - pre - silence, 90.0, spec.cruise_knots);
    });
  }

  void add_rendezvous_pair(std::uint64_t seed, int index) {
    const Mmsi a = next_mmsi++;
    const Mmsi b = next_mmsi++;
    const int row = plant_row();
    const GeoPoint meet = cell_center(9 + (index * 5) % 12, row);
    const int silence = 15;
    const int pre = total_slots * 2 / 5;   // slot at which the first vessel goes silent

    Timestamp lost_a = 0, back_a = 0, lost_b = 0, back_b = 0;
    auto build = [&](Mmsi m, double inbound_deg, int stagger, Timestamp& t_lost,
                     Timestamp& t_back) {
      const int my_pre = pre - kStartAnchor + stagger;
      const GeoPoint edge = destination_point(meet, inbound_deg + 180.0, 80.0);
      const GeoPoint start =
          destination_point(edge, inbound_deg + 180.0, my_pre * step());
      voyage(m, start, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
        c.cruise(my_pre, inbound_deg, spec.cruise_knots);
        const GeoPoint lost = c.pos();
        t_lost = c.tau() - spec.report_period_s;
        c.loiter_silent(silence - stagger, 60.0, inbound_deg);
        t_back = c.tau();
        plants.push_back({Plant::Kind::kGap, m, 0, t_lost, t_back, lost});
        plants.push_back({Plant::Kind::kDelay, m, 0, t_lost, t_back, lost});
        c.cruise(slots - my_pre - (silence - stagger), inbound_deg, spec.cruise_knots);
      });
    };
    build(a, 90.0, 0, lost_a, back_a);    // eastbound, parks just west of the meet
    build(b, 270.0, 2, lost_b, back_b);   // westbound, goes silent a bit later

    plants.push_back({Plant::Kind::kRendezvous, a, b, std::max(lost_a, lost_b),
                      std::min(back_a, back_b), meet});
  }

  void add_approach_pair(std::uint64_t seed, int index) {
    const Mmsi target = next_mmsi++;
    const Mmsi chaser = next_mmsi++;
    const int row = plant_row();
    const GeoPoint scene = cell_center(9 + (index * 4) % 11, row);
    const int s_dec = total_slots * 45 / 100;
    const int s_acc = s_dec + 2;
    const double slow = 6.0, drift = 2.5, burst = 25.0;

    const double slow_step = slow * kMetersPerNauticalMile / 3600.0 *
                             static_cast<double>(spec.report_period_s);
    const double ten_step = 10.0 * kMetersPerNauticalMile / 3600.0 *
                            static_cast<double>(spec.report_period_s);
    {
      const int pre = s_dec - kStartAnchor;
      const GeoPoint start = destination_point(scene, 270.0, pre * slow_step);
      voyage(target, start, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
        c.cruise(pre, 90.0, slow);
        c.cruise(slots - pre, 90.0, drift);   // sudden slowdown, drifting on
      });
    }
    {
      const GeoPoint burst_point = destination_point(scene, 270.0, 2500.0);
      const int pre = s_acc - kStartAnchor;
      const GeoPoint start = destination_point(burst_point, 270.0, pre * ten_step);
      voyage(chaser, start, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
        c.cruise(pre, 90.0, 10.0);
        c.cruise(4, 90.0, burst);             // closing fast on the target ahead
        c.cruise(slots - pre - 4, 90.0, 10.0);
      });
      plants.push_back({Plant::Kind::kFastApproach, chaser, 0, slot_time(s_acc),
                        slot_time(s_acc), burst_point});
    }
  }

  void add_picking_pair(std::uint64_t seed, int index) {
    const Mmsi dropper = next_mmsi++;
    const Mmsi picker = next_mmsi++;
    const int row = plant_row();
    const GeoPoint drop = cell_center(9 + (index * 3) % 11, row);
    const GeoPoint pick = destination_point(drop, 90.0, 300.0);
    const int s_drop_anchor = total_slots * 2 / 5;
    const Timestamp t_drop = slot_time(s_drop_anchor + kMidStay - 1);
    const int s_pick_anchor =
        static_cast<int>((t_drop + 900 - spec.t0) / spec.report_period_s);

    auto build = [&](Mmsi m, GeoPoint center, int anchor_slot) {
      const int pre = anchor_slot - kStartAnchor;
      const GeoPoint start = destination_point(center, 270.0, pre * step());
      voyage(m, start, seed, [&](RouteCursor& c, std::mt19937_64&, int slots) {
        c.cruise(pre, 90.0, spec.cruise_knots);
        const GeoPoint at = c.pos();
        c.anchor(kMidStay);
        plant_stop(m, anchor_slot, anchor_slot + kMidStay - 1, at);
        c.cruise(slots - pre - kMidStay, 90.0, spec.cruise_knots);
      });
    };
    build(dropper, drop, s_drop_anchor);
    build(picker, pick, s_pick_anchor);
    plants.push_back({Plant::Kind::kPicking, dropper, picker, slot_time(s_pick_anchor),
                      slot_time(s_pick_anchor), pick});
  }
};

void inject_noise(std::vector<PositionReport>& reports, const SyntheticFleetSpec& spec,
                  std::mt19937_64& rng, std::uint64_t& injected) {
  if (spec.dup_per_kilo <= 0 && spec.outseq_per_kilo <= 0 && spec.conflict_per_kilo <= 0 &&
      spec.spike_per_kilo <= 0) {
    return;
  }
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::vector<PositionReport> out;
  out.reserve(reports.size() + 16);

  // impurities only go between plain cruise steps, away from any scenario
  auto mid_cruise = [&](std::size_t i) {
    if (i == 0 || i + 1 >= reports.size()) return false;
    const auto& prev = reports[i - 1];
    const auto& cur = reports[i];
    const auto& next = reports[i + 1];
    if (cur.tau - prev.tau != spec.report_period_s) return false;
    if (next.tau - cur.tau != spec.report_period_s) return false;
    return haversine_m(prev.pos, cur.pos) > 300.0 && haversine_m(cur.pos, next.pos) > 300.0;
  };

  for (std::size_t i = 0; i < reports.size(); ++i) {
    const PositionReport& r = reports[i];
    if (mid_cruise(i)) {
      if (u(rng) < spec.outseq_per_kilo) {
        // delivered late with a twisted transaction timestamp
        PositionReport late = r;
        late.tau = reports[i + 1].tau + 5;
        out.push_back(reports[i + 1]);
        out.push_back(late);
        ++i;
        ++injected;
        continue;
      }
      out.push_back(r);
      if (u(rng) < spec.dup_per_kilo) {
        out.push_back({r.mmsi, r.pos, r.tau + 5});
        ++injected;
      }
      if (u(rng) < spec.conflict_per_kilo) {
        out.push_back({r.mmsi, destination_point(r.pos, 0.0, 50.0), r.tau});
        ++injected;
      }
      if (u(rng) < spec.spike_per_kilo) {
        out.push_back({r.mmsi, destination_point(r.pos, 0.0, 4000.0),
                       r.tau + spec.report_period_s / 2});
        ++injected;
      }
    } else {
      out.push_back(r);
    }
  }
  reports = std::move(out);
}

}  // namespace

FleetData generate_fleet(const SyntheticFleetSpec& spec, std::uint64_t seed) {
  Builder b(spec);
  if (spec.turning > 0 && spec.turn_cycle.empty()) {
    throw InvalidSpec("turning vessels need a non-empty turn cycle");
  }
  for (int i = 0; i < spec.straight; ++i) b.add_straight(seed);
  for (int i = 0; i < spec.turning; ++i) b.add_turning(seed, spec.turn_cycle);
  for (int i = 0; i < spec.anchoring; ++i) b.add_anchoring(seed, i % 2 == 0);
  for (int i = 0; i < spec.gappy; ++i) b.add_gappy(seed, false);
  for (int i = 0; i < spec.delayed; ++i) b.add_gappy(seed, true);
  for (int i = 0; i < spec.rendezvous_pairs; ++i) b.add_rendezvous_pair(seed, i);
  for (int i = 0; i < spec.approach_pairs; ++i) b.add_approach_pair(seed, i);
  for (int i = 0; i < spec.picking_pairs; ++i) b.add_picking_pair(seed, i);

  FleetData data;
  data.vessel_count = static_cast<int>(b.vessels.size()) * spec.increase_factor;

  auto inj_rng = std::mt19937_64(splitmix64_mix(seed ^ 0xabcdef1234ULL));
  for (auto& v : b.vessels) {
    inject_noise(v.reports, spec, inj_rng, data.injected_noise);
  }

  // trajectory replication: clones are new vessels retracing the same paths
  const std::size_t base_vessels = b.vessels.size();
  const std::size_t base_plants = b.plants.size();
  for (int k = 1; k < spec.increase_factor; ++k) {
    for (std::size_t vi = 0; vi < base_vessels; ++vi) {
      VesselBuild clone = b.vessels[vi];
      clone.mmsi += static_cast<Mmsi>(k) * kCloneStride;
      for (auto& r : clone.reports) r.mmsi = clone.mmsi;
      b.vessels.push_back(std::move(clone));
    }
    for (std::size_t pi = 0; pi < base_plants; ++pi) {
      Plant p = b.plants[pi];
      p.a += static_cast<Mmsi>(k) * kCloneStride;
      if (p.b != 0) p.b += static_cast<Mmsi>(k) * kCloneStride;
      b.plants.push_back(p);
    }
  }
  data.injected_noise *= static_cast<std::uint64_t>(spec.increase_factor);

  struct Tagged {
    PositionReport r;
    std::uint32_t seq;
  };
  std::vector<Tagged> merged;
  for (const auto& v : b.vessels) {
    for (std::uint32_t s = 0; s < v.reports.size(); ++s) merged.push_back({v.reports[s], s});
  }
  std::sort(merged.begin(), merged.end(), [](const Tagged& x, const Tagged& y) {
    return std::tie(x.r.tau, x.r.mmsi, x.seq) < std::tie(y.r.tau, y.r.mmsi, y.seq);
  });
  data.stream.reserve(merged.size());
  for (const Tagged& t : merged) data.stream.push_back(t.r);

  data.plants = std::move(b.plants);
  return data;
}

}  // namespace seatrack
