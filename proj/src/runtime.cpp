#include "seatrack/runtime.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

namespace seatrack {

std::string_view to_string(Partitioning p) {
  return p == Partitioning::kMmsiHash ? "mmsi_hash" : "sub_grid";
}

std::optional<Partitioning> partitioning_from(std::string_view s) {
  if (s == "mmsi_hash") return Partitioning::kMmsiHash;
  if (s == "sub_grid") return Partitioning::kSubGrid;
  return std::nullopt;
}

std::uint64_t stable_hash(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int shard_of_vessel(Mmsi mmsi, int shard_count) {
  if (shard_count <= 1) return 0;
  return static_cast<int>(stable_hash(mmsi) % static_cast<std::uint64_t>(shard_count));
}

int shard_of_cell(CellId cell, int nx, int shard_count) {
  if (shard_count <= 1) return 0;
  const long long s = static_cast<long long>(cell.ix) * shard_count / nx;
  return static_cast<int>(std::clamp<long long>(s, 0, shard_count - 1));
}

std::vector<CriticalPoint> TrackerWorker::process(std::span<const PositionReport> batch) {
  std::vector<CriticalPoint> out;
  for (const PositionReport& r : batch) {
    auto [it, fresh] = lanes_.try_emplace(r.mmsi, VesselState(r.mmsi, tracker_));
    VesselState& state = it->second;
    const NoiseVerdict verdict = assess(r, state, noise_);
    if (!verdict.accepted) {
      tally_.count(verdict.reason);
      if (collect_raw_ && verdict.reason == NoiseReason::kTimestampConflict &&
          state.last() != nullptr && state.last()->tau == r.tau) {
        auto& raw = raw_[r.mmsi];
        if (!raw.empty()) raw.back() = r;   // replaced-in-place message
      }
    } else if (collect_raw_) {
      raw_[r.mmsi].push_back(r);
    }
    auto emitted = apply_verdict(verdict, r, state);
    out.insert(out.end(), emitted.begin(), emitted.end());
  }
  return out;
}

std::uint64_t TrackerWorker::accepted() const {
  std::uint64_t n = 0;
  for (const auto& [mmsi, state] : lanes_) n += state.accepted();
  return n;
}

VesselState::ClassCounts TrackerWorker::class_counts() const {
  VesselState::ClassCounts total{};
  for (const auto& [mmsi, state] : lanes_) {
    const auto c = state.class_counts();
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += c[i];
  }
  return total;
}

ShardedTracker::ShardedTracker(const NoiseConfig& noise, const TrackerConfig& tracker,
                               int shards, bool collect_raw) {
  workers_.reserve(static_cast<std::size_t>(std::max(1, shards)));
  for (int i = 0; i < std::max(1, shards); ++i) {
    workers_.emplace_back(noise, tracker, collect_raw);
  }
}

std::vector<CriticalPoint> ShardedTracker::process(std::span<const PositionReport> batch) {
  const int n = shards();
  std::vector<std::vector<PositionReport>> sub(static_cast<std::size_t>(n));
  for (const PositionReport& r : batch) {
    sub[static_cast<std::size_t>(shard_of_vessel(r.mmsi, n))].push_back(r);
  }

  std::vector<std::vector<CriticalPoint>> results(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int s = 0; s < n; ++s) {
    results[static_cast<std::size_t>(s)] =
        workers_[static_cast<std::size_t>(s)].process(sub[static_cast<std::size_t>(s)]);
  }

  std::vector<CriticalPoint> merged;
  for (auto& part : results) {
    merged.insert(merged.end(), part.begin(), part.end());
  }
  std::stable_sort(merged.begin(), merged.end(), merge_less);
  return merged;
}

NoiseTally ShardedTracker::noise_tally() const {
  NoiseTally t;
  for (const auto& w : workers_) t += w.noise_tally();
  return t;
}

std::uint64_t ShardedTracker::accepted() const {
  std::uint64_t n = 0;
  for (const auto& w : workers_) n += w.accepted();
  return n;
}

VesselState::ClassCounts ShardedTracker::class_counts() const {
  VesselState::ClassCounts total{};
  for (const auto& w : workers_) {
    const auto c = w.class_counts();
    for (std::size_t i = 0; i < total.size(); ++i) total[i] += c[i];
  }
  return total;
}

std::map<Mmsi, std::vector<PositionReport>> ShardedTracker::raw_accepted() const {
  std::map<Mmsi, std::vector<PositionReport>> all;
  for (const auto& w : workers_) {
    for (const auto& [mmsi, v] : w.raw_accepted()) all[mmsi] = v;
  }
  return all;
}

std::vector<CeInstance> sharded_recognize(std::span<const CriticalPoint> events,
                                          Timestamp q, Timestamp omega,
                                          std::vector<GridIndex>& shard_grids,
                                          const CeConfig& cfg) {
  const int n = static_cast<int>(shard_grids.size());
  if (n <= 1) {
    return recognize(events, q, omega, shard_grids.front(), cfg);
  }
  const int nx = shard_grids.front().config().nx;

  // Route each vessel's whole in-window substream to every shard whose band
  // its trajectory touches, widened by one cell for neighborhood queries.
  std::map<Mmsi, std::vector<CriticalPoint>> by_vessel;
  for (const CriticalPoint& me : events) by_vessel[me.mmsi].push_back(me);

  std::vector<std::vector<CriticalPoint>> shard_events(static_cast<std::size_t>(n));
  for (const auto& [mmsi, mes] : by_vessel) {
    std::set<int> shards;
    for (const CriticalPoint& me : mes) {
      const CellId c = shard_grids.front().cell(me.pos);
      for (int dx = -1; dx <= 1; ++dx) {
        const int ix = std::clamp(c.ix + dx, 0, nx - 1);
        shards.insert(shard_of_cell({ix, c.iy}, nx, n));
      }
    }
    for (int s : shards) {
      auto& dst = shard_events[static_cast<std::size_t>(s)];
      dst.insert(dst.end(), mes.begin(), mes.end());
    }
  }

  std::vector<std::vector<CeInstance>> results(static_cast<std::size_t>(n));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int s = 0; s < n; ++s) {
    auto own = [s, nx, n](CellId c) { return shard_of_cell(c, nx, n) == s; };
    results[static_cast<std::size_t>(s)] =
        recognize(shard_events[static_cast<std::size_t>(s)], q, omega,
                  shard_grids[static_cast<std::size_t>(s)], cfg, own);
  }

  std::vector<CeInstance> merged;
  for (auto& part : results) merged.insert(merged.end(), part.begin(), part.end());
  std::sort(merged.begin(), merged.end(), ce_less);
  return merged;
}

Pipeline::Pipeline(const RunConfig& cfg, const ReplayConfig& replay,
                   std::optional<GridIndex> grid)
    : cfg_(cfg), replay_(replay), grid_(std::move(grid)), synopsis_(cfg.window),
      window_(cfg.window.range_s) {
  if (replay_.shard_count < 1) throw std::invalid_argument("shard_count must be >= 1");
  if (replay_.shard_count == 1) {
    serial_ = std::make_unique<TrackerWorker>(cfg_.noise, cfg_.tracker, replay_.collect_raw);
  } else {
    sharded_ = std::make_unique<ShardedTracker>(cfg_.noise, cfg_.tracker,
                                                replay_.shard_count, replay_.collect_raw);
  }
  if (grid_ && replay_.recognize) {
    const int ce_shards =
        replay_.partitioning == Partitioning::kSubGrid ? replay_.shard_count : 1;
    for (int i = 0; i < ce_shards; ++i) shard_grids_.push_back(*grid_);
  }
}

void Pipeline::push(const PositionReport& r) {
  if (!started_) {
    started_ = true;
    const Timestamp beta = cfg_.window.slide_s;
    q_next_ = (r.tau / beta) * beta + beta;
  }
  while (r.tau > q_next_) {
    run_batch(q_next_);
    q_next_ += cfg_.window.slide_s;
  }
  pending_.push_back(r);
}

void Pipeline::finish() {
  if (!started_) return;
  run_batch(q_next_);
}

void Pipeline::run_batch(Timestamp q) {
  const auto t0 = std::chrono::steady_clock::now();
  ++m_.batches;

  std::vector<PositionReport> batch;
  batch.swap(pending_);
  m_.raw_records += batch.size();

  const Timestamp low = q - cfg_.window.range_s;
  std::erase_if(batch, [&](const PositionReport& r) {
    if (r.tau <= low) {
      ++m_.late_dropped;
      return true;
    }
    return false;
  });

  std::vector<CriticalPoint> cps =
      serial_ ? serial_->process(batch) : sharded_->process(batch);

  for (const CriticalPoint& cp : cps) {
    critical_.push_back(cp);
    critical_by_vessel_[cp.mmsi].push_back(cp);
    synopsis_.add(cp);
    if (!shard_grids_.empty()) window_.ingest(cp);
  }
  synopsis_.slide(q);
  window_state_sum_ += synopsis_.size();
  m_.window_state_max = std::max<std::uint64_t>(m_.window_state_max, synopsis_.size());

  if (!shard_grids_.empty()) recognize_at(q);

  const auto t1 = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  latency_sum_ms_ += ms;
  m_.latency_max_ms = std::max(m_.latency_max_ms, ms);
}

void Pipeline::recognize_at(Timestamp q) {
  const auto events = window_.collect(q);
  const auto found = sharded_recognize(events, q, cfg_.window.range_s, shard_grids_,
                                       cfg_.ce);
  for (const CeInstance& ce : found) {
    // identity ignores the end time: a closed interval supersedes the open
    // version reported by an earlier query
    auto key = std::make_tuple(ce.type, ce.v1, ce.v2, ce.t_start, ce.cell.ix, ce.cell.iy);
    ce_dedup_[key] = ce;
  }
}

std::map<Mmsi, std::vector<PositionReport>> Pipeline::raw_accepted() const {
  return serial_ ? serial_->raw_accepted() : sharded_->raw_accepted();
}

std::vector<CeInstance> Pipeline::ces() const {
  std::vector<CeInstance> out;
  out.reserve(ce_dedup_.size());
  for (const auto& [k, ce] : ce_dedup_) out.push_back(ce);
  std::sort(out.begin(), out.end(), ce_less);
  return out;
}

Metrics Pipeline::metrics() const {
  Metrics m = m_;
  const NoiseTally tally = serial_ ? serial_->noise_tally() : sharded_->noise_tally();
  m.noise = tally;
  m.accepted = serial_ ? serial_->accepted() : sharded_->accepted();
  m.critical_points = critical_.size();
  m.compression =
      m.accepted > 0 ? compression_ratio(m.accepted, m.critical_points) : 0.0;

  const auto classes = serial_ ? serial_->class_counts() : sharded_->class_counts();
  m.classes = classes;

  if (replay_.collect_raw) {
    const auto raw = serial_ ? serial_->raw_accepted() : sharded_->raw_accepted();
    double sum = 0.0;
    for (const auto& [mmsi, points] : raw) {
      auto it = critical_by_vessel_.find(mmsi);
      if (it == critical_by_vessel_.end() || it->second.empty()) {
        ++m.rmse_skipped;
        continue;
      }
      const double e = synopsis_rmse(points, it->second);
      sum += e;
      m.rmse_max_m = std::max(m.rmse_max_m, e);
      ++m.rmse_vessels;
    }
    m.rmse_mean_m = m.rmse_vessels > 0 ? sum / static_cast<double>(m.rmse_vessels) : 0.0;
  }

  m.latency_mean_ms = m.batches > 0 ? latency_sum_ms_ / static_cast<double>(m.batches) : 0.0;
  m.window_state_mean =
      m.batches > 0 ? static_cast<double>(window_state_sum_) / static_cast<double>(m.batches)
                    : 0.0;
  const double total_s = latency_sum_ms_ / 1000.0;
  m.throughput_pos_s =
      total_s > 0.0 ? static_cast<double>(m.raw_records) / total_s : 0.0;

  m.mes_ingested = window_.ingested();
  for (const auto& ce : ces()) {
    ++m.ce_counts[std::string(to_string(ce.type))];
    ++m.ces_total;
  }
  m.ce_me_ratio =
      m.mes_ingested > 0 ? static_cast<double>(m.ces_total) / static_cast<double>(m.mes_ingested)
                         : 0.0;
  return m;
}

std::string Metrics::to_json() const {
  nlohmann::json j;
  j["raw_records"] = raw_records;
  j["late_dropped"] = late_dropped;
  j["accepted"] = accepted;
  j["noise"] = {
      {"total", noise.total()},
      {"off_course", noise.by_reason[0]},
      {"abrupt_turn", noise.by_reason[1]},
      {"implausible_speed", noise.by_reason[2]},
      {"duplicate", noise.by_reason[3]},
      {"timestamp_conflict", noise.by_reason[4]},
  };
  j["critical_points"] = critical_points;
  j["batches"] = batches;
  j["compression_ratio"] = compression;
  j["rmse"] = {{"mean_m", rmse_mean_m},
               {"max_m", rmse_max_m},
               {"vessels", rmse_vessels},
               {"skipped_empty_synopsis", rmse_skipped}};
  j["classes"] = {
      {"normal", classes[0]}, {"noise", noise.total()},    {"gap", classes[1]},
      {"stop", classes[2]},   {"turn", classes[3]},        {"speedChange", classes[4]},
      {"lowSpeed", classes[5]},
  };
  j["latency_ms"] = {{"mean", latency_mean_ms}, {"max", latency_max_ms}};
  j["throughput_pos_per_s"] = throughput_pos_s;
  j["window_state"] = {{"mean", window_state_mean}, {"max", window_state_max}};
  j["ces"] = {{"total", ces_total}, {"by_type", ce_counts}};
  j["mes_ingested"] = mes_ingested;
  j["ce_me_ratio"] = ce_me_ratio;
  return j.dump(2);
}

std::string Metrics::table() const {
  std::ostringstream os;
  os << "raw records        " << raw_records << "\n"
     << "late dropped       " << late_dropped << "\n"
     << "accepted           " << accepted << "\n"
     << "noise              " << noise.total() << "\n"
     << "critical points    " << critical_points << "\n"
     << "compression ratio  " << compression << "\n"
     << "rmse mean/max (m)  " << rmse_mean_m << " / " << rmse_max_m << "\n"
     << "batches            " << batches << "\n"
     << "latency ms mean/max " << latency_mean_ms << " / " << latency_max_ms << "\n"
     << "throughput pos/s   " << throughput_pos_s << "\n"
     << "window state mean/max " << window_state_mean << " / " << window_state_max << "\n"
     << "movement events    " << mes_ingested << "\n"
     << "complex events     " << ces_total << "\n"
     << "ce/me ratio        " << ce_me_ratio << "\n";
  return os.str();
}

}  // namespace seatrack
