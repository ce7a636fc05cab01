#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "seatrack/config.hpp"
#include "seatrack/intervals.hpp"
#include "seatrack/noise.hpp"
#include "seatrack/patterns.hpp"
#include "seatrack/synopsis.hpp"

namespace seatrack {

enum class Partitioning { kMmsiHash, kSubGrid };

std::string_view to_string(Partitioning p);
std::optional<Partitioning> partitioning_from(std::string_view s);

/// Stable across platforms and runs; never use std::hash for routing.
std::uint64_t stable_hash(std::uint64_t x);

/// Vessel-to-worker assignment for tracking.
int shard_of_vessel(Mmsi mmsi, int shard_count);

/// Cell-to-worker assignment for recognition: contiguous column bands.
int shard_of_cell(CellId cell, int nx, int shard_count);

struct ReplayConfig {
  int shard_count = 1;
  Partitioning partitioning = Partitioning::kMmsiHash;
  bool collect_raw = true;     // retain accepted positions for error metrics
  bool recognize = true;       // run the recognition stage
};

struct NoiseTally {
  std::array<std::uint64_t, 5> by_reason{};
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto v : by_reason) t += v;
    return t;
  }
  void count(NoiseReason r) { ++by_reason[static_cast<std::size_t>(r)]; }
  NoiseTally& operator+=(const NoiseTally& o) {
    for (std::size_t i = 0; i < by_reason.size(); ++i) by_reason[i] += o.by_reason[i];
    return *this;
  }
};

/// Serial filter + tracker worker over the vessels routed to it. This is the
/// reference kernel; the sharded tracker runs several of these in parallel.
class TrackerWorker {
 public:
  TrackerWorker(const NoiseConfig& noise, const TrackerConfig& tracker, bool collect_raw)
      : noise_(noise), tracker_(tracker), collect_raw_(collect_raw) {}

  /// Reports must arrive in stream order for each vessel.
  std::vector<CriticalPoint> process(std::span<const PositionReport> batch);

  const NoiseTally& noise_tally() const { return tally_; }
  std::uint64_t accepted() const;
  VesselState::ClassCounts class_counts() const;
  const std::map<Mmsi, std::vector<PositionReport>>& raw_accepted() const { return raw_; }
  std::size_t vessel_count() const { return lanes_.size(); }

 private:
  NoiseConfig noise_;
  TrackerConfig tracker_;
  bool collect_raw_;
  NoiseTally tally_;
  std::map<Mmsi, VesselState> lanes_;
  std::map<Mmsi, std::vector<PositionReport>> raw_;
};

/// Hash-partitioned tracking: one worker per shard, batches split by vessel
/// id and processed in parallel, outputs merged into a deterministic order.
class ShardedTracker {
 public:
  ShardedTracker(const NoiseConfig& noise, const TrackerConfig& tracker, int shards,
                 bool collect_raw);

  std::vector<CriticalPoint> process(std::span<const PositionReport> batch);

  int shards() const { return static_cast<int>(workers_.size()); }
  NoiseTally noise_tally() const;
  std::uint64_t accepted() const;
  VesselState::ClassCounts class_counts() const;
  std::map<Mmsi, std::vector<PositionReport>> raw_accepted() const;

 private:
  std::vector<TrackerWorker> workers_;
};

/// Recognition over sub-grid shards: each worker owns a band of cells, sees
/// the in-window events of every vessel whose trajectory touches its band
/// (dilated by one cell ring for proximity queries), and reports only events
/// anchored in cells it owns. Equals single-instance recognition exactly.
std::vector<CeInstance> sharded_recognize(std::span<const CriticalPoint> events,
                                          Timestamp q, Timestamp omega,
                                          std::vector<GridIndex>& shard_grids,
                                          const CeConfig& cfg);

struct Metrics {
  std::uint64_t raw_records = 0;
  std::uint64_t late_dropped = 0;
  std::uint64_t accepted = 0;
  NoiseTally noise;
  std::uint64_t critical_points = 0;
  std::uint64_t batches = 0;
  double compression = 0.0;
  double rmse_mean_m = 0.0;
  double rmse_max_m = 0.0;
  std::uint64_t rmse_vessels = 0;
  std::uint64_t rmse_skipped = 0;
  std::array<std::uint64_t, static_cast<std::size_t>(RawClass::kCount)> classes{};
  double latency_mean_ms = 0.0;
  double latency_max_ms = 0.0;
  double throughput_pos_s = 0.0;
  double window_state_mean = 0.0;
  std::uint64_t window_state_max = 0;
  std::uint64_t mes_ingested = 0;
  std::map<std::string, std::uint64_t> ce_counts;
  std::uint64_t ces_total = 0;
  double ce_me_ratio = 0.0;

  std::string to_json() const;
  std::string table() const;
};

/// Full replay pipeline: watermark batching on data time, noise filtering,
/// tracking, synopsis maintenance, and windowed recognition per slide.
class Pipeline {
 public:
  Pipeline(const RunConfig& cfg, const ReplayConfig& replay,
           std::optional<GridIndex> grid);

  void push(const PositionReport& r);
  void finish();

  const std::vector<CriticalPoint>& critical() const { return critical_; }
  const std::map<Mmsi, std::vector<CriticalPoint>>& critical_by_vessel() const {
    return critical_by_vessel_;
  }
  /// Accepted raw positions per vessel (empty when collect_raw is off).
  std::map<Mmsi, std::vector<PositionReport>> raw_accepted() const;
  /// Final recognized set: instances deduplicated across queries (an open
  /// interval is superseded by its closed version).
  std::vector<CeInstance> ces() const;
  const SynopsisStore& synopsis() const { return synopsis_; }
  Metrics metrics() const;

 private:
  void run_batch(Timestamp q);
  void recognize_at(Timestamp q);

  RunConfig cfg_;
  ReplayConfig replay_;
  std::optional<GridIndex> grid_;
  std::vector<GridIndex> shard_grids_;

  std::unique_ptr<TrackerWorker> serial_;
  std::unique_ptr<ShardedTracker> sharded_;

  SynopsisStore synopsis_;
  EventWindow window_;

  std::vector<PositionReport> pending_;
  bool started_ = false;
  Timestamp q_next_ = 0;

  std::vector<CriticalPoint> critical_;
  std::map<Mmsi, std::vector<CriticalPoint>> critical_by_vessel_;
  std::map<std::tuple<CeType, Mmsi, Mmsi, Timestamp, int, int>, CeInstance> ce_dedup_;

  Metrics m_;
  double latency_sum_ms_ = 0.0;
  std::uint64_t window_state_sum_ = 0;
};

}  // namespace seatrack
