// Throughput benchmark for the tracking stage: the serial reference worker
// against the hash-partitioned parallel tracker on the same batch.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "seatrack/fleet.hpp"
#include "seatrack/runtime.hpp"

using namespace seatrack;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<PositionReport> make_batch(std::size_t target, std::uint64_t seed) {
  SyntheticFleetSpec spec;
  spec.straight = 20;
  spec.turning = 16;
  spec.anchoring = 8;
  spec.gappy = 6;
  spec.duration_s = 2 * 3600;
  spec.report_period_s = 10;
  spec.cruise_knots = 10.0;
  const FleetData base = generate_fleet(spec, seed);
  const std::size_t per_run = base.stream.size();
  spec.increase_factor = static_cast<int>((target + per_run - 1) / per_run);
  FleetData fleet = generate_fleet(spec, seed);
  if (fleet.stream.size() > target) fleet.stream.resize(target);
  return fleet.stream;
}

double run_serial(const std::vector<PositionReport>& batch, std::size_t& cps) {
  TrackerWorker worker(NoiseConfig{}, TrackerConfig{}, /*collect_raw=*/false);
  const auto t0 = Clock::now();
  cps = worker.process(batch).size();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double run_sharded(const std::vector<PositionReport>& batch, int shards, std::size_t& cps) {
  ShardedTracker tracker(NoiseConfig{}, TrackerConfig{}, shards, /*collect_raw=*/false);
  const auto t0 = Clock::now();
  cps = tracker.process(batch).size();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tracker throughput: serial reference vs parallel shards"};
  std::size_t positions = 600000;
  std::uint64_t seed = 7;
  std::vector<int> shard_counts{1, 2, 4, 12};
  app.add_option("--positions", positions, "batch size");
  app.add_option("--seed", seed);
  app.add_option("--shards", shard_counts, "shard counts to time");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::cout << "openmp max threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "openmp: not enabled\n";
#endif

  const auto batch = make_batch(positions, seed);
  std::cout << "batch: " << batch.size() << " positions\n\n";

  std::size_t cps = 0;
  const double serial_s = run_serial(batch, cps);
  std::cout << "serial reference   " << serial_s << " s   (" << cps << " critical points, "
            << static_cast<double>(batch.size()) / serial_s << " pos/s)\n";

  for (int n : shard_counts) {
    std::size_t c = 0;
    const double t = run_sharded(batch, n, c);
    std::cout << "shards=" << n << "           " << t << " s   (" << c
              << " critical points, speedup x" << serial_s / t << ")\n";
  }
  return 0;
}
