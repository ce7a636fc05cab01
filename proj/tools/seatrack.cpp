#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seatrack/exporters.hpp"
#include "seatrack/fleet.hpp"
#include "seatrack/io.hpp"
#include "seatrack/runtime.hpp"

namespace fs = std::filesystem;
using namespace seatrack;

namespace {

Timestamp parse_duration(const std::string& s) {
  if (s.empty()) throw CLI::ValidationError("duration", "empty duration");
  char suffix = s.back();
  std::string digits = s;
  Timestamp mult = 1;
  if (suffix == 's' || suffix == 'm' || suffix == 'h') {
    digits = s.substr(0, s.size() - 1);
    mult = suffix == 's' ? 1 : suffix == 'm' ? 60 : 3600;
  }
  return std::stoll(digits) * mult;
}

GridIndex build_grid(const RunConfig& cfg, const std::string& areas_path,
                     const std::string& ports_path) {
  std::vector<AreaPolygon> areas;
  std::vector<Port> ports;
  if (!areas_path.empty()) {
    std::ifstream f(areas_path);
    if (!f) throw std::runtime_error("cannot open areas file: " + areas_path);
    areas = read_areas_geojson(f);
  }
  if (!ports_path.empty()) {
    std::ifstream f(ports_path);
    if (!f) throw std::runtime_error("cannot open ports file: " + ports_path);
    ports = read_ports_csv(f, cfg.port_radius_m);
  }
  return GridIndex(cfg.grid, std::move(areas), std::move(ports));
}

nlohmann::json ce_to_json(const CeInstance& ce) {
  nlohmann::json j;
  j["name"] = std::string(to_string(ce.type));
  j["v1"] = ce.v1;
  if (ce.v2 != 0) j["v2"] = ce.v2;
  j["t_start"] = ce.t_start;
  j["t_end"] = ce.t_end;
  if (ce.open) j["open"] = true;
  if (ce.has_pos) {
    j["lon"] = ce.pos.lon;
    j["lat"] = ce.pos.lat;
  }
  j["cell"] = {ce.cell.ix, ce.cell.iy};
  return j;
}

int cmd_run(const std::string& input, const std::string& areas, const std::string& ports,
            const std::string& config_path, const std::string& window,
            const std::string& slide, int shards, const std::string& partition,
            const std::string& out_dir) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (!window.empty()) cfg.window.range_s = parse_duration(window);
  if (!slide.empty()) cfg.window.slide_s = parse_duration(slide);

  ReplayConfig replay;
  replay.shard_count = shards;
  const auto part = partitioning_from(partition);
  if (!part) {
    std::cerr << "unknown partitioning: " << partition << "\n";
    return 2;
  }
  replay.partitioning = *part;

  std::ifstream in(input);
  if (!in) {
    std::cerr << "cannot open input: " << input << "\n";
    return 2;
  }
  AisCsvStats stats;
  const auto reports = read_ais_csv(in, &stats);

  Pipeline pipeline(cfg, replay, build_grid(cfg, areas, ports));
  for (const PositionReport& r : reports) pipeline.push(r);
  pipeline.finish();

  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / "critical_points.csv");
    write_critical_csv(f, pipeline.critical());
  }
  {
    std::ofstream f(fs::path(out_dir) / "ces.jsonl");
    for (const CeInstance& ce : pipeline.ces()) f << ce_to_json(ce).dump() << "\n";
  }
  Metrics m = pipeline.metrics();
  {
    std::ofstream f(fs::path(out_dir) / "metrics.json");
    f << m.to_json() << "\n";
  }
  std::cout << m.table();
  std::cout << "malformed input rows: " << stats.malformed << "\n";
  std::cout << "outputs in " << out_dir << "\n";
  return 0;
}

int cmd_generate(SyntheticFleetSpec spec, std::uint64_t seed, const std::string& out_dir) {
  const FleetData fleet = generate_fleet(spec, seed);
  fs::create_directories(out_dir);
  {
    std::ofstream f(fs::path(out_dir) / "stream.csv");
    write_ais_csv(f, fleet.stream);
  }
  {
    nlohmann::json truth = nlohmann::json::array();
    for (const Plant& p : fleet.plants) {
      nlohmann::json j;
      j["kind"] = std::string(to_string(p.kind));
      j["a"] = p.a;
      if (p.b != 0) j["b"] = p.b;
      j["t0"] = p.t0;
      j["t1"] = p.t1;
      j["lon"] = p.where.lon;
      j["lat"] = p.where.lat;
      truth.push_back(j);
    }
    std::ofstream f(fs::path(out_dir) / "truth.json");
    f << truth.dump(2) << "\n";
  }
  {
    std::ofstream f(fs::path(out_dir) / "ports.csv");
    write_ports_csv(f, demo_ports());
  }
  {
    std::ofstream f(fs::path(out_dir) / "areas.geojson");
    write_areas_geojson(f, demo_areas());
  }
  {
    std::ofstream f(fs::path(out_dir) / "run.conf");
    write_config(f, RunConfig{});
  }
  std::cout << "vessels: " << fleet.vessel_count << "\nreports: " << fleet.stream.size()
            << "\nplants: " << fleet.plants.size() << "\ninjected noise: "
            << fleet.injected_noise << "\noutputs in " << out_dir << "\n";
  return 0;
}

int cmd_eval(const std::string& input, const std::string& synopsis_path,
             const std::string& config_path) {
  RunConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);

  std::ifstream in(input);
  if (!in) {
    std::cerr << "cannot open input: " << input << "\n";
    return 2;
  }
  const auto reports = read_ais_csv(in);

  std::ifstream sf(synopsis_path);
  if (!sf) {
    std::cerr << "cannot open synopsis: " << synopsis_path << "\n";
    return 2;
  }
  const auto critical = read_critical_csv(sf);

  // re-run the noise filter to reconstruct the accepted positions
  TrackerWorker worker(cfg.noise, cfg.tracker, /*collect_raw=*/true);
  worker.process(reports);

  std::map<Mmsi, std::vector<CriticalPoint>> by_vessel;
  for (const CriticalPoint& c : critical) by_vessel[c.mmsi].push_back(c);

  double sum = 0.0, max_e = 0.0;
  std::uint64_t vessels = 0, skipped = 0;
  for (const auto& [mmsi, raw] : worker.raw_accepted()) {
    auto it = by_vessel.find(mmsi);
    if (it == by_vessel.end() || it->second.empty()) {
      ++skipped;
      continue;
    }
    const double e = synopsis_rmse(raw, it->second);
    sum += e;
    max_e = std::max(max_e, e);
    ++vessels;
  }

  nlohmann::json j;
  j["accepted"] = worker.accepted();
  j["critical_points"] = critical.size();
  j["compression_ratio"] =
      worker.accepted() > 0 ? compression_ratio(worker.accepted(), critical.size()) : 0.0;
  j["rmse"] = {{"mean_m", vessels ? sum / static_cast<double>(vessels) : 0.0},
               {"max_m", max_e},
               {"vessels", vessels},
               {"skipped_empty_synopsis", skipped}};

  // voyage statistics from the compressed trajectories
  std::uint64_t trips = 0, open_ended = 0, trip_points = 0;
  double travel_s = 0.0, distance_m = 0.0;
  for (auto& [mmsi, pts] : by_vessel) {
    std::sort(pts.begin(), pts.end(), merge_less);
    for (const Trip& t : reconstruct_trips(pts)) {
      ++trips;
      open_ended += (t.open_start || t.open_end) ? 1 : 0;
      trip_points += t.points.size();
      travel_s += static_cast<double>(t.travel_time_s);
      distance_m += t.distance_m;
    }
  }
  j["trips"] = {
      {"count", trips},
      {"open_ended", open_ended},
      {"avg_points", trips ? static_cast<double>(trip_points) / trips : 0.0},
      {"avg_travel_s", trips ? travel_s / trips : 0.0},
      {"avg_distance_m", trips ? distance_m / trips : 0.0},
  };
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_export(const std::string& input, const std::string& format,
               const std::string& out_dir, bool split) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "cannot open input: " << input << "\n";
    return 2;
  }
  const auto points = read_critical_csv(in);

  ExportFormat fmt;
  std::string ext;
  if (format == "csv") {
    fmt = ExportFormat::kCsv;
    ext = "csv";
  } else if (format == "geojson") {
    fmt = ExportFormat::kGeoJson;
    ext = "geojson";
  } else if (format == "kml") {
    fmt = ExportFormat::kKml;
    ext = "kml";
  } else {
    std::cerr << "unknown format: " << format << "\n";
    return 2;
  }

  fs::create_directories(out_dir);
  if (split) {
    std::map<Mmsi, std::vector<CriticalPoint>> by_vessel;
    for (const CriticalPoint& c : points) by_vessel[c.mmsi].push_back(c);
    for (const auto& [mmsi, pts] : by_vessel) {
      std::ofstream f(fs::path(out_dir) / (std::to_string(mmsi) + "." + ext));
      export_points(f, pts, fmt);
    }
    std::cout << "wrote " << by_vessel.size() << " per-vessel files to " << out_dir << "\n";
  } else {
    const fs::path out = fs::path(out_dir) / ("synopses." + ext);
    std::ofstream f(out);
    export_points(f, points, fmt);
    std::cout << "wrote " << out.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maritime trajectory synopses and complex event recognition"};
  app.require_subcommand(1);

  std::string input, areas, ports, config_path, out_dir = "out";
  std::string window, slide, partition = "mmsi_hash", format = "csv";
  int shards = 1;
  std::uint64_t seed = 42;
  bool split = false;

  auto* run = app.add_subcommand("run", "replay a position stream and recognize events");
  run->add_option("--input", input, "AIS csv: mmsi,lon,lat,tau")->required();
  run->add_option("--areas", areas, "GeoJSON polygons of protected areas");
  run->add_option("--ports", ports, "ports csv: id,lon,lat[,radius_m]");
  run->add_option("--config", config_path, "key = value parameter file");
  run->add_option("--window", window, "window range, e.g. 6h");
  run->add_option("--slide", slide, "slide step, e.g. 1h");
  run->add_option("--shards", shards, "parallel workers");
  run->add_option("--partition", partition, "mmsi_hash | sub_grid");
  run->add_option("--out-dir", out_dir, "output directory");

  SyntheticFleetSpec spec;
  std::string duration = "6h", period = "120s";
  auto* gen = app.add_subcommand("generate", "synthesize a fleet with a ground-truth ledger");
  gen->add_option("--straight", spec.straight);
  gen->add_option("--turning", spec.turning);
  gen->add_option("--anchoring", spec.anchoring);
  gen->add_option("--gappy", spec.gappy);
  gen->add_option("--delayed", spec.delayed);
  gen->add_option("--rendezvous", spec.rendezvous_pairs);
  gen->add_option("--approach", spec.approach_pairs);
  gen->add_option("--picking", spec.picking_pairs);
  gen->add_option("--duration", duration, "e.g. 24h");
  gen->add_option("--period", period, "reporting period, e.g. 120s");
  gen->add_option("--cruise-knots", spec.cruise_knots);
  gen->add_option("--dup-per-kilo", spec.dup_per_kilo);
  gen->add_option("--outseq-per-kilo", spec.outseq_per_kilo);
  gen->add_option("--conflict-per-kilo", spec.conflict_per_kilo);
  gen->add_option("--spike-per-kilo", spec.spike_per_kilo);
  gen->add_option("--increase-factor", spec.increase_factor);
  gen->add_option("--seed", seed);
  gen->add_option("--out-dir", out_dir, "output directory");

  std::string synopsis_path;
  auto* eval = app.add_subcommand("eval", "error and compression metrics for a finished run");
  eval->add_option("--input", input, "raw AIS csv")->required();
  eval->add_option("--synopsis", synopsis_path, "critical-point csv")->required();
  eval->add_option("--config", config_path, "key = value parameter file");

  auto* exp = app.add_subcommand("export", "convert a critical-point csv");
  exp->add_option("--input", input, "critical-point csv")->required();
  exp->add_option("--format", format, "csv | geojson | kml");
  exp->add_option("--out-dir", out_dir, "output directory");
  exp->add_flag("--split", split, "one file per vessel, named <mmsi>.<ext>");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return cmd_run(input, areas, ports, config_path, window, slide, shards, partition,
                     out_dir);
    }
    if (gen->parsed()) {
      spec.duration_s = parse_duration(duration);
      spec.report_period_s = parse_duration(period);
      return cmd_generate(spec, seed, out_dir);
    }
    if (eval->parsed()) return cmd_eval(input, synopsis_path, config_path);
    if (exp->parsed()) return cmd_export(input, format, out_dir, split);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
