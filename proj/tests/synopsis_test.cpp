#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "seatrack/exporters.hpp"
#include "seatrack/synopsis.hpp"

using namespace seatrack;

namespace {

CriticalPoint cp(Mmsi m, Timestamp ts, Timestamp te, GeoPoint p, Annotation a,
                 VelocityVector v = {}) {
  return {m, ts, te, p, a, v};
}

}  // namespace

TEST_CASE("compression ratio") {
  CHECK(compression_ratio(100, 100) == 0.0);
  CHECK(compression_ratio(100, 2) == doctest::Approx(0.98));
  CHECK(compression_ratio(1000, 80) == doctest::Approx(0.92));
  CHECK_THROWS_AS(compression_ratio(0, 0), ZeroRaw);
}

TEST_CASE("window slide evicts the closed-open boundary") {
  SynopsisStore store({6 * 3600, 3600});
  const Timestamp now = 100000;
  store.add(cp(1, now - 7 * 3600, now - 7 * 3600, {24, 36}, Annotation::kTurn));
  store.add(cp(1, now - 6 * 3600, now - 6 * 3600, {24, 36}, Annotation::kTurn));
  store.add(cp(1, now - 3600, now - 3600, {24, 36}, Annotation::kTurn));
  store.add(cp(2, now - 10, now - 10, {24, 36}, Annotation::kGapEnd));

  const auto evicted = store.slide(now);
  CHECK(evicted.size() == 2);   // the 7h-old point and the one exactly at now - range
  CHECK(store.size() == 2);
  for (const auto& [m, pts] : store.by_vessel()) {
    for (const auto& c : pts) {
      CHECK(c.t_end > now - 6 * 3600);
      CHECK(c.t_end <= now);
    }
  }
  CHECK(SynopsisStore({3600, 600}).slide(123456).empty());
}

TEST_CASE("rmse is zero when the synopsis keeps everything") {
  std::vector<PositionReport> raw;
  std::vector<CriticalPoint> syn;
  for (int i = 0; i < 10; ++i) {
    const GeoPoint p{24.0 + 0.01 * i, 36.0};
    raw.push_back({1, p, i * 60});
    syn.push_back(cp(1, i * 60, i * 60, p, Annotation::kTurn));
  }
  CHECK(synopsis_rmse(raw, syn) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("rmse of a dropped collinear midpoint is zero") {
  const GeoPoint a{24.0, 36.0};
  const GeoPoint b = destination_point(a, 90.0, 2000.0);
  const GeoPoint mid{(a.lon + b.lon) / 2, (a.lat + b.lat) / 2};
  const std::vector<PositionReport> raw{{1, a, 0}, {1, mid, 300}, {1, b, 600}};
  const std::vector<CriticalPoint> syn{cp(1, 0, 0, a, Annotation::kTurn),
                                       cp(1, 600, 600, b, Annotation::kTurn)};
  CHECK(synopsis_rmse(raw, syn) < 0.5);
}

TEST_CASE("rmse of a dropped offset midpoint matches the direct formula") {
  const GeoPoint a{24.0, 36.0};
  const GeoPoint b = destination_point(a, 90.0, 2000.0);
  const GeoPoint mid{(a.lon + b.lon) / 2, (a.lat + b.lat) / 2};
  const GeoPoint off = destination_point(mid, 0.0, 100.0);
  const std::vector<PositionReport> raw{{1, a, 0}, {1, off, 300}, {1, b, 600}};
  const std::vector<CriticalPoint> syn{cp(1, 0, 0, a, Annotation::kTurn),
                                       cp(1, 600, 600, b, Annotation::kTurn)};
  // sqrt((0 + 100^2 + 0) / 3)
  CHECK(synopsis_rmse(raw, syn) == doctest::Approx(57.735).epsilon(0.02));
  CHECK(synopsis_rmse(raw, syn) ==
        doctest::Approx(oracle::rmse_reference(raw, syn)).epsilon(1e-9));
}

TEST_CASE("rmse against the reference on random tracks") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> d(-0.05, 0.05);
  for (int round = 0; round < 50; ++round) {
    std::vector<PositionReport> raw;
    std::vector<CriticalPoint> syn;
    GeoPoint p{24.0, 36.0};
    for (int i = 0; i < 40; ++i) {
      p.lon += 0.01 + d(rng) * 0.1;
      p.lat += d(rng) * 0.02;
      raw.push_back({1, p, i * 60});
      if (i % 7 == 0) syn.push_back(cp(1, i * 60, i * 60, p, Annotation::kTurn));
    }
    // one synthesized stop in the middle of the window
    syn.push_back(cp(1, 1500, 1740, {24.2, 36.0}, Annotation::kStopped));
    std::sort(syn.begin(), syn.end(), merge_less);
    CHECK(synopsis_rmse(raw, syn) ==
          doctest::Approx(oracle::rmse_reference(raw, syn)).epsilon(1e-9));
  }
}

TEST_CASE("rmse with no synopsis points throws") {
  const std::vector<PositionReport> raw{{1, {24, 36}, 0}};
  CHECK_THROWS_AS(synopsis_rmse(raw, {}), EmptySynopsis);
}

TEST_CASE("trips split at stops") {
  const GeoPoint p{24, 36};
  SUBCASE("two stops bracket one trip") {
    const std::vector<CriticalPoint> pts{
        cp(1, 0, 600, p, Annotation::kStopped),
        cp(1, 1200, 1200, destination_point(p, 90, 5000), Annotation::kTurn),
        cp(1, 1800, 1800, destination_point(p, 90, 10000), Annotation::kTurn),
        cp(1, 3000, 3600, destination_point(p, 90, 15000), Annotation::kStopped),
    };
    const auto trips = reconstruct_trips(pts);
    REQUIRE(trips.size() == 1);
    CHECK(trips[0].points.size() == 4);
    CHECK_FALSE(trips[0].open_start);
    CHECK_FALSE(trips[0].open_end);
    CHECK(trips[0].travel_time_s == 3000 - 600);
    CHECK(trips[0].distance_m == doctest::Approx(15000.0).epsilon(0.01));
  }
  SUBCASE("no stops: one open-ended trip") {
    const std::vector<CriticalPoint> pts{
        cp(1, 0, 0, p, Annotation::kTurn),
        cp(1, 600, 600, destination_point(p, 90, 5000), Annotation::kTurn),
    };
    const auto trips = reconstruct_trips(pts);
    REQUIRE(trips.size() == 1);
    CHECK(trips[0].open_start);
    CHECK(trips[0].open_end);
    CHECK(trips[0].points.size() == 2);
  }
  SUBCASE("empty input") { CHECK(reconstruct_trips({}).empty()); }
  SUBCASE("leading and trailing open segments") {
    const std::vector<CriticalPoint> pts{
        cp(1, 0, 0, p, Annotation::kTurn),
        cp(1, 600, 900, destination_point(p, 90, 5000), Annotation::kStopped),
        cp(1, 1500, 1500, destination_point(p, 90, 9000), Annotation::kTurn),
    };
    const auto trips = reconstruct_trips(pts);
    REQUIRE(trips.size() == 2);
    CHECK(trips[0].open_start);
    CHECK_FALSE(trips[0].open_end);
    CHECK_FALSE(trips[1].open_start);
    CHECK(trips[1].open_end);
  }
}

TEST_CASE("critical csv round trip is exact") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90), sp(0, 30),
      hd(0, 360);
  std::vector<CriticalPoint> pts;
  for (int i = 0; i < 200; ++i) {
    const auto a = static_cast<Annotation>(rng() % 7);
    const Timestamp ts = static_cast<Timestamp>(rng() % 1000000);
    pts.push_back(cp(static_cast<Mmsi>(1 + rng() % 5000), ts,
                     a == Annotation::kStopped ? ts + 600 : ts, {lon(rng), lat(rng)}, a,
                     {sp(rng), hd(rng)}));
  }
  std::stringstream ss;
  write_critical_csv(ss, pts);
  const auto back = read_critical_csv(ss);
  REQUIRE(back.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back[i] == pts[i]);   // bit-exact fields
  }
}

TEST_CASE("exports produce well-formed documents") {
  const std::vector<CriticalPoint> two{
      cp(7, 100, 100, {24.5, 36.5}, Annotation::kTurn, {10, 90}),
      cp(7, 200, 200, {24.6, 36.5}, Annotation::kTurn, {10, 92}),
  };
  SUBCASE("empty documents are valid") {
    std::stringstream csv, gj, kml;
    write_critical_csv(csv, {});
    CHECK(csv.str() == "mmsi,t_start,t_end,lon,lat,event_type,speed,heading\n");
    write_geojson(gj, {});
    CHECK(gj.str().find("FeatureCollection") != std::string::npos);
    write_kml(kml, {});
    CHECK(kml.str().find("<kml") != std::string::npos);
  }
  SUBCASE("a stop row keeps its duration") {
    std::stringstream ss;
    write_critical_csv(ss, std::vector<CriticalPoint>{
                               cp(7, 100, 800, {24.5, 36.5}, Annotation::kStopped)});
    const auto back = read_critical_csv(ss);
    REQUIRE(back.size() == 1);
    CHECK(back[0].t_start < back[0].t_end);
  }
  SUBCASE("two turn points: one polyline, two point placemarks") {
    std::stringstream ss;
    write_kml(ss, two);
    const std::string doc = ss.str();
    auto count = [&](const std::string& needle) {
      std::size_t n = 0, at = 0;
      while ((at = doc.find(needle, at)) != std::string::npos) {
        ++n;
        at += needle.size();
      }
      return n;
    };
    CHECK(count("<LineString>") == 1);
    CHECK(count("<Point>") == 2);
  }
  SUBCASE("geojson carries per-point properties") {
    std::stringstream ss;
    write_geojson(ss, two);
    CHECK(ss.str().find("\"event_type\": \"turn\"") != std::string::npos);
    CHECK(ss.str().find("\"mmsi\": 7") != std::string::npos);
  }
}
