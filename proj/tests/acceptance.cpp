// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_harness.hpp"
#include "ppm/data_io.hpp"
#include "ppm/format.hpp"
#include "ppm/pp_metric.hpp"
#include "test_support.hpp"

using namespace ppm;
using testing::oracle_harmonic_pp;
using testing::relative_error;
using testing::run;
using testing::within_ulps;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr long kTableTolHundredths = 1;      // +-0.01 percentage points
constexpr double kTableMaxSeconds = 1.0;
constexpr int kZeroRuleDatasets = 500;
constexpr int kOracleVectors = 1000;
constexpr double kOracleRelTol = 1e-12;
constexpr int kPropertyCases = 500;
constexpr std::uint64_t kPropertyUlps = 4;
constexpr double kMatrixMaxSeconds = 2.0;
constexpr int kRoundTrips = 100;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// "43.24%" -> 4324
long hundredths(const std::string& percent) {
  auto dot = percent.find('.');
  return std::stol(percent.substr(0, dot)) * 100 + std::stol(percent.substr(dot + 1, 2));
}

std::string fmt(double v) { return format_decimal(v); }

// 1 ------------------------------------------------------------------------
Outcome table_b_rows() {
  Outcome o;
  struct Row {
    std::string set;
    double arch;
    double app;
  };
  const std::vector<Row> printed{{"all", 0.00, 0.00},
                                 {"ABCE", 13.62, 43.23},
                                 {"ABC", 12.97, 70.59},
                                 {"AC", 10.67, 66.67},
                                 {"A", 16.00, 100.00}};
  auto t0 = Clock::now();
  auto r = run({"matrix", "--corpus", "tableI", "--format", "json"});
  double elapsed = seconds_since(t0);
  if (r.code != 0) {
    o.fail("matrix exited " + std::to_string(r.code) + ": " + r.err);
    return o;
  }
  auto doc = nlohmann::json::parse(r.out);
  std::map<std::pair<std::string, std::string>, double> got;
  for (const auto& c : doc["cells"]) {
    if (c["pp"].is_null()) {
      o.fail("error cell " + c["set"].get<std::string>());
      continue;
    }
    got[{c["set"], c["kind"]}] = c["pp"].get<double>();
  }
  long worst = 0;
  for (const auto& row : printed) {
    for (auto [kind, expected] :
         {std::pair{"architectural", row.arch}, std::pair{"application", row.app}}) {
      auto it = got.find({row.set, kind});
      if (it == got.end()) {
        o.fail("missing row " + row.set + " " + kind);
        continue;
      }
      long diff = std::labs(hundredths(format_percent(it->second)) -
                            std::lround(expected * 100.0));
      worst = std::max(worst, diff);
      if (diff > kTableTolHundredths) {
        o.fail(row.set + " " + kind + ": " + format_percent(it->second) + " vs " +
               fmt(expected) + "%");
      }
    }
  }
  if (elapsed >= kTableMaxSeconds) o.fail("took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "10 values, max deviation " + fmt(static_cast<double>(worst) / 100.0) +
               " pp, " + fmt(std::round(elapsed * 1e4) / 1e4) + " s";
  }
  return o;
}

// 2 ------------------------------------------------------------------------
Outcome table_a_columns() {
  Outcome o;
  auto ds = load_corpus("tableI");
  ApplicationId app("example");
  ProblemId problem("five-platform");
  auto all = PlatformSet::parse("all:A,B,C,D,E");
  const std::vector<int> arch_pct{16, 23, 8, -1, 16};
  const std::vector<int> app_pct{100, 80, 50, -1, 20};
  for (auto [kind, expected] : {std::pair{EfficiencyKind::architectural, arch_pct},
                                std::pair{EfficiencyKind::application, app_pct}}) {
    auto result = pp_for(app, problem, all, kind, ds);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& rec = result.breakdown[i];
      std::string where = std::string(short_name(kind)) + " " + rec.platform.name();
      if (expected[i] < 0) {
        if (rec.status != EfficiencyStatus::declared_unsupported) {
          o.fail(where + " should be unsupported");
        }
        continue;
      }
      if (rec.status != EfficiencyStatus::supported) {
        o.fail(where + " not supported");
        continue;
      }
      auto rounded = format_percent(rec.value, 0);
      if (rounded != std::to_string(expected[i]) + "%") {
        o.fail(where + ": " + rounded + " vs " + std::to_string(expected[i]) + "%");
      }
    }
  }
  if (o.pass) o.detail = "8 efficiencies rounded to whole percent, D UNSUPPORTED";
  return o;
}

// 3 ------------------------------------------------------------------------
Outcome zero_rule() {
  Outcome o;
  std::mt19937_64 rng(3);
  PPOptions clamp;
  clamp.efficiency.clamp = true;  // random peaks may sit below observed rates
  int zero = 0;
  int positive = 0;
  int generated = 0;
  while (generated < kZeroRuleDatasets) {
    auto ds = testing::random_dataset(rng);
    if (ds.measurements.empty()) continue;
    ++generated;
    auto problem = ds.problems().front();
    auto platforms = ds.platforms(problem);
    std::vector<PlatformId> members;
    for (const auto& p : platforms) {
      if (rng() % 2) members.push_back(p);
    }
    if (rng() % 5 == 0) members.emplace_back("ghost-platform");
    if (members.empty()) members.push_back(platforms.front());
    PlatformSet set("H", members);
    for (const auto& app : ds.applications(problem)) {
      for (auto kind : {EfficiencyKind::architectural, EfficiencyKind::application}) {
        auto metric = select_metric(ds, problem, kind);
        bool all_supported = std::all_of(members.begin(), members.end(), [&](const auto& p) {
          return std::any_of(ds.measurements.begin(), ds.measurements.end(),
                             [&](const Measurement& m) {
                               return m.application == app && m.platform == p &&
                                      m.metric == metric && m.supported;
                             });
        });
        double v = pp_for(app, problem, set, kind, ds, clamp).value;
        if (all_supported ? !(v > 0.0) : v != 0.0) {
          o.fail("dataset " + std::to_string(generated) + " " + app.display() + ": pp=" + fmt(v));
        }
        (v == 0.0 ? zero : positive)++;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(kZeroRuleDatasets) + " datasets, " + std::to_string(zero) +
               " zero / " + std::to_string(positive) + " positive";
  }
  return o;
}

std::vector<EfficiencyRecord> records(const std::vector<double>& values) {
  std::vector<EfficiencyRecord> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({PlatformId("p" + std::to_string(i)), EfficiencyKind::architectural,
                   EfficiencyStatus::supported, values[i], std::nullopt, std::nullopt, false});
  }
  return out;
}

double pp_of(const std::vector<double>& values) {
  std::vector<PlatformId> members;
  for (std::size_t i = 0; i < values.size(); ++i) members.emplace_back("p" + std::to_string(i));
  return pp(ApplicationId("a"), ProblemId("p"), PlatformSet("H", members),
            EfficiencyKind::architectural, records(values))
      .value;
}

// 4 ------------------------------------------------------------------------
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int i = 0; i < kOracleVectors; ++i) {
    auto e = testing::random_efficiencies(rng, 1, 16);
    double err = relative_error(pp_of(e), oracle_harmonic_pp(e));
    worst = std::max(worst, err);
    if (!(err <= kOracleRelTol)) o.fail("vector " + std::to_string(i) + " rel err " + fmt(err));
  }
  if (o.pass) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", worst);
    o.detail = std::to_string(kOracleVectors) + " vectors, max rel err " + buf;
  }
  return o;
}

// 5 ------------------------------------------------------------------------
Outcome metric_properties() {
  Outcome o;
  std::mt19937_64 rng(5);
  auto near = [](double a, double b) { return within_ulps(a, b, kPropertyUlps); };
  auto check = [&](bool ok, const std::string& what, int i) {
    if (!ok) o.fail(what + " case " + std::to_string(i));
  };
  for (int i = 0; i < kPropertyCases; ++i) {
    auto e = testing::random_efficiencies(rng);
    double v = pp_of(e);

    // monotonicity
    auto up = e;
    std::size_t k = rng() % up.size();
    if (up[k] >= 0.999) up[k] = 0.5;
    double base = pp_of(up);
    up[k] += (1.0 - up[k]) * std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    check(pp_of(up) > base, "monotonicity", i);

    // bounds
    auto [lo, hi] = std::minmax_element(e.begin(), e.end());
    double mean = 0.0;
    for (double x : e) mean += x;
    mean /= static_cast<double>(e.size());
    check((v >= *lo || near(v, *lo)) && (v <= *hi || near(v, *hi)) &&
              (*hi <= 1.0) && (v <= mean || near(v, mean)),
          "bounds", i);

    // permutation invariance
    auto shuffled = e;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    check(near(pp_of(shuffled), v), "permutation", i);

    // fixed-point extension
    if (e.size() < 16) {
      auto ext = e;
      ext.push_back(v);
      check(near(pp_of(ext), v), "fixed-point", i);
    }

    // homogeneity
    double c = testing::unit_efficiency(rng);
    auto scaled = e;
    for (auto& x : scaled) x *= c;
    if (std::none_of(scaled.begin(), scaled.end(), [](double x) { return x == 0.0; })) {
      check(near(pp_of(scaled), c * v), "homogeneity", i);
    }
  }
  if (o.pass) {
    o.detail = "5 properties x " + std::to_string(kPropertyCases) + " cases within " +
               std::to_string(kPropertyUlps) + " ulps";
  }
  return o;
}

// 6 ------------------------------------------------------------------------

/// Efficiencies straight from raw rows: rate only, best = max over apps.
double stream_oracle(const Dataset& ds, const std::string& app, const std::vector<std::string>& set,
                     bool architectural) {
  std::vector<double> e;
  for (const auto& p : set) {
    double eff = 0.0;
    double best = 0.0;
    for (const auto& m : ds.measurements) {
      if (m.platform.name() == p && m.supported) best = std::max(best, *m.value);
    }
    for (const auto& m : ds.measurements) {
      if (m.application.name() != app || m.platform.name() != p || !m.supported) continue;
      eff = architectural ? *m.value / ds.spec_for(m.platform)->peaks.begin()->second
                          : *m.value / best;
    }
    e.push_back(eff);
  }
  return oracle_harmonic_pp(e);
}

Outcome stream_matrix() {
  Outcome o;
  auto ds = load_corpus("gpustream-shape");
  auto t0 = Clock::now();
  auto r = run({"matrix", "--corpus", "gpustream-shape", "--format", "json"});
  double elapsed = seconds_since(t0);
  if (r.code != 0) {
    o.fail("matrix exited " + std::to_string(r.code));
    return o;
  }
  auto doc = nlohmann::json::parse(r.out);
  const auto& cells = doc["cells"];
  if (cells.size() != 8 * 3 * 2) o.fail("cell count " + std::to_string(cells.size()));
  double worst = 0.0;
  for (const auto& c : cells) {
    if (c["pp"].is_null()) {
      o.fail("unexpected error cell");
      continue;
    }
    bool arch = c["kind"] == "architectural";
    double expected = stream_oracle(ds, c["application"], c["members"], arch);
    double err = relative_error(c["pp"].get<double>(), expected);
    worst = std::max(worst, err);
    if (!(err <= kOracleRelTol)) {
      o.fail(c["application"].get<std::string>() + "/" + c["set"].get<std::string>() +
             " disagrees with oracle");
    }
  }

  // Drop one GPU peak: arch cells over sets containing it turn into ERR only
  // where the application ran there; elsewhere the 0 stays a 0.
  const std::string dropped = "gpu-2";
  auto tmp = std::filesystem::temp_directory_path() / "ppm-acceptance-stream";
  std::filesystem::create_directories(tmp);
  {
    std::ofstream ms(tmp / "m.csv");
    write_measurements(ms, ds.measurements, DataFormat::csv);
    auto specs = ds.specs;
    std::erase_if(specs, [&](const PlatformSpec& s) { return s.platform.name() == dropped; });
    std::ofstream sp(tmp / "s.csv");
    write_specs(sp, specs, DataFormat::csv);
    std::ofstream sets(tmp / "sets.txt");
    sets << corpus_sets("gpustream-shape");
  }
  auto t1 = Clock::now();
  auto v = run({"matrix", "--measurements", (tmp / "m.csv").string(), "--specs",
                (tmp / "s.csv").string(), "--sets", (tmp / "sets.txt").string(), "--format",
                "json"});
  elapsed += seconds_since(t1);
  std::filesystem::remove_all(tmp);
  if (v.code != 0) {
    o.fail("variant matrix exited " + std::to_string(v.code));
    return o;
  }
  int errors = 0;
  int zeros = 0;
  auto variant = nlohmann::json::parse(v.out);
  for (const auto& c : variant["cells"]) {
    std::vector<std::string> members = c["members"];
    bool has_dropped = std::find(members.begin(), members.end(), dropped) != members.end();
    std::string app = c["application"];
    bool supported_there = std::any_of(ds.measurements.begin(), ds.measurements.end(),
                                       [&](const Measurement& m) {
                                         return m.application.name() == app &&
                                                m.platform.name() == dropped && m.supported;
                                       });
    bool expect_err = c["kind"] == "architectural" && has_dropped && supported_there;
    bool is_err = c["pp"].is_null();
    if (expect_err != is_err) {
      o.fail(app + "/" + c["set"].get<std::string>() + " ERR mismatch");
      continue;
    }
    if (is_err) {
      ++errors;
      if (c["error"].get<std::string>().find(dropped) == std::string::npos) {
        o.fail("error does not name " + dropped);
      }
    } else if (c["pp"].get<double>() == 0.0) {
      ++zeros;
    }
  }
  if (errors == 0 || zeros == 0) {
    o.fail("variant lacks both ERR and 0 cells (" + std::to_string(errors) + " ERR, " +
           std::to_string(zeros) + " zero)");
  }
  if (elapsed >= kMatrixMaxSeconds) o.fail("took " + fmt(elapsed) + " s");
  if (o.pass) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", worst);
    o.detail = "48 cells, max rel err " + std::string(buf) + "; variant: " +
               std::to_string(errors) + " ERR, " + std::to_string(zeros) + " zero; " +
               fmt(std::round(elapsed * 1e4) / 1e4) + " s";
  }
  return o;
}

// 7 ------------------------------------------------------------------------
Outcome round_trip_and_golden() {
  Outcome o;
  std::mt19937_64 rng(7);
  auto path = std::filesystem::temp_directory_path() / "ppm-acceptance-roundtrip.json";
  for (int i = 0; i < kRoundTrips; ++i) {
    auto ds = testing::random_dataset(rng);
    save_dataset(ds, path);
    if (!(load_dataset(path) == ds)) o.fail("round trip " + std::to_string(i));
  }
  std::filesystem::remove(path);
  auto cases = testing::golden_cases();
  for (const auto& c : cases) {
    auto r = run(c.args);
    if (r.code != 0 || !testing::matches_golden(c.file, r.out)) o.fail("golden " + c.file);
  }
  if (o.pass) {
    o.detail = std::to_string(kRoundTrips) + " round trips, " + std::to_string(cases.size()) +
               " golden outputs byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"five-platform PP table, both kinds, within 0.01 pp, < 1 s", table_b_rows},
      {"five-platform per-platform efficiencies, D unsupported", table_a_columns},
      {"zero rule over 500 random datasets", zero_rule},
      {"1000 random vectors match direct harmonic mean within 1e-12", oracle_equivalence},
      {"monotonicity, bounds, permutation, fixed point, homogeneity", metric_properties},
      {"stream-shaped 8x9x3 matrix: count, oracle, ERR vs 0, < 2 s", stream_matrix},
      {"save/load round trips and golden CLI output", round_trip_and_golden},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s  %zu  %s  (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
