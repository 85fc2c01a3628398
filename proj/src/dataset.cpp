#include "ppm/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace ppm {

const PlatformSpec* Dataset::spec_for(const PlatformId& platform) const {
  for (const auto& s : specs) {
    if (s.platform == platform) return &s;
  }
  return nullptr;
}

const Measurement* Dataset::find(const ApplicationId& app, const ProblemId& problem,
                                 const PlatformId& platform, const MetricKind& metric) const {
  for (const auto& m : measurements) {
    if (m.application == app && m.problem == problem && m.platform == platform &&
        m.metric == metric) {
      return &m;
    }
  }
  return nullptr;
}

const BestObserved* Dataset::external_for(const ProblemId& problem, const PlatformId& platform,
                                          const MetricKind& metric) const {
  for (const auto& b : externals) {
    if (b.problem == problem && b.platform == platform && b.metric == metric) return &b;
  }
  return nullptr;
}

std::vector<ProblemId> Dataset::problems() const {
  std::set<ProblemId> out;
  for (const auto& m : measurements) out.insert(m.problem);
  return {out.begin(), out.end()};
}

std::vector<ApplicationId> Dataset::applications(const ProblemId& problem) const {
  std::set<ApplicationId> out;
  for (const auto& m : measurements) {
    if (m.problem == problem) out.insert(m.application);
  }
  return {out.begin(), out.end()};
}

std::vector<PlatformId> Dataset::platforms(const ProblemId& problem) const {
  std::set<PlatformId> out;
  for (const auto& m : measurements) {
    if (m.problem == problem) out.insert(m.platform);
  }
  return {out.begin(), out.end()};
}

ValidationReport validate(const Dataset& ds, const ValidationOptions& options) {
  auto report = validate_dataset(ds.measurements, ds.specs, options);

  std::map<std::tuple<ProblemId, PlatformId, MetricKind>, int> seen;
  std::map<std::pair<ProblemId, Orientation>, std::set<std::string>> units;
  for (const auto& m : ds.measurements) {
    units[{m.problem, m.metric.orientation}].insert(m.metric.units);
  }
  for (const auto& b : ds.externals) {
    std::string where = "external ceiling (" + b.problem.name() + ", " + b.platform.name() +
                        ", " + b.metric.display() + ")";
    if (++seen[{b.problem, b.platform, b.metric}] == 2) {
      report.violations.push_back({ViolationKind::duplicate_tuple, where + " given twice"});
    }
    if (!std::isfinite(b.value) || b.value <= 0.0) {
      report.violations.push_back(
          {ViolationKind::invalid_value, where + ": value must be positive and finite"});
    }
    auto it = units.find({b.problem, b.metric.orientation});
    if (it != units.end() && !it->second.contains(b.metric.units)) {
      report.violations.push_back(
          {ViolationKind::mixed_units, where + ": units differ from the measurements (" +
                                           *it->second.begin() + ")"});
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace ppm
