#include "ppm/pp_metric.hpp"

#include <cmath>
#include <set>

namespace ppm {

double harmonic_pp(std::span<const EfficiencyRecord> efficiencies) {
  if (efficiencies.empty()) {
    throw DataError("performance portability is undefined for an empty platform set");
  }
  // Neumaier-compensated sum of reciprocals.
  double sum = 0.0;
  double compensation = 0.0;
  for (const auto& e : efficiencies) {
    if (e.unsupported() || e.value <= 0.0) return 0.0;
    double term = 1.0 / e.value;
    double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      compensation += (sum - t) + term;
    } else {
      compensation += (term - t) + sum;
    }
    sum = t;
  }
  return static_cast<double>(efficiencies.size()) / (sum + compensation);
}

PPResult pp(const ApplicationId& application, const ProblemId& problem, const PlatformSet& set,
            EfficiencyKind kind, std::vector<EfficiencyRecord> efficiencies) {
  if (set.empty()) {
    throw DataError("performance portability is undefined for the empty platform set '" +
                    set.label() + "'");
  }
  if (efficiencies.size() != set.size()) {
    throw DataError("platform set '" + set.label() + "' has " + std::to_string(set.size()) +
                    " members but " + std::to_string(efficiencies.size()) +
                    " efficiencies were given");
  }
  for (std::size_t i = 0; i < efficiencies.size(); ++i) {
    if (efficiencies[i].platform != set.members()[i]) {
      throw DataError("efficiency " + std::to_string(i) + " is for platform '" +
                      efficiencies[i].platform.name() + "', expected '" +
                      set.members()[i].name() + "'");
    }
    if (efficiencies[i].kind != kind) {
      throw DataError("efficiency for platform '" + efficiencies[i].platform.name() + "' is " +
                      std::string(to_string(efficiencies[i].kind)) + ", expected " +
                      std::string(to_string(kind)));
    }
  }
  double value = harmonic_pp(efficiencies);
  return PPResult{application, problem, set, kind, value, std::move(efficiencies)};
}

MissingPeakError::MissingPeakError(std::vector<PlatformId> platforms, const MetricKind& metric)
    : DataError([&] {
        std::string msg = "no peak for " + metric.display() + " on platform(s): ";
        for (std::size_t i = 0; i < platforms.size(); ++i) {
          msg += (i ? ", " : "") + platforms[i].name();
        }
        return msg;
      }()),
      platforms_(std::move(platforms)) {}

MetricKind select_metric(const Dataset& ds, const ProblemId& problem, EfficiencyKind kind,
                         std::optional<Orientation> forced) {
  std::optional<MetricKind> rate;
  std::optional<MetricKind> time;
  for (const auto& m : ds.measurements) {
    if (m.problem != problem) continue;
    auto& slot = m.metric.orientation == Orientation::rate ? rate : time;
    if (slot && *slot != m.metric) {
      throw DataError("problem '" + problem.name() + "' mixes units " + slot->units + " and " +
                      m.metric.units);
    }
    slot = m.metric;
  }
  auto want = forced.value_or(kind == EfficiencyKind::architectural
                                  ? Orientation::rate
                                  : (time ? Orientation::time : Orientation::rate));
  if (kind == EfficiencyKind::architectural && want == Orientation::time) {
    throw DataError("architectural efficiency needs a rate metric; use application efficiency "
                    "for time-oriented metrics");
  }
  const auto& chosen = want == Orientation::rate ? rate : time;
  if (!chosen) {
    throw DataError("problem '" + problem.name() + "' has no " + std::string(to_string(want)) +
                    "-oriented measurements");
  }
  return *chosen;
}

PPResult pp_for(const ApplicationId& application, const ProblemId& problem,
                const PlatformSet& set, EfficiencyKind kind, const Dataset& ds,
                const PPOptions& options) {
  if (set.empty()) {
    throw DataError("performance portability is undefined for the empty platform set '" +
                    set.label() + "'");
  }
  MetricKind metric = select_metric(ds, problem, kind, options.metric);

  std::vector<PlatformId> missing_peaks;
  std::vector<EfficiencyRecord> records;
  records.reserve(set.size());
  for (const auto& platform : set.members()) {
    const Measurement* m = ds.find(application, problem, platform, metric);
    if (m == nullptr) {
      records.push_back(EfficiencyRecord::make_unsupported(platform, kind,
                                                           EfficiencyStatus::no_measurement));
      continue;
    }
    if (!m->supported) {
      records.push_back(EfficiencyRecord::make_unsupported(
          platform, kind, EfficiencyStatus::declared_unsupported));
      continue;
    }
    if (kind == EfficiencyKind::architectural) {
      const PlatformSpec* spec = ds.spec_for(platform);
      if (spec == nullptr || !spec->peak(metric)) {
        missing_peaks.push_back(platform);
        continue;
      }
      records.push_back(architectural_efficiency(*m, *spec, options.efficiency));
    } else if (const BestObserved* external = ds.external_for(problem, platform, metric)) {
      records.push_back(application_efficiency(*m, *external, options.efficiency));
    } else {
      auto best = derive_best_observed(ds.measurements, problem, platform, metric);
      records.push_back(application_efficiency(*m, best, options.efficiency));
    }
  }
  if (!missing_peaks.empty()) {
    throw MissingPeakError(std::move(missing_peaks), metric);
  }
  return pp(application, problem, set, kind, std::move(records));
}

PlatformSet supported_subset(const ApplicationId& application, const ProblemId& problem,
                             const PlatformSet& candidates, const Dataset& ds) {
  std::set<PlatformId> supported;
  for (const auto& m : ds.measurements) {
    if (m.application == application && m.problem == problem && m.supported) {
      supported.insert(m.platform);
    }
  }
  std::vector<PlatformId> members;
  for (const auto& p : candidates.members()) {
    if (supported.contains(p)) members.push_back(p);
  }
  return PlatformSet(candidates.label(), std::move(members));
}

SetRequest SetRequest::parse(std::string_view text,
                             const std::vector<PlatformId>& all_platforms) {
  auto stripped = text;
  while (!stripped.empty() && stripped.front() == ' ') stripped.remove_prefix(1);
  while (!stripped.empty() && stripped.back() == ' ') stripped.remove_suffix(1);
  if (stripped == kSupportedLabel) {
    return {PlatformSet(std::string(kSupportedLabel), all_platforms), true};
  }
  auto set = PlatformSet::parse(text);
  if (set.empty()) {
    throw DataError("platform set '" + set.label() + "' has no members");
  }
  bool supported_only = set.label() == kSupportedLabel;
  return {std::move(set), supported_only};
}

PPMatrix subset_analysis(std::span<const ApplicationId> applications, const ProblemId& problem,
                         std::span<const SetRequest> sets, std::span<const EfficiencyKind> kinds,
                         const Dataset& ds, const PPOptions& options) {
  PPMatrix matrix{problem,
                  {applications.begin(), applications.end()},
                  {sets.begin(), sets.end()},
                  {kinds.begin(), kinds.end()},
                  {}};
  matrix.cells.reserve(applications.size() * sets.size() * kinds.size());
  for (const auto& app : applications) {
    for (const auto& request : sets) {
      PlatformSet set = request.supported_only
                            ? supported_subset(app, problem, request.set, ds)
                            : request.set;
      for (auto kind : kinds) {
        MatrixCell cell{app, set, kind, std::nullopt, {}};
        if (set.empty()) {
          cell.error = app.display() + " supports none of the platforms in '" +
                       request.set.label() + "'";
        } else {
          try {
            cell.result = pp_for(app, problem, set, kind, ds, options);
          } catch (const Error& e) {
            cell.error = e.what();
          }
        }
        matrix.cells.push_back(std::move(cell));
      }
    }
  }
  return matrix;
}

}  // namespace ppm
