#include "ppm/efficiency.hpp"

#include <cmath>

#include "ppm/format.hpp"

namespace ppm {

std::string_view to_string(EfficiencyKind kind) {
  return kind == EfficiencyKind::architectural ? "architectural" : "application";
}

std::string_view short_name(EfficiencyKind kind) {
  return kind == EfficiencyKind::architectural ? "arch" : "app";
}

std::string_view to_string(EfficiencyStatus status) {
  switch (status) {
    case EfficiencyStatus::supported: return "supported";
    case EfficiencyStatus::declared_unsupported: return "unsupported";
    case EfficiencyStatus::no_measurement: return "no-data";
  }
  return "unknown";
}

EfficiencyRecord EfficiencyRecord::make_unsupported(PlatformId platform, EfficiencyKind kind,
                                                    EfficiencyStatus status) {
  EfficiencyRecord r{std::move(platform), kind, status, 0.0, std::nullopt, std::nullopt, false};
  r.value = 0.0;
  return r;
}

double oriented_ratio(Orientation orientation, double observed, double ceiling) {
  return orientation == Orientation::rate ? observed / ceiling : ceiling / observed;
}

namespace {

void require_observed(const Measurement& m) {
  if (!m.value || !std::isfinite(*m.value) || *m.value <= 0.0) {
    throw DataError("measurement for platform '" + m.platform.name() + "' (" +
                    m.metric.display() + ") has no positive finite value");
  }
}

EfficiencyRecord finish(const Measurement& m, EfficiencyKind kind, double ceiling,
                        const EfficiencyOptions& options) {
  EfficiencyRecord r{m.platform, kind, EfficiencyStatus::supported, 0.0, std::nullopt, std::nullopt, false};
  r.observed = *m.value;
  r.ceiling = ceiling;
  r.value = oriented_ratio(m.metric.orientation, *m.value, ceiling);
  if (r.value > 1.0) {
    if (!options.clamp) {
      throw CeilingExceededError(
          std::string(to_string(kind)) + " efficiency on platform '" + m.platform.name() +
          "' exceeds 1: observed " + format_decimal(*m.value) + " " + m.metric.units +
          " beats ceiling " + format_decimal(ceiling) + " (use --clamp to cap at 1)");
    }
    r.value = 1.0;
    r.clamped = true;
  }
  return r;
}

}  // namespace

EfficiencyRecord architectural_efficiency(const Measurement& m, const PlatformSpec& spec,
                                          const EfficiencyOptions& options) {
  if (m.platform != spec.platform) {
    throw DataError("measurement platform '" + m.platform.name() + "' does not match spec '" +
                    spec.platform.name() + "'");
  }
  if (m.metric.orientation == Orientation::time) {
    throw DataError("architectural efficiency needs a rate metric; " + m.metric.display() +
                    " is time-oriented, use application efficiency instead");
  }
  if (!m.supported) {
    return EfficiencyRecord::make_unsupported(m.platform, EfficiencyKind::architectural,
                                              EfficiencyStatus::declared_unsupported);
  }
  auto peak = spec.peak(m.metric);
  if (!peak) {
    throw DataError("platform '" + m.platform.name() + "' has no peak for " + m.metric.display());
  }
  if (!std::isfinite(*peak) || *peak <= 0.0) {
    throw DataError("platform '" + m.platform.name() + "' peak for " + m.metric.display() +
                    " must be positive and finite");
  }
  require_observed(m);
  return finish(m, EfficiencyKind::architectural, *peak, options);
}

EfficiencyRecord application_efficiency(const Measurement& m, const BestObserved& best,
                                        const EfficiencyOptions& options) {
  if (m.problem != best.problem || m.platform != best.platform || m.metric != best.metric) {
    throw DataError("best-observed ceiling for (" + best.problem.name() + ", " +
                    best.platform.name() + ", " + best.metric.display() +
                    ") does not match measurement (" + m.problem.name() + ", " +
                    m.platform.name() + ", " + m.metric.display() + ")");
  }
  if (!std::isfinite(best.value) || best.value <= 0.0) {
    throw DataError("best-observed ceiling for platform '" + best.platform.name() +
                    "' must be positive and finite");
  }
  if (!m.supported) {
    return EfficiencyRecord::make_unsupported(m.platform, EfficiencyKind::application,
                                              EfficiencyStatus::declared_unsupported);
  }
  require_observed(m);
  return finish(m, EfficiencyKind::application, best.value, options);
}

BestObserved derive_best_observed(std::span<const Measurement> measurements,
                                  const ProblemId& problem, const PlatformId& platform,
                                  const MetricKind& metric) {
  const Measurement* best = nullptr;
  for (const auto& m : measurements) {
    if (!m.supported || !m.value || m.problem != problem || m.platform != platform ||
        m.metric != metric) {
      continue;
    }
    if (best == nullptr || metric.better(*m.value, *best->value) ||
        (*m.value == *best->value && m.application < best->application)) {
      best = &m;
    }
  }
  if (best == nullptr) {
    throw DataError("no supported measurement for (" + problem.name() + ", " + platform.name() +
                    ", " + metric.display() + "); supply an external ceiling");
  }
  return BestObserved{problem, platform, metric, *best->value, BestObserved::Source::dataset,
                      best->application, {}};
}

}  // namespace ppm
