#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ppm/core_model.hpp"

namespace ppm {

/// architectural: observed vs. theoretical peak.
/// application: observed vs. best observed (or externally known) performance.
enum class EfficiencyKind { architectural, application };

std::string_view to_string(EfficiencyKind kind);
std::string_view short_name(EfficiencyKind kind);

enum class EfficiencyStatus {
  supported,
  /// A measurement exists and declares the run failed.
  declared_unsupported,
  /// No measurement exists for the platform.
  no_measurement,
};

std::string_view to_string(EfficiencyStatus status);

struct EfficiencyRecord {
  PlatformId platform;
  EfficiencyKind kind = EfficiencyKind::architectural;
  EfficiencyStatus status = EfficiencyStatus::supported;
  /// In (0, 1] when supported, 0 otherwise.
  double value = 0.0;
  std::optional<double> observed;
  std::optional<double> ceiling;
  /// The observed value beat the ceiling and was clamped to 1.
  bool clamped = false;

  bool unsupported() const noexcept { return status != EfficiencyStatus::supported; }

  static EfficiencyRecord make_unsupported(PlatformId platform, EfficiencyKind kind,
                                           EfficiencyStatus status);

  bool operator==(const EfficiencyRecord&) const = default;
};

/// A performance ceiling for (problem, platform, metric).
struct BestObserved {
  enum class Source { dataset, external };

  ProblemId problem;
  PlatformId platform;
  MetricKind metric;
  double value = 0.0;
  Source source = Source::dataset;
  /// Set when source == dataset.
  std::optional<ApplicationId> contributor;
  /// Free-form citation for external ceilings.
  std::string note;

  bool operator==(const BestObserved&) const = default;
};

/// Thrown when an observed value beats its ceiling and clamping is off.
class CeilingExceededError : public DataError {
 public:
  using DataError::DataError;
};

struct EfficiencyOptions {
  /// Map observed-beats-ceiling to 1.0 (flagged via EfficiencyRecord::clamped)
  /// instead of throwing CeilingExceededError.
  bool clamp = false;
};

/// observed / peak. Requires a rate metric and a peak for it in `spec`.
EfficiencyRecord architectural_efficiency(const Measurement& m, const PlatformSpec& spec,
                                          const EfficiencyOptions& options = {});

/// observed / best for rate metrics, best / observed for time metrics.
EfficiencyRecord application_efficiency(const Measurement& m, const BestObserved& best,
                                        const EfficiencyOptions& options = {});

/// The best supported value for (problem, platform, metric) across every
/// application: max for rate metrics, min for time metrics. Ties go to the
/// lexicographically smallest (name, variant). Throws DataError when there is
/// no supported measurement.
BestObserved derive_best_observed(std::span<const Measurement> measurements,
                                  const ProblemId& problem, const PlatformId& platform,
                                  const MetricKind& metric);

/// The efficiency ratio for a positive (observed, ceiling) pair, oriented so
/// that observed == ceiling gives exactly 1.
double oriented_ratio(Orientation orientation, double observed, double ceiling);

}  // namespace ppm
