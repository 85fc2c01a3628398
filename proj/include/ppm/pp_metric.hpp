#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppm/core_model.hpp"
#include "ppm/dataset.hpp"
#include "ppm/efficiency.hpp"

namespace ppm {

/// A performance-portability value with everything needed to interpret it:
/// which application, problem, platform set and efficiency kind produced it.
struct PPResult {
  ApplicationId application;
  ProblemId problem;
  PlatformSet platform_set;
  EfficiencyKind kind;
  /// Harmonic mean of the breakdown values, or 0 if any member is unsupported.
  double value = 0.0;
  /// One record per member, in set order.
  std::vector<EfficiencyRecord> breakdown;

  bool operator==(const PPResult&) const = default;
};

/// |H| / sum(1/e_i), or 0 if any record is unsupported. Throws DataError for
/// an empty list.
double harmonic_pp(std::span<const EfficiencyRecord> efficiencies);

/// Assembles a PPResult. `efficiencies` must hold one record of `kind` per
/// member of `set`, in set order.
PPResult pp(const ApplicationId& application, const ProblemId& problem, const PlatformSet& set,
            EfficiencyKind kind, std::vector<EfficiencyRecord> efficiencies);

struct PPOptions {
  EfficiencyOptions efficiency;
  /// Forces the metric orientation used for both efficiency kinds.
  std::optional<Orientation> metric;
};

/// Members that need a peak for architectural efficiency but have none.
class MissingPeakError : public DataError {
 public:
  MissingPeakError(std::vector<PlatformId> platforms, const MetricKind& metric);
  const std::vector<PlatformId>& platforms() const noexcept { return platforms_; }

 private:
  std::vector<PlatformId> platforms_;
};

/// The metric a problem is scored on for `kind`: architectural uses the rate
/// metric; application uses the time metric when the problem has one,
/// otherwise the rate metric.
MetricKind select_metric(const Dataset& ds, const ProblemId& problem, EfficiencyKind kind,
                         std::optional<Orientation> forced = std::nullopt);

/// Resolves each member's measurement and efficiency, then delegates to pp().
/// A missing measurement counts as unsupported.
PPResult pp_for(const ApplicationId& application, const ProblemId& problem,
                const PlatformSet& set, EfficiencyKind kind, const Dataset& ds,
                const PPOptions& options = {});

/// The candidates on which `application` has a supported measurement for
/// `problem`, in candidate order. May be empty.
PlatformSet supported_subset(const ApplicationId& application, const ProblemId& problem,
                             const PlatformSet& candidates, const Dataset& ds);

/// Label that expands to each application's supported subset.
inline constexpr std::string_view kSupportedLabel = "supported";

struct SetRequest {
  PlatformSet set;
  /// Restrict `set` to each application's supported subset before scoring.
  bool supported_only = false;

  /// Handles the `supported` and `supported:p1,...` pseudo-labels; candidates
  /// default to `all_platforms`.
  static SetRequest parse(std::string_view text, const std::vector<PlatformId>& all_platforms);
};

struct MatrixCell {
  ApplicationId application;
  /// The set actually scored (after supported-subset expansion).
  PlatformSet set;
  EfficiencyKind kind;
  std::optional<PPResult> result;
  /// Set when the cell could not be computed.
  std::string error;

  bool ok() const noexcept { return result.has_value(); }
};

struct PPMatrix {
  ProblemId problem;
  std::vector<ApplicationId> applications;
  std::vector<SetRequest> sets;
  std::vector<EfficiencyKind> kinds;
  /// Application-major, then set, then kind.
  std::vector<MatrixCell> cells;

  const MatrixCell& at(std::size_t app, std::size_t set, std::size_t kind) const {
    return cells[(app * sets.size() + set) * kinds.size() + kind];
  }
};

/// Evaluates every (application, set, kind) cell. Errors are captured per
/// cell; one failing cell never aborts the others.
PPMatrix subset_analysis(std::span<const ApplicationId> applications, const ProblemId& problem,
                         std::span<const SetRequest> sets, std::span<const EfficiencyKind> kinds,
                         const Dataset& ds, const PPOptions& options = {});

}  // namespace ppm
