#pragma once

#include <string>
#include <vector>

#include "ppm/core_model.hpp"
#include "ppm/efficiency.hpp"

namespace ppm {

/// Measurements, platform specs and external ceilings for one analysis,
/// plus a free-form provenance note (source files, citation).
struct Dataset {
  std::vector<Measurement> measurements;
  std::vector<PlatformSpec> specs;
  std::vector<BestObserved> externals;
  std::string provenance;

  const PlatformSpec* spec_for(const PlatformId& platform) const;
  const Measurement* find(const ApplicationId& app, const ProblemId& problem,
                          const PlatformId& platform, const MetricKind& metric) const;
  const BestObserved* external_for(const ProblemId& problem, const PlatformId& platform,
                                   const MetricKind& metric) const;

  /// Sorted, distinct.
  std::vector<ProblemId> problems() const;
  std::vector<ApplicationId> applications(const ProblemId& problem) const;
  std::vector<PlatformId> platforms(const ProblemId& problem) const;

  bool operator==(const Dataset&) const = default;
};

/// validate_dataset plus checks on the external ceilings.
ValidationReport validate(const Dataset& ds, const ValidationOptions& options = {});

}  // namespace ppm
