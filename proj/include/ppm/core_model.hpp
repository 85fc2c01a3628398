#pragma once

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ppm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is malformed or semantically inconsistent.
class DataError : public Error {
 public:
  using Error::Error;
};

/// An execution environment: hardware plus OS plus toolchain, identified by a
/// flat, case-sensitive label.
class PlatformId {
 public:
  explicit PlatformId(std::string name);

  const std::string& name() const noexcept { return name_; }

  auto operator<=>(const PlatformId&) const = default;

 private:
  std::string name_;
};

/// An application, optionally qualified by an implementation variant such as
/// a programming model. Distinct variants are distinct applications.
class ApplicationId {
 public:
  explicit ApplicationId(std::string name, std::string variant = {});

  /// Parses `NAME` or `NAME/VARIANT`.
  static ApplicationId parse(std::string_view text);

  const std::string& name() const noexcept { return name_; }
  const std::string& variant() const noexcept { return variant_; }
  std::string display() const;

  auto operator<=>(const ApplicationId&) const = default;

 private:
  std::string name_;
  std::string variant_;
};

class ProblemId {
 public:
  using Parameters = std::map<std::string, std::string>;

  explicit ProblemId(std::string name, Parameters parameters = {});

  const std::string& name() const noexcept { return name_; }
  const Parameters& parameters() const noexcept { return parameters_; }

  auto operator<=>(const ProblemId&) const = default;

 private:
  std::string name_;
  Parameters parameters_;
};

/// rate: larger is better (GFLOP/s, GB/s). time: smaller is better (seconds).
enum class Orientation { rate, time };

std::string_view to_string(Orientation o);
std::optional<Orientation> parse_orientation(std::string_view text);

struct MetricKind {
  Orientation orientation = Orientation::rate;
  std::string units;

  /// True when `a` is strictly better than `b` under this orientation.
  bool better(double a, double b) const {
    return orientation == Orientation::rate ? a > b : a < b;
  }

  std::string display() const;

  auto operator<=>(const MetricKind&) const = default;
};

/// One observed value for (application, problem, platform, metric). A
/// declared failure carries `supported == false` and no value.
struct Measurement {
  ApplicationId application;
  ProblemId problem;
  PlatformId platform;
  MetricKind metric;
  std::optional<double> value;
  bool supported = true;

  bool operator==(const Measurement&) const = default;
};

/// Theoretical peaks of a platform, rate-oriented metrics only.
struct PlatformSpec {
  PlatformId platform;
  std::map<MetricKind, double> peaks;

  std::optional<double> peak(const MetricKind& metric) const;

  bool operator==(const PlatformSpec&) const = default;
};

/// A labelled, ordered, duplicate-free collection of platforms.
///
/// Construction rejects an empty label and duplicate members. An empty member
/// list is representable (see supported_subset) but rejected by the metric.
class PlatformSet {
 public:
  PlatformSet(std::string label, std::vector<PlatformId> members);

  /// Parses `label:p1,p2,...`. A bare list without a label is labelled by its
  /// members joined with commas.
  static PlatformSet parse(std::string_view text);

  const std::string& label() const noexcept { return label_; }
  const std::vector<PlatformId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const PlatformId& p) const;

  /// `{A, B, C}`
  std::string display_members() const;

  bool operator==(const PlatformSet&) const = default;

 private:
  std::string label_;
  std::vector<PlatformId> members_;
};

enum class ViolationKind {
  duplicate_tuple,
  invalid_value,
  time_oriented_peak,
  invalid_peak,
  duplicate_spec,
  missing_spec,
  mixed_units,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;

  auto operator<=>(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

struct ValidationOptions {
  /// Check that every supported rate measurement has a peak for its metric,
  /// i.e. that architectural efficiency can be requested.
  bool require_peaks = false;
};

/// Reports every structural problem in a dataset. Never throws on bad data.
/// The returned violations are sorted, so the result does not depend on input
/// order.
ValidationReport validate_dataset(std::span<const Measurement> measurements,
                                  std::span<const PlatformSpec> specs,
                                  const ValidationOptions& options = {});

}  // namespace ppm
