#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppm/dataset.hpp"
#include "ppm/efficiency.hpp"
#include "ppm/pp_metric.hpp"

namespace ppm {

inline constexpr std::string_view kToolName = "ppmetric";
std::string_view tool_version();

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitData = 2 };

/// Identification printed at the top of every report. A value without a
/// problem or at least one platform set cannot be constructed, since a
/// portability figure means nothing without them.
class ReportHeader {
 public:
  struct Set {
    std::string label;
    std::string members;  // display form, e.g. "{A, B, C}"
  };
  /// An efficiency kind and the metric it is computed on. Without a kind the
  /// entry names a bare metric (ceiling listings).
  struct Kind {
    std::optional<EfficiencyKind> kind;
    std::optional<MetricKind> metric;
  };

  ReportHeader(std::string title, std::vector<ApplicationId> applications, ProblemId problem,
               std::vector<Set> sets, std::vector<Kind> kinds, std::string provenance);

  const std::string& title() const noexcept { return title_; }
  const std::vector<ApplicationId>& applications() const noexcept { return applications_; }
  const ProblemId& problem() const noexcept { return problem_; }
  const std::vector<Set>& sets() const noexcept { return sets_; }
  const std::vector<Kind>& kinds() const noexcept { return kinds_; }
  const std::string& provenance() const noexcept { return provenance_; }

  /// Ordered (field, value) pairs shared by every output format.
  std::vector<std::pair<std::string, std::string>> fields() const;

  /// Aligned `field : value` lines followed by a blank line.
  std::string render_text() const;
  /// `# field: value` lines.
  std::string render_comment_preamble() const;

 private:
  std::string title_;
  std::vector<ApplicationId> applications_;
  ProblemId problem_;
  std::vector<Set> sets_;
  std::vector<Kind> kinds_;
  std::string provenance_;
};

/// `name` or `name [k=v, ...]`.
std::string display_problem(const ProblemId& problem);

/// Plain aligned text table. Trailing whitespace is trimmed from every line.
class TextTable {
 public:
  enum class Align { left, right };

  void add_column(std::string title, Align align);
  void add_row(std::vector<std::string> cells);
  /// Draws a rule before the next row.
  void add_rule();
  std::string render() const;

 private:
  std::vector<std::pair<std::string, Align>> columns_;
  std::vector<std::vector<std::string>> rows_;  // an empty row is a rule
};

enum class OutputFormat { table, csv, json };

/// Text for an efficiency cell: "16.00%", "unsupported", "no data".
std::string efficiency_cell(const EfficiencyRecord& record);

/// One set, one application, one or more kinds.
std::string render_pp(const ReportHeader& header, std::span<const PPResult> results,
                      OutputFormat format);

std::string render_matrix(const ReportHeader& header, const PPMatrix& matrix,
                          OutputFormat format);

/// Long-form rows `application,variant,problem,set,kind,platform,efficiency,pp`
/// sorted by (application, set, kind, platform).
std::string render_plotdata(const PPMatrix& matrix);

struct BestRow {
  PlatformId platform;
  MetricKind metric;
  std::optional<BestObserved> derived;
  std::optional<BestObserved> external;

  /// The ceiling application efficiency uses: external when present.
  const BestObserved& effective() const { return external ? *external : *derived; }
};

/// Every (platform, metric) of `problem` with a derived or external ceiling,
/// sorted by (metric, platform).
std::vector<BestRow> best_observed_table(const Dataset& ds, const ProblemId& problem,
                                         const std::optional<PlatformId>& platform = {});

std::string render_best(const ReportHeader& header, std::span<const BestRow> rows);

/// Runs the command-line tool. `args` excludes the program name.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ppm
