#include "ppm/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "json_writer.hpp"
#include "ppm/data_io.hpp"
#include "ppm/format.hpp"

namespace ppm {

using nlohmann::ordered_json;

std::string_view tool_version() { return PPM_VERSION; }

std::string display_problem(const ProblemId& problem) {
  if (problem.parameters().empty()) return problem.name();
  std::string out = problem.name() + " [";
  bool first = true;
  for (const auto& [k, v] : problem.parameters()) {
    out += (first ? "" : ", ") + k + "=" + v;
    first = false;
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// ReportHeader

ReportHeader::ReportHeader(std::string title, std::vector<ApplicationId> applications,
                           ProblemId problem, std::vector<Set> sets, std::vector<Kind> kinds,
                           std::string provenance)
    : title_(std::move(title)),
      applications_(std::move(applications)),
      problem_(std::move(problem)),
      sets_(std::move(sets)),
      kinds_(std::move(kinds)),
      provenance_(std::move(provenance)) {
  if (sets_.empty()) throw DataError("a report must identify at least one platform set");
  for (const auto& s : sets_) {
    if (s.label.empty()) throw DataError("a report platform set needs a label");
  }
}

namespace {

std::string kind_display(const ReportHeader::Kind& k) {
  if (!k.kind) return k.metric ? k.metric->display() : "-";
  std::string out(to_string(*k.kind));
  if (k.metric) out += " (" + k.metric->units + ")";
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> ReportHeader::fields() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("tool", std::string(kToolName) + " " + std::string(tool_version()));
  std::vector<std::string> apps;
  for (const auto& a : applications_) apps.push_back(a.display());
  out.emplace_back(applications_.size() == 1 ? "application" : "applications", join(apps, ", "));
  out.emplace_back("problem", display_problem(problem_));
  for (const auto& s : sets_) out.emplace_back("platform set", s.label + " = " + s.members);
  std::vector<std::string> kinds;
  for (const auto& k : kinds_) kinds.push_back(kind_display(k));
  bool bare = !kinds_.empty() && !kinds_.front().kind;
  out.emplace_back(bare ? "metrics" : "efficiency", join(kinds, ", "));
  out.emplace_back("dataset", provenance_);
  return out;
}

std::string ReportHeader::render_text() const {
  auto f = fields();
  std::size_t width = 0;
  for (const auto& [k, v] : f) width = std::max(width, k.size());
  std::string out = title_ + "\n";
  std::string previous;
  for (const auto& [k, v] : f) {
    std::string key = k == previous ? std::string(k.size(), ' ') : k;
    std::string line = key + std::string(width - k.size(), ' ') + " : " + v;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    previous = k;
  }
  return out + "\n";
}

std::string ReportHeader::render_comment_preamble() const {
  std::string out;
  for (const auto& [k, v] : fields()) out += "# " + k + ": " + v + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// TextTable

void TextTable::add_column(std::string title, Align align) {
  columns_.emplace_back(std::move(title), align);
}

void TextTable::add_row(std::vector<std::string> cells) {
  cells.resize(columns_.size());
  rows_.push_back(std::move(cells));
}

void TextTable::add_rule() { rows_.emplace_back(); }

std::string TextTable::render() const {
  std::vector<std::size_t> widths;
  for (const auto& [title, align] : columns_) widths.push_back(title.size());
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (c) out += "  ";
      const auto& cell = cells[c];
      std::string pad(widths[c] - cell.size(), ' ');
      out += columns_[c].second == Align::left ? cell + pad : pad + cell;
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out + "\n";
  };
  std::vector<std::string> titles;
  std::vector<std::string> dashes;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    titles.push_back(columns_[c].first);
    dashes.emplace_back(widths[c], '-');
  }
  std::string out = line(titles) + line(dashes);
  for (const auto& row : rows_) out += row.empty() ? line(dashes) : line(row);
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

std::string efficiency_cell(const EfficiencyRecord& record) {
  switch (record.status) {
    case EfficiencyStatus::declared_unsupported: return "unsupported";
    case EfficiencyStatus::no_measurement: return "no data";
    case EfficiencyStatus::supported: break;
  }
  return format_percent(record.value) + (record.clamped ? "*" : "");
}

namespace {

std::string optional_decimal(const std::optional<double>& v) {
  return v ? format_decimal(*v) : "-";
}

std::string members_field(const PlatformSet& set) {
  std::vector<std::string> names;
  for (const auto& p : set.members()) names.push_back(p.name());
  return join(names, ";");
}

std::string pp_status(const PPResult& r) { return r.value > 0.0 ? "supported" : "unsupported"; }

ordered_json header_json(const ReportHeader& header) {
  ordered_json j;
  j["tool"] = std::string(kToolName);
  j["version"] = std::string(tool_version());
  j["title"] = header.title();
  j["applications"] = ordered_json::array();
  for (const auto& a : header.applications()) {
    j["applications"].push_back({{"name", a.name()}, {"variant", a.variant()}});
  }
  j["problem"]["name"] = header.problem().name();
  j["problem"]["parameters"] = ordered_json::object();
  for (const auto& [k, v] : header.problem().parameters()) j["problem"]["parameters"][k] = v;
  j["platform_sets"] = ordered_json::array();
  for (const auto& s : header.sets()) {
    j["platform_sets"].push_back({{"label", s.label}, {"members", s.members}});
  }
  j["efficiency"] = ordered_json::array();
  for (const auto& k : header.kinds()) {
    ordered_json kj;
    kj["kind"] = k.kind ? ordered_json(std::string(to_string(*k.kind))) : ordered_json(nullptr);
    if (k.metric) {
      kj["orientation"] = std::string(to_string(k.metric->orientation));
      kj["units"] = k.metric->units;
    }
    j["efficiency"].push_back(std::move(kj));
  }
  j["dataset"] = header.provenance();
  return j;
}

ordered_json record_json(const EfficiencyRecord& r) {
  ordered_json j;
  j["platform"] = r.platform.name();
  j["status"] = std::string(to_string(r.status));
  j["efficiency"] = r.value;
  j["observed"] = r.observed ? ordered_json(*r.observed) : ordered_json(nullptr);
  j["ceiling"] = r.ceiling ? ordered_json(*r.ceiling) : ordered_json(nullptr);
  j["clamped"] = r.clamped;
  return j;
}

ordered_json result_json(const PPResult& r) {
  ordered_json j;
  j["application"] = r.application.name();
  j["variant"] = r.application.variant();
  j["problem"] = r.problem.name();
  j["set"] = r.platform_set.label();
  j["members"] = ordered_json::array();
  for (const auto& p : r.platform_set.members()) j["members"].push_back(p.name());
  j["kind"] = std::string(to_string(r.kind));
  j["status"] = pp_status(r);
  j["pp"] = r.value;
  j["breakdown"] = ordered_json::array();
  for (const auto& e : r.breakdown) j["breakdown"].push_back(record_json(e));
  return j;
}

bool any_clamped(std::span<const PPResult> results) {
  for (const auto& r : results) {
    for (const auto& e : r.breakdown) {
      if (e.clamped) return true;
    }
  }
  return false;
}

}  // namespace

std::string render_pp(const ReportHeader& header, std::span<const PPResult> results,
                      OutputFormat format) {
  if (results.empty()) throw DataError("nothing to render");
  const PlatformSet& set = results.front().platform_set;

  if (format == OutputFormat::json) {
    ordered_json doc;
    doc["header"] = header_json(header);
    doc["results"] = ordered_json::array();
    for (const auto& r : results) doc["results"].push_back(result_json(r));
    return detail::dump_json(doc);
  }

  if (format == OutputFormat::csv) {
    std::string out = header.render_comment_preamble();
    out += "application,variant,problem,set,members,kind,platform,status,efficiency,observed,"
           "ceiling,pp\n";
    for (const auto& r : results) {
      std::vector<std::string> base{r.application.name(), r.application.variant(),
                                    r.problem.name(), r.platform_set.label(),
                                    members_field(r.platform_set),
                                    std::string(to_string(r.kind))};
      for (const auto& e : r.breakdown) {
        auto row = base;
        row.insert(row.end(), {e.platform.name(), std::string(to_string(e.status)),
                               format_decimal(e.value),
                               e.observed ? format_decimal(*e.observed) : "",
                               e.ceiling ? format_decimal(*e.ceiling) : "", ""});
        out += detail::csv_row(row);
      }
      auto row = base;
      row.insert(row.end(), {"", pp_status(r), "", "", "", format_decimal(r.value)});
      out += detail::csv_row(row);
    }
    return out;
  }

  TextTable table;
  table.add_column("platform", TextTable::Align::left);
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& hk = header.kinds().at(k);
    std::string units = hk.metric ? hk.metric->units : "observed";
    bool arch = results[k].kind == EfficiencyKind::architectural;
    table.add_column(units, TextTable::Align::right);
    table.add_column(arch ? "peak" : "best", TextTable::Align::right);
    table.add_column(arch ? "arch eff" : "app eff", TextTable::Align::right);
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    std::vector<std::string> row{set.members()[i].name()};
    for (const auto& r : results) {
      const auto& e = r.breakdown.at(i);
      row.push_back(optional_decimal(e.observed));
      row.push_back(optional_decimal(e.ceiling));
      row.push_back(efficiency_cell(e));
    }
    table.add_row(std::move(row));
  }
  table.add_rule();
  std::vector<std::string> pp_row{"PP"};
  for (const auto& r : results) {
    pp_row.insert(pp_row.end(), {"", "", format_percent(r.value)});
  }
  table.add_row(std::move(pp_row));

  std::string out = header.render_text() + table.render();
  if (any_clamped(results)) out += "\n* observed value beat its ceiling and was clamped to 100%\n";
  return out;
}

namespace {

std::string column_label(const SetRequest& s, EfficiencyKind k) {
  return s.set.label() + " " + std::string(short_name(k));
}

}  // namespace

std::string render_matrix(const ReportHeader& header, const PPMatrix& matrix,
                          OutputFormat format) {
  if (format == OutputFormat::json) {
    ordered_json doc;
    doc["header"] = header_json(header);
    doc["cells"] = ordered_json::array();
    for (const auto& cell : matrix.cells) {
      ordered_json j;
      if (cell.ok()) {
        j = result_json(*cell.result);
      } else {
        j["application"] = cell.application.name();
        j["variant"] = cell.application.variant();
        j["problem"] = matrix.problem.name();
        j["set"] = cell.set.label();
        j["members"] = ordered_json::array();
        for (const auto& p : cell.set.members()) j["members"].push_back(p.name());
        j["kind"] = std::string(to_string(cell.kind));
        j["status"] = "error";
        j["pp"] = nullptr;
        j["error"] = cell.error;
      }
      doc["cells"].push_back(std::move(j));
    }
    return detail::dump_json(doc);
  }

  if (format == OutputFormat::csv) {
    std::string out = header.render_comment_preamble();
    out += "application,variant,problem,set,members,kind,status,pp,error\n";
    for (const auto& cell : matrix.cells) {
      out += detail::csv_row({cell.application.name(), cell.application.variant(),
                              matrix.problem.name(), cell.set.label(), members_field(cell.set),
                              std::string(to_string(cell.kind)),
                              cell.ok() ? pp_status(*cell.result) : "error",
                              cell.ok() ? format_decimal(cell.result->value) : "ERR",
                              cell.error});
    }
    return out;
  }

  TextTable table;
  table.add_column("application", TextTable::Align::left);
  for (const auto& s : matrix.sets) {
    for (auto k : matrix.kinds) table.add_column(column_label(s, k), TextTable::Align::right);
  }
  std::vector<std::string> notes;
  for (std::size_t a = 0; a < matrix.applications.size(); ++a) {
    std::vector<std::string> row{matrix.applications[a].display()};
    for (std::size_t s = 0; s < matrix.sets.size(); ++s) {
      for (std::size_t k = 0; k < matrix.kinds.size(); ++k) {
        const auto& cell = matrix.at(a, s, k);
        if (cell.ok()) {
          row.push_back(format_percent(cell.result->value));
        } else {
          notes.push_back("[" + std::to_string(notes.size() + 1) + "] " +
                          cell.application.display() + ", " +
                          column_label(matrix.sets[s], cell.kind) + ": " + cell.error);
          row.push_back("ERR[" + std::to_string(notes.size()) + "]");
        }
      }
    }
    table.add_row(std::move(row));
  }

  std::string out = header.render_text() + table.render();

  std::vector<std::string> subsets;
  for (std::size_t s = 0; s < matrix.sets.size(); ++s) {
    if (!matrix.sets[s].supported_only) continue;
    for (std::size_t a = 0; a < matrix.applications.size(); ++a) {
      subsets.push_back("  " + matrix.sets[s].set.label() + " for " +
                        matrix.applications[a].display() + " = " +
                        matrix.at(a, s, 0).set.display_members());
    }
  }
  if (!subsets.empty()) out += "\nsupported subsets:\n" + join(subsets, "\n") + "\n";
  if (!notes.empty()) out += "\nerrors:\n" + join(notes, "\n") + "\n";
  return out;
}

std::string render_plotdata(const PPMatrix& matrix) {
  using Row = std::vector<std::string>;
  std::vector<Row> rows;
  for (const auto& cell : matrix.cells) {
    Row base{cell.application.name(), cell.application.variant(), matrix.problem.name(),
             cell.set.label(), std::string(to_string(cell.kind))};
    auto emit = [&](std::string platform, std::string efficiency, std::string pp) {
      Row r = base;
      r.insert(r.end(), {std::move(platform), std::move(efficiency), std::move(pp)});
      rows.push_back(std::move(r));
    };
    if (!cell.ok()) {
      emit("", "", "ERR");
      continue;
    }
    emit("", "", format_decimal(cell.result->value));
    for (const auto& e : cell.result->breakdown) {
      emit(e.platform.name(),
           e.unsupported() ? std::string(to_string(e.status)) : format_decimal(e.value), "");
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a[0], a[1], a[3], a[4], a[5]) < std::tie(b[0], b[1], b[3], b[4], b[5]);
  });
  std::string out = "application,variant,problem,set,kind,platform,efficiency,pp\n";
  for (const auto& r : rows) out += detail::csv_row(r);
  return out;
}

std::vector<BestRow> best_observed_table(const Dataset& ds, const ProblemId& problem,
                                         const std::optional<PlatformId>& platform) {
  std::set<std::pair<MetricKind, PlatformId>> keys;
  for (const auto& m : ds.measurements) {
    if (m.problem == problem) keys.insert({m.metric, m.platform});
  }
  for (const auto& b : ds.externals) {
    if (b.problem == problem) keys.insert({b.metric, b.platform});
  }
  std::vector<BestRow> rows;
  for (const auto& [metric, p] : keys) {
    if (platform && p != *platform) continue;
    BestRow row{p, metric, std::nullopt, std::nullopt};
    try {
      row.derived = derive_best_observed(ds.measurements, problem, p, metric);
    } catch (const DataError&) {
      // only declared failures, or only an external ceiling
    }
    if (const auto* ext = ds.external_for(problem, p, metric)) row.external = *ext;
    if (row.derived || row.external) rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_best(const ReportHeader& header, std::span<const BestRow> rows) {
  TextTable table;
  table.add_column("platform", TextTable::Align::left);
  table.add_column("metric", TextTable::Align::left);
  table.add_column("best observed", TextTable::Align::right);
  table.add_column("from", TextTable::Align::left);
  table.add_column("external", TextTable::Align::right);
  table.add_column("ceiling", TextTable::Align::right);
  table.add_column("note", TextTable::Align::left);
  for (const auto& r : rows) {
    std::string note;
    if (!r.derived) {
      note = "external only";
    } else if (r.external && r.external->value != r.derived->value) {
      note = r.derived->metric.better(r.derived->value, r.external->value)
                 ? "observed beats external"
                 : "external beats observed";
    }
    table.add_row({r.platform.name(), r.metric.display(),
                   r.derived ? format_decimal(r.derived->value) : "-",
                   r.derived ? r.derived->contributor->display() : "-",
                   r.external ? format_decimal(r.external->value) : "-",
                   format_decimal(r.effective().value), note});
  }
  return header.render_text() + table.render();
}

// ---------------------------------------------------------------------------
// Command-line front end

namespace {

/// Carries an exit code up to run_cli.
struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, std::string message) { throw CliFailure{code, std::move(message)}; }

struct DataOptions {
  std::string corpus;
  std::string measurements;
  std::string specs;
  std::string externals;
  std::string reduce;
};

void add_data_options(CLI::App* cmd, DataOptions& o, std::string default_reduce) {
  o.reduce = std::move(default_reduce);
  cmd->add_option("--corpus", o.corpus, "Bundled dataset: tableI or gpustream-shape");
  cmd->add_option("--measurements", o.measurements, "Measurement file (.csv or .json)");
  cmd->add_option("--specs", o.specs, "Platform spec file (.csv or .json)");
  cmd->add_option("--externals", o.externals, "External ceiling file (.csv or .json)");
  cmd->add_option("--reduce", o.reduce, "Repeated-run reduction")
      ->check(CLI::IsMember({"none", "best", "mean"}))
      ->capture_default_str();
}

Dataset load_data(const DataOptions& o) {
  LoadOptions load{*parse_reduction(o.reduce)};
  if (!o.corpus.empty()) {
    if (!o.measurements.empty() || !o.specs.empty() || !o.externals.empty()) {
      fail(kExitData, "--corpus cannot be combined with --measurements/--specs/--externals");
    }
    return load_corpus(o.corpus, load);
  }
  if (o.measurements.empty()) fail(kExitData, "one of --measurements or --corpus is required");
  Dataset ds;
  ds.measurements = load_measurements(o.measurements, load);
  ds.provenance = "measurements=" + o.measurements;
  if (!o.specs.empty()) {
    ds.specs = load_specs(o.specs);
    ds.provenance += "; specs=" + o.specs;
  }
  if (!o.externals.empty()) {
    ds.externals = load_externals(o.externals);
    ds.provenance += "; externals=" + o.externals;
  }
  return ds;
}

void require_valid(const Dataset& ds) {
  auto report = validate(ds);
  if (report.ok()) return;
  std::string msg = "dataset is inconsistent:";
  for (const auto& v : report.violations) {
    msg += "\n  " + std::string(to_string(v.kind)) + ": " + v.message;
  }
  fail(kExitData, msg);
}

ProblemId resolve_problem(const Dataset& ds, const std::string& name) {
  auto problems = ds.problems();
  if (name.empty()) {
    if (problems.size() == 1) return problems.front();
    fail(kExitData, problems.empty() ? "dataset has no measurements"
                                     : "dataset has several problems; pass --problem");
  }
  std::vector<ProblemId> matches;
  for (const auto& p : problems) {
    if (p.name() == name) matches.push_back(p);
  }
  if (matches.empty()) fail(kExitData, "no data for problem '" + name + "'");
  if (matches.size() > 1) {
    fail(kExitData, "problem '" + name + "' is ambiguous: it appears with different parameters");
  }
  return matches.front();
}

std::vector<ApplicationId> resolve_apps(const Dataset& ds, const ProblemId& problem,
                                        const std::string& spec) {
  auto known = ds.applications(problem);
  if (spec.empty() || spec == "all") {
    if (known.empty()) fail(kExitData, "no applications match for problem '" + problem.name() + "'");
    return known;
  }
  std::vector<ApplicationId> out;
  std::string_view rest = spec;
  while (true) {
    auto comma = rest.find(',');
    auto item = rest.substr(0, comma);
    auto app = ApplicationId::parse(item);
    if (std::find(known.begin(), known.end(), app) == known.end()) {
      fail(kExitData, "no application '" + app.display() + "' for problem '" + problem.name() + "'");
    }
    if (std::find(out.begin(), out.end(), app) == out.end()) out.push_back(app);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<EfficiencyKind> parse_kinds(const std::string& kind) {
  if (kind == "arch") return {EfficiencyKind::architectural};
  if (kind == "app") return {EfficiencyKind::application};
  return {EfficiencyKind::architectural, EfficiencyKind::application};
}

OutputFormat parse_format(const std::string& f) {
  if (f == "csv") return OutputFormat::csv;
  if (f == "json") return OutputFormat::json;
  return OutputFormat::table;
}

std::vector<ReportHeader::Kind> header_kinds(const Dataset& ds, const ProblemId& problem,
                                             const std::vector<EfficiencyKind>& kinds,
                                             std::optional<Orientation> forced) {
  std::vector<ReportHeader::Kind> out;
  for (auto k : kinds) {
    std::optional<MetricKind> metric;
    try {
      metric = select_metric(ds, problem, k, forced);
    } catch (const DataError&) {
      // reported per cell
    }
    out.push_back({k, metric});
  }
  return out;
}

ReportHeader::Set header_set(const SetRequest& s) {
  std::string members = s.set.display_members();
  if (s.supported_only) members = "per-application supported subset of " + members;
  return {s.set.label(), members};
}

void print_clamp_warnings(std::span<const PPResult> results, std::ostream& err) {
  for (const auto& r : results) {
    for (const auto& e : r.breakdown) {
      if (e.clamped) {
        err << "warning: " << r.application.display() << " " << to_string(r.kind)
            << " efficiency on '" << e.platform.name() << "' exceeded 1 and was clamped\n";
      }
    }
  }
}

struct AnalysisOptions {
  DataOptions data;
  std::string problem;
  std::string kind = "both";
  std::string format = "table";
  std::string metric;
  bool clamp = false;
};

void add_analysis_options(CLI::App* cmd, AnalysisOptions& o) {
  add_data_options(cmd, o.data, "best");
  cmd->add_option("--problem", o.problem, "Problem name (optional when the dataset has one)");
  cmd->add_option("--kind", o.kind, "Efficiency kind")
      ->check(CLI::IsMember({"arch", "app", "both"}))
      ->capture_default_str();
  cmd->add_option("--metric", o.metric, "Force the metric orientation used for efficiencies")
      ->check(CLI::IsMember({"rate", "time"}));
  cmd->add_flag("--clamp", o.clamp, "Clamp efficiencies above 1 to 1 with a warning");
}

PPOptions pp_options(const AnalysisOptions& o) {
  PPOptions opts;
  opts.efficiency.clamp = o.clamp;
  if (!o.metric.empty()) opts.metric = parse_orientation(o.metric);
  return opts;
}

struct MatrixRun {
  ReportHeader header;
  PPMatrix matrix;
};

MatrixRun run_matrix(const AnalysisOptions& o, const std::string& apps_spec,
                     const std::string& sets_file, const std::vector<std::string>& inline_sets) {
  Dataset ds = load_data(o.data);
  require_valid(ds);
  ProblemId problem = resolve_problem(ds, o.problem);
  auto apps = resolve_apps(ds, problem, apps_spec);

  std::vector<std::string> set_texts = inline_sets;
  if (!sets_file.empty()) {
    auto file_sets = parse_sets_file(read_file(sets_file));
    set_texts.insert(set_texts.end(), file_sets.begin(), file_sets.end());
  } else if (set_texts.empty() && !o.data.corpus.empty()) {
    set_texts = parse_sets_file(corpus_sets(o.data.corpus));
  }
  if (set_texts.empty()) fail(kExitData, "no platform sets given; pass --sets FILE or --set");
  std::vector<SetRequest> sets;
  for (const auto& text : set_texts) sets.push_back(SetRequest::parse(text, ds.platforms(problem)));

  auto kinds = parse_kinds(o.kind);
  auto matrix = subset_analysis(apps, problem, sets, kinds, ds, pp_options(o));
  std::vector<ReportHeader::Set> header_sets;
  for (const auto& s : sets) header_sets.push_back(header_set(s));
  ReportHeader header("performance portability matrix", apps, problem, std::move(header_sets),
                      header_kinds(ds, problem, kinds, pp_options(o).metric), ds.provenance);
  return {std::move(header), std::move(matrix)};
}

void write_output_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) fail(kExitIo, "cannot open '" + path + "' for writing");
  file << content;
  file.flush();
  if (!file) fail(kExitIo, "failed writing '" + path + "'");
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Performance portability analysis of cross-platform benchmark results",
               std::string(kToolName)};
  std::string version = std::string(kToolName) + " " + std::string(tool_version());
  app.set_version_flag("--version", version);
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Check a dataset for consistency");
  DataOptions validate_opts;
  add_data_options(validate_cmd, validate_opts, "none");

  auto* pp_cmd = app.add_subcommand("pp", "Performance portability of one application");
  AnalysisOptions pp_opts;
  std::string pp_app;
  std::string pp_set;
  add_analysis_options(pp_cmd, pp_opts);
  pp_cmd->add_option("--app", pp_app, "Application NAME or NAME/VARIANT");
  pp_cmd->add_option("--set", pp_set, "Platform set 'label:p1,p2,...' or 'supported'")
      ->required();
  pp_cmd->add_option("--format", pp_opts.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  auto* matrix_cmd = app.add_subcommand("matrix", "Portability of many applications over named sets");
  AnalysisOptions matrix_opts;
  std::string matrix_apps = "all";
  std::string matrix_sets_file;
  std::vector<std::string> matrix_sets;
  add_analysis_options(matrix_cmd, matrix_opts);
  matrix_cmd->add_option("--apps", matrix_apps, "Comma-separated NAME[/VARIANT] list, or all")
      ->capture_default_str();
  matrix_cmd->add_option("--sets", matrix_sets_file, "File with one 'label:p1,p2,...' per line");
  matrix_cmd->add_option("--set", matrix_sets, "Additional platform set (repeatable)");
  matrix_cmd->add_option("--format", matrix_opts.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();

  auto* best_cmd = app.add_subcommand("best", "Best observed performance per platform");
  DataOptions best_data;
  std::string best_problem;
  std::string best_platform;
  add_data_options(best_cmd, best_data, "best");
  best_cmd->add_option("--problem", best_problem, "Problem name (optional when unique)");
  best_cmd->add_option("--platform", best_platform, "Restrict to one platform");

  auto* plot_cmd = app.add_subcommand("plotdata", "Long-form CSV for external plotting");
  AnalysisOptions plot_opts;
  std::string plot_apps = "all";
  std::string plot_sets_file;
  std::vector<std::string> plot_sets;
  std::string plot_out;
  add_analysis_options(plot_cmd, plot_opts);
  plot_cmd->add_option("--apps", plot_apps, "Comma-separated NAME[/VARIANT] list, or all")
      ->capture_default_str();
  plot_cmd->add_option("--sets", plot_sets_file, "File with one 'label:p1,p2,...' per line");
  plot_cmd->add_option("--set", plot_sets, "Additional platform set (repeatable)");
  plot_cmd->add_option("--out", plot_out, "Output CSV path")->required();

  for (auto* sub : {validate_cmd, pp_cmd, matrix_cmd, best_cmd, plot_cmd}) {
    sub->set_version_flag("--version", version);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitData;
  }

  try {
    if (validate_cmd->parsed()) {
      Dataset ds;
      std::vector<std::string> ingest_errors;
      try {
        ds = load_data(validate_opts);
      } catch (const IoError&) {
        throw;
      } catch (const DataError& e) {
        ingest_errors.push_back(e.what());
      }
      if (!ingest_errors.empty()) {
        out << "ingestion error: " << ingest_errors.front() << "\n";
        out << "1 violation\n";
        return kExitData;
      }
      ValidationOptions vopts;
      vopts.require_peaks = !validate_opts.specs.empty() || !validate_opts.corpus.empty();
      auto report = validate(ds, vopts);
      out << "dataset: " << ds.provenance << "\n";
      out << ds.measurements.size() << " measurements, " << ds.specs.size() << " platform specs, "
          << ds.externals.size() << " external ceilings\n";
      for (const auto& v : report.violations) {
        out << "violation [" << to_string(v.kind) << "] " << v.message << "\n";
      }
      if (report.ok()) {
        out << "OK\n";
        return kExitOk;
      }
      out << report.violations.size()
          << (report.violations.size() == 1 ? " violation\n" : " violations\n");
      return kExitData;
    }

    if (pp_cmd->parsed()) {
      Dataset ds = load_data(pp_opts.data);
      require_valid(ds);
      ProblemId problem = resolve_problem(ds, pp_opts.problem);
      auto known = ds.applications(problem);
      ApplicationId application = [&] {
        if (!pp_app.empty()) return ApplicationId::parse(pp_app);
        if (known.size() == 1) return known.front();
        fail(kExitData, "dataset has several applications; pass --app");
      }();
      if (std::find(known.begin(), known.end(), application) == known.end()) {
        fail(kExitData, "no application '" + application.display() + "' for problem '" +
                            problem.name() + "'");
      }
      auto request = SetRequest::parse(pp_set, ds.platforms(problem));
      PlatformSet set = request.supported_only
                            ? supported_subset(application, problem, request.set, ds)
                            : request.set;
      if (set.empty()) {
        fail(kExitData, "platform set '" + set.label() + "' is empty for " + application.display());
      }
      auto kinds = parse_kinds(pp_opts.kind);
      auto options = pp_options(pp_opts);
      std::vector<PPResult> results;
      for (auto k : kinds) results.push_back(pp_for(application, problem, set, k, ds, options));
      print_clamp_warnings(results, err);
      ReportHeader header("performance portability", {application}, problem,
                          {{set.label(), set.display_members()}},
                          header_kinds(ds, problem, kinds, options.metric), ds.provenance);
      out << render_pp(header, results, parse_format(pp_opts.format));
      return kExitOk;
    }

    if (matrix_cmd->parsed()) {
      auto run = run_matrix(matrix_opts, matrix_apps, matrix_sets_file, matrix_sets);
      for (const auto& cell : run.matrix.cells) {
        if (cell.ok()) print_clamp_warnings(std::span(&*cell.result, 1), err);
      }
      out << render_matrix(run.header, run.matrix, parse_format(matrix_opts.format));
      return kExitOk;
    }

    if (best_cmd->parsed()) {
      Dataset ds = load_data(best_data);
      require_valid(ds);
      ProblemId problem = [&] {
        if (best_problem.empty()) return resolve_problem(ds, best_problem);
        for (const auto& b : ds.externals) {
          if (b.problem.name() == best_problem) return b.problem;
        }
        return resolve_problem(ds, best_problem);
      }();
      std::optional<PlatformId> platform;
      if (!best_platform.empty()) platform = PlatformId(best_platform);
      auto rows = best_observed_table(ds, problem, platform);
      if (rows.empty()) {
        fail(kExitData, "no data for problem '" + problem.name() + "'" +
                            (platform ? " on platform '" + platform->name() + "'" : ""));
      }
      std::vector<PlatformId> seen;
      std::vector<MetricKind> metrics;
      for (const auto& r : rows) {
        if (std::find(seen.begin(), seen.end(), r.platform) == seen.end()) seen.push_back(r.platform);
        if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end()) {
          metrics.push_back(r.metric);
        }
      }
      std::sort(seen.begin(), seen.end());
      std::vector<ReportHeader::Kind> kinds;
      for (const auto& m : metrics) kinds.push_back({std::nullopt, m});
      ReportHeader header("best observed performance", ds.applications(problem), problem,
                          {{"platforms", PlatformSet("platforms", seen).display_members()}},
                          std::move(kinds), ds.provenance);
      out << render_best(header, rows);
      return kExitOk;
    }

    if (plot_cmd->parsed()) {
      auto run = run_matrix(plot_opts, plot_apps, plot_sets_file, plot_sets);
      write_output_file(plot_out, render_plotdata(run.matrix));
      return kExitOk;
    }
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitData;
}

}  // namespace ppm
