#include "ppm/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "corpus_data.hpp"
#include "csv.hpp"
#include "json_writer.hpp"
#include "ppm/format.hpp"

namespace ppm {

using nlohmann::ordered_json;

namespace {

std::string where(std::string_view source, std::size_t record) {
  return std::string(source) + ":" + std::to_string(record) + ": ";
}

std::string slurp(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// One logical input row, independent of the file format.
using Row = std::map<std::string, std::string, std::less<>>;

struct RowSource {
  std::string_view source;
  std::size_t record = 0;
  Row fields;

  const std::string& get(std::string_view key) const {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw DataError(where(source, record) + "missing field '" + std::string(key) + "'");
    }
    return it->second;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw DataError(where(source, record) + message);
  }

  std::string non_empty(std::string_view key) const {
    const auto& v = get(key);
    if (v.empty()) fail("field '" + std::string(key) + "' must not be empty");
    return v;
  }

  Orientation orientation() const {
    auto o = parse_orientation(get("orientation"));
    if (!o) fail("unknown orientation '" + get("orientation") + "' (expected rate or time)");
    return *o;
  }

  double positive(std::string_view key) const {
    auto v = parse_double(get(key));
    if (!v) fail("field '" + std::string(key) + "' is not a number: '" + get(key) + "'");
    if (!std::isfinite(*v) || *v <= 0.0) {
      fail("field '" + std::string(key) + "' must be positive and finite, got '" + get(key) +
           "'");
    }
    return *v;
  }
};

std::vector<std::string> split_header(std::string_view h) {
  std::vector<std::string> columns;
  while (true) {
    auto comma = h.find(',');
    columns.emplace_back(h.substr(0, comma));
    if (comma == std::string_view::npos) break;
    h.remove_prefix(comma + 1);
  }
  return columns;
}

/// Decodes CSV or a JSON array of objects into rows. A CSV file must start
/// with one of `headers` exactly; the first one is canonical, and columns
/// missing from a shorter accepted header read as empty.
std::vector<RowSource> read_rows(std::istream& in, DataFormat format,
                                 std::initializer_list<std::string_view> headers,
                                 std::string_view source) {
  const std::vector<std::string> canonical = split_header(*headers.begin());
  std::vector<std::string> columns = canonical;
  std::vector<RowSource> rows;
  std::string text = slurp(in);
  if (format == DataFormat::csv) {
    auto records = detail::parse_csv(text, source);
    if (records.empty()) throw DataError(std::string(source) + ": empty file, expected header");
    auto accepted = std::find_if(headers.begin(), headers.end(), [&](std::string_view h) {
      return records.front().fields == split_header(h);
    });
    if (accepted == headers.end()) {
      throw DataError(where(source, records.front().line) + "expected header '" +
                      std::string(*headers.begin()) + "'");
    }
    columns = split_header(*accepted);
    for (std::size_t r = 1; r < records.size(); ++r) {
      const auto& rec = records[r];
      if (rec.fields.size() != columns.size()) {
        throw DataError(where(source, rec.line) + "expected " + std::to_string(columns.size()) +
                        " fields, got " + std::to_string(rec.fields.size()));
      }
      RowSource row{source, rec.line, {}};
      for (const auto& c : canonical) row.fields[c] = "";
      for (std::size_t c = 0; c < columns.size(); ++c) row.fields[columns[c]] = rec.fields[c];
      rows.push_back(std::move(row));
    }
    return rows;
  }

  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw DataError(std::string(source) + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) throw DataError(std::string(source) + ": expected a JSON array of records");
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& obj = doc[r];
    RowSource row{source, r + 1, {}};
    if (!obj.is_object()) row.fail("record is not an object");
    for (const auto& col : columns) {
      if (!obj.contains(col) || obj[col].is_null()) {
        row.fields[col] = "";
      } else if (obj[col].is_string()) {
        row.fields[col] = obj[col].get<std::string>();
      } else if (obj[col].is_boolean()) {
        row.fields[col] = obj[col].get<bool>() ? "true" : "false";
      } else if (obj[col].is_number()) {
        row.fields[col] = format_decimal(obj[col].get<double>());
      } else {
        row.fail("field '" + col + "' has an unsupported JSON type");
      }
    }
    if (obj.contains("parameters")) {
      if (!obj["parameters"].is_object()) row.fail("'parameters' must be an object");
      for (const auto& [k, v] : obj["parameters"].items()) {
        if (!v.is_string()) row.fail("parameter '" + k + "' must be a string");
        row.fields["parameters." + k] = v.get<std::string>();
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ProblemId problem_of(const RowSource& row) {
  ProblemId::Parameters params;
  for (const auto& [k, v] : row.fields) {
    if (k.starts_with("parameters.")) params[k.substr(11)] = v;
  }
  return ProblemId(row.non_empty("problem"), std::move(params));
}

using TupleKey = std::tuple<ApplicationId, ProblemId, PlatformId, MetricKind>;

TupleKey key_of(const Measurement& m) {
  return {m.application, m.problem, m.platform, m.metric};
}

std::vector<Measurement> reduce_runs(std::vector<std::pair<Measurement, std::size_t>> rows,
                                     Reduction reduce, std::string_view source) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return key_of(a.first) < key_of(b.first); });
  std::vector<Measurement> out;
  if (reduce == Reduction::none) {
    for (auto& [m, line] : rows) out.push_back(std::move(m));
    return out;
  }
  for (std::size_t i = 0; i < rows.size();) {
    std::size_t j = i;
    while (j < rows.size() && key_of(rows[j].first) == key_of(rows[i].first)) ++j;
    Measurement merged = rows[i].first;
    std::vector<double> values;
    for (std::size_t k = i; k < j; ++k) {
      if (rows[k].first.supported != merged.supported) {
        throw DataError(where(source, rows[k].second) + "duplicate tuple (" +
                        merged.application.display() + ", " + merged.problem.name() + ", " +
                        merged.platform.name() + ", " + merged.metric.display() +
                        ") mixes supported and unsupported runs (first seen on record " +
                        std::to_string(rows[i].second) + ")");
      }
      if (rows[k].first.value) values.push_back(*rows[k].first.value);
    }
    if (merged.supported) {
      std::sort(values.begin(), values.end());
      if (reduce == Reduction::best) {
        merged.value = merged.metric.orientation == Orientation::rate ? values.back()
                                                                      : values.front();
      } else {
        double sum = 0.0;
        for (double v : values) sum += v;
        merged.value = sum / static_cast<double>(values.size());
      }
    }
    out.push_back(std::move(merged));
    i = j;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

DataFormat require_format(const std::filesystem::path& path) {
  auto f = format_from_path(path);
  if (!f) {
    throw IoError("cannot infer format of '" + path.string() + "' (expected .csv or .json)");
  }
  return *f;
}

bool parse_supported(const RowSource& row) {
  const auto& s = row.get("supported");
  if (s == "true") return true;
  if (s == "false") return false;
  row.fail("field 'supported' must be true or false, got '" + s + "'");
}

}  // namespace

std::optional<DataFormat> format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv") return DataFormat::csv;
  if (ext == ".json") return DataFormat::json;
  return std::nullopt;
}

std::optional<Reduction> parse_reduction(std::string_view text) {
  if (text == "none") return Reduction::none;
  if (text == "best") return Reduction::best;
  if (text == "mean") return Reduction::mean;
  return std::nullopt;
}

std::vector<Measurement> load_measurements(std::istream& in, DataFormat format,
                                           const LoadOptions& options, std::string_view source) {
  std::vector<std::pair<Measurement, std::size_t>> parsed;
  for (const auto& row : read_rows(in, format, {kMeasurementCsvHeader, kMeasurementCsvShortHeader}, source)) {
    try {
      bool supported = parse_supported(row);
      Measurement m{ApplicationId(row.non_empty("application"), row.get("variant")),
                    problem_of(row),
                    PlatformId(row.non_empty("platform")),
                    MetricKind{row.orientation(), row.non_empty("units")},
                    std::nullopt,
                    supported};
      if (supported) m.value = row.positive("value");
      parsed.emplace_back(std::move(m), row.record);
    } catch (const DataError& e) {
      std::string msg = e.what();
      if (msg.starts_with(std::string(source) + ":")) throw;
      row.fail(msg);
    }
  }
  return reduce_runs(std::move(parsed), options.reduce, source);
}

std::vector<Measurement> load_measurements(const std::filesystem::path& path,
                                           const LoadOptions& options) {
  auto format = require_format(path);
  auto in = open_input(path);
  return load_measurements(in, format, options, path.string());
}

std::vector<PlatformSpec> load_specs(std::istream& in, DataFormat format,
                                     std::string_view source) {
  std::vector<PlatformSpec> specs;
  for (const auto& row : read_rows(in, format, {kSpecCsvHeader}, source)) {
    PlatformId platform(row.non_empty("platform"));
    MetricKind metric{row.orientation(), row.non_empty("units")};
    if (metric.orientation != Orientation::rate) {
      row.fail("platform '" + platform.name() +
               "': peaks are defined only for rate-oriented metrics, got time");
    }
    double peak = row.positive("peak");
    auto it = std::find_if(specs.begin(), specs.end(),
                           [&](const PlatformSpec& s) { return s.platform == platform; });
    if (it == specs.end()) {
      specs.push_back(PlatformSpec{platform, {}});
      it = specs.end() - 1;
    }
    if (!it->peaks.emplace(metric, peak).second) {
      row.fail("platform '" + platform.name() + "' declares the peak for " + metric.display() +
               " twice");
    }
  }
  std::sort(specs.begin(), specs.end(),
            [](const PlatformSpec& a, const PlatformSpec& b) { return a.platform < b.platform; });
  return specs;
}

std::vector<PlatformSpec> load_specs(const std::filesystem::path& path) {
  auto format = require_format(path);
  auto in = open_input(path);
  return load_specs(in, format, path.string());
}

std::vector<BestObserved> load_externals(std::istream& in, DataFormat format,
                                         std::string_view source) {
  std::vector<BestObserved> out;
  for (const auto& row : read_rows(in, format, {kExternalCsvHeader}, source)) {
    BestObserved b{problem_of(row),
                   PlatformId(row.non_empty("platform")),
                   MetricKind{row.orientation(), row.non_empty("units")},
                   row.positive("value"),
                   BestObserved::Source::external,
                   std::nullopt,
                   row.get("source_note")};
    for (const auto& prev : out) {
      if (prev.problem == b.problem && prev.platform == b.platform && prev.metric == b.metric) {
        row.fail("external ceiling for (" + b.problem.name() + ", " + b.platform.name() + ", " +
                 b.metric.display() + ") given twice");
      }
    }
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end(), [](const BestObserved& a, const BestObserved& b) {
    return std::tie(a.problem, a.platform, a.metric) < std::tie(b.problem, b.platform, b.metric);
  });
  return out;
}

std::vector<BestObserved> load_externals(const std::filesystem::path& path) {
  auto format = require_format(path);
  auto in = open_input(path);
  return load_externals(in, format, path.string());
}

namespace {

ordered_json parameters_json(const ProblemId& p) {
  ordered_json obj = ordered_json::object();
  for (const auto& [k, v] : p.parameters()) obj[k] = v;
  return obj;
}

ordered_json measurement_json(const Measurement& m) {
  ordered_json j;
  j["application"] = m.application.name();
  j["variant"] = m.application.variant();
  j["problem"] = m.problem.name();
  if (!m.problem.parameters().empty()) j["parameters"] = parameters_json(m.problem);
  j["platform"] = m.platform.name();
  j["orientation"] = std::string(to_string(m.metric.orientation));
  j["units"] = m.metric.units;
  j["value"] = m.supported && m.value ? ordered_json(*m.value) : ordered_json(nullptr);
  j["supported"] = m.supported;
  return j;
}

ordered_json external_json(const BestObserved& b) {
  ordered_json j;
  j["problem"] = b.problem.name();
  if (!b.problem.parameters().empty()) j["parameters"] = parameters_json(b.problem);
  j["platform"] = b.platform.name();
  j["orientation"] = std::string(to_string(b.metric.orientation));
  j["units"] = b.metric.units;
  j["value"] = b.value;
  j["source_note"] = b.note;
  return j;
}

}  // namespace

void write_measurements(std::ostream& out, std::span<const Measurement> measurements,
                        DataFormat format) {
  if (format == DataFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& m : measurements) arr.push_back(measurement_json(m));
    out << detail::dump_json(arr);
    return;
  }
  out << kMeasurementCsvHeader << "\n";
  for (const auto& m : measurements) {
    out << detail::csv_row({m.application.name(), m.application.variant(), m.problem.name(),
                            m.platform.name(), std::string(to_string(m.metric.orientation)),
                            m.metric.units,
                            m.supported && m.value ? format_decimal(*m.value) : "",
                            m.supported ? "true" : "false"});
  }
}

void write_specs(std::ostream& out, std::span<const PlatformSpec> specs, DataFormat format) {
  if (format == DataFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : specs) {
      for (const auto& [metric, peak] : s.peaks) {
        arr.push_back({{"platform", s.platform.name()},
                       {"orientation", std::string(to_string(metric.orientation))},
                       {"units", metric.units},
                       {"peak", peak}});
      }
    }
    out << detail::dump_json(arr);
    return;
  }
  out << kSpecCsvHeader << "\n";
  for (const auto& s : specs) {
    for (const auto& [metric, peak] : s.peaks) {
      out << detail::csv_row({s.platform.name(), std::string(to_string(metric.orientation)),
                              metric.units, format_decimal(peak)});
    }
  }
}

void write_externals(std::ostream& out, std::span<const BestObserved> externals,
                     DataFormat format) {
  if (format == DataFormat::json) {
    ordered_json arr = ordered_json::array();
    for (const auto& b : externals) arr.push_back(external_json(b));
    out << detail::dump_json(arr);
    return;
  }
  out << kExternalCsvHeader << "\n";
  for (const auto& b : externals) {
    out << detail::csv_row({b.problem.name(), b.platform.name(),
                            std::string(to_string(b.metric.orientation)), b.metric.units,
                            format_decimal(b.value), b.note});
  }
}

namespace {

constexpr std::string_view kDatasetFormat = "ppmetric-dataset";
constexpr int kDatasetVersion = 1;

ProblemId problem_from_json(const ordered_json& j) {
  ProblemId::Parameters params;
  if (j.contains("parameters")) {
    for (const auto& [k, v] : j.at("parameters").items()) params[k] = v.get<std::string>();
  }
  return ProblemId(j.at("problem").get<std::string>(), std::move(params));
}

MetricKind metric_from_json(const ordered_json& j) {
  auto o = parse_orientation(j.at("orientation").get<std::string>());
  if (!o) throw DataError("unknown orientation '" + j.at("orientation").get<std::string>() + "'");
  return MetricKind{*o, j.at("units").get<std::string>()};
}

}  // namespace

std::string dataset_to_json(const Dataset& ds) {
  ordered_json doc;
  doc["format"] = std::string(kDatasetFormat);
  doc["version"] = kDatasetVersion;
  doc["provenance"] = ds.provenance;
  doc["measurements"] = ordered_json::array();
  for (const auto& m : ds.measurements) doc["measurements"].push_back(measurement_json(m));
  doc["specs"] = ordered_json::array();
  for (const auto& s : ds.specs) {
    ordered_json spec;
    spec["platform"] = s.platform.name();
    spec["peaks"] = ordered_json::array();
    for (const auto& [metric, peak] : s.peaks) {
      spec["peaks"].push_back({{"orientation", std::string(to_string(metric.orientation))},
                               {"units", metric.units},
                               {"peak", peak}});
    }
    doc["specs"].push_back(std::move(spec));
  }
  doc["externals"] = ordered_json::array();
  for (const auto& b : ds.externals) doc["externals"].push_back(external_json(b));
  return detail::dump_json(doc);
}

Dataset dataset_from_json(std::string_view text, std::string_view source) {
  Dataset ds;
  try {
    auto doc = ordered_json::parse(text);
    if (doc.value("format", "") != kDatasetFormat) {
      throw DataError("not a " + std::string(kDatasetFormat) + " document");
    }
    if (doc.at("version").get<int>() != kDatasetVersion) {
      throw DataError("unsupported dataset version " + doc.at("version").dump());
    }
    ds.provenance = doc.at("provenance").get<std::string>();
    for (const auto& j : doc.at("measurements")) {
      Measurement m{ApplicationId(j.at("application").get<std::string>(),
                                  j.at("variant").get<std::string>()),
                    problem_from_json(j),
                    PlatformId(j.at("platform").get<std::string>()),
                    metric_from_json(j),
                    std::nullopt,
                    j.at("supported").get<bool>()};
      if (!j.at("value").is_null()) m.value = j.at("value").get<double>();
      ds.measurements.push_back(std::move(m));
    }
    for (const auto& j : doc.at("specs")) {
      PlatformSpec spec{PlatformId(j.at("platform").get<std::string>()), {}};
      for (const auto& p : j.at("peaks")) {
        spec.peaks.emplace(metric_from_json(p), p.at("peak").get<double>());
      }
      ds.specs.push_back(std::move(spec));
    }
    for (const auto& j : doc.at("externals")) {
      ds.externals.push_back(BestObserved{problem_from_json(j),
                                          PlatformId(j.at("platform").get<std::string>()),
                                          metric_from_json(j), j.at("value").get<double>(),
                                          BestObserved::Source::external, std::nullopt,
                                          j.at("source_note").get<std::string>()});
    }
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string(source) + ": malformed dataset: " + e.what());
  } catch (const DataError& e) {
    throw DataError(std::string(source) + ": " + e.what());
  }
  return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << dataset_to_json(ds);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Dataset load_dataset(const std::filesystem::path& path) {
  return dataset_from_json(read_file(path), path.string());
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return slurp(in);
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> names;
  for (const auto& c : detail::bundled_corpora()) names.emplace_back(c.name);
  return names;
}

namespace {

const detail::BundledCorpus& find_corpus(std::string_view name) {
  for (const auto& c : detail::bundled_corpora()) {
    if (c.name == name) return c;
  }
  std::string known;
  for (const auto& n : corpus_names()) known += (known.empty() ? "" : ", ") + n;
  throw DataError("unknown corpus '" + std::string(name) + "' (available: " + known + ")");
}

}  // namespace

Dataset load_corpus(std::string_view name, const LoadOptions& options) {
  const auto& c = find_corpus(name);
  std::string prefix = "corpus:" + std::string(name) + "/";
  Dataset ds;
  std::istringstream m{std::string(c.measurements)};
  ds.measurements = load_measurements(m, DataFormat::csv, options, prefix + "measurements.csv");
  std::istringstream s{std::string(c.specs)};
  ds.specs = load_specs(s, DataFormat::csv, prefix + "specs.csv");
  if (!c.externals.empty()) {
    std::istringstream e{std::string(c.externals)};
    ds.externals = load_externals(e, DataFormat::csv, prefix + "externals.csv");
  }
  ds.provenance = std::string(c.provenance);
  return ds;
}

std::string corpus_sets(std::string_view name) { return std::string(find_corpus(name).sets); }

std::vector<std::string> parse_sets_file(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace ppm
