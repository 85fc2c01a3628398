#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppm/dataset.hpp"

namespace ppm {

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class DataFormat { csv, json };

/// `.csv` or `.json`, by extension.
std::optional<DataFormat> format_from_path(const std::filesystem::path& path);

/// How repeated runs of one (application, problem, platform, metric) tuple
/// are reduced to a single measurement.
enum class Reduction {
  /// Keep every row; duplicates are left for validation to report.
  none,
  /// Max for rate metrics, min for time metrics.
  best,
  mean,
};

std::optional<Reduction> parse_reduction(std::string_view text);

struct LoadOptions {
  Reduction reduce = Reduction::best;
};

inline constexpr std::string_view kMeasurementCsvHeader =
    "application,variant,problem,platform,orientation,units,value,supported";
/// Accepted on input for files without implementation variants.
inline constexpr std::string_view kMeasurementCsvShortHeader =
    "application,problem,platform,orientation,units,value,supported";
inline constexpr std::string_view kSpecCsvHeader = "platform,orientation,units,peak";
inline constexpr std::string_view kExternalCsvHeader =
    "problem,platform,orientation,units,value,source_note";

/// Result is in canonical (application, problem, platform, metric) order, so
/// permuting input rows does not change it. Throws DataError with the record
/// number on malformed input.
std::vector<Measurement> load_measurements(std::istream& in, DataFormat format,
                                           const LoadOptions& options = {},
                                           std::string_view source = "<input>");
std::vector<Measurement> load_measurements(const std::filesystem::path& path,
                                           const LoadOptions& options = {});

/// Rows for one platform are merged into one PlatformSpec. Only rate
/// orientation is accepted.
std::vector<PlatformSpec> load_specs(std::istream& in, DataFormat format,
                                     std::string_view source = "<input>");
std::vector<PlatformSpec> load_specs(const std::filesystem::path& path);

std::vector<BestObserved> load_externals(std::istream& in, DataFormat format,
                                         std::string_view source = "<input>");
std::vector<BestObserved> load_externals(const std::filesystem::path& path);

void write_measurements(std::ostream& out, std::span<const Measurement> measurements,
                        DataFormat format);
void write_specs(std::ostream& out, std::span<const PlatformSpec> specs, DataFormat format);
void write_externals(std::ostream& out, std::span<const BestObserved> externals,
                     DataFormat format);

/// A whole dataset as one JSON document. Lossless.
std::string dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(std::string_view text, std::string_view source = "<input>");

void save_dataset(const Dataset& ds, const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

/// Bundled datasets: "tableI" and "gpustream-shape".
std::vector<std::string> corpus_names();
Dataset load_corpus(std::string_view name, const LoadOptions& options = {});
/// Named platform sets shipped with a corpus, in sets-file syntax.
std::string corpus_sets(std::string_view name);

/// Reads a sets file: one `label:p1,p2,...` per line, `#` comments.
std::vector<std::string> parse_sets_file(std::string_view text);

std::string read_file(const std::filesystem::path& path);

}  // namespace ppm
