#include "ppm/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace ppm {

namespace {

std::string require_non_empty(std::string value, std::string_view what) {
  if (value.empty()) {
    throw DataError(std::string(what) + " must not be empty");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

PlatformId::PlatformId(std::string name)
    : name_(require_non_empty(std::move(name), "platform name")) {}

ApplicationId::ApplicationId(std::string name, std::string variant)
    : name_(require_non_empty(std::move(name), "application name")),
      variant_(std::move(variant)) {}

ApplicationId ApplicationId::parse(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return ApplicationId(std::string(text));
  }
  return ApplicationId(std::string(trim(text.substr(0, slash))),
                       std::string(trim(text.substr(slash + 1))));
}

std::string ApplicationId::display() const {
  return variant_.empty() ? name_ : name_ + "/" + variant_;
}

ProblemId::ProblemId(std::string name, Parameters parameters)
    : name_(require_non_empty(std::move(name), "problem name")),
      parameters_(std::move(parameters)) {}

std::string_view to_string(Orientation o) {
  return o == Orientation::rate ? "rate" : "time";
}

std::optional<Orientation> parse_orientation(std::string_view text) {
  if (text == "rate") return Orientation::rate;
  if (text == "time") return Orientation::time;
  return std::nullopt;
}

std::string MetricKind::display() const {
  return units + " (" + std::string(to_string(orientation)) + ")";
}

std::optional<double> PlatformSpec::peak(const MetricKind& metric) const {
  auto it = peaks.find(metric);
  if (it == peaks.end()) return std::nullopt;
  return it->second;
}

PlatformSet::PlatformSet(std::string label, std::vector<PlatformId> members)
    : label_(require_non_empty(std::move(label), "platform set label")),
      members_(std::move(members)) {
  std::set<PlatformId> seen;
  for (const auto& m : members_) {
    if (!seen.insert(m).second) {
      throw DataError("platform set '" + label_ + "' lists platform '" + m.name() +
                      "' more than once");
    }
  }
}

PlatformSet PlatformSet::parse(std::string_view text) {
  text = trim(text);
  std::string label;
  std::string_view list = text;
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    label = std::string(trim(text.substr(0, colon)));
    list = text.substr(colon + 1);
  }
  std::vector<PlatformId> members;
  while (!trim(list).empty()) {
    auto comma = list.find(',');
    auto item = trim(list.substr(0, comma));
    if (item.empty()) {
      throw DataError("empty platform name in set '" + std::string(text) + "'");
    }
    members.emplace_back(std::string(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (label.empty()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      label += (i ? "," : "") + members[i].name();
    }
    if (label.empty()) throw DataError("platform set must not be empty");
  }
  return PlatformSet(std::move(label), std::move(members));
}

bool PlatformSet::contains(const PlatformId& p) const {
  return std::find(members_.begin(), members_.end(), p) != members_.end();
}

std::string PlatformSet::display_members() const {
  std::string out = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ", ";
    out += members_[i].name();
  }
  return out + "}";
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::duplicate_tuple: return "duplicate-tuple";
    case ViolationKind::invalid_value: return "invalid-value";
    case ViolationKind::time_oriented_peak: return "time-oriented-peak";
    case ViolationKind::invalid_peak: return "invalid-peak";
    case ViolationKind::duplicate_spec: return "duplicate-spec";
    case ViolationKind::missing_spec: return "missing-spec";
    case ViolationKind::mixed_units: return "mixed-units";
  }
  return "unknown";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

namespace {

std::string describe(const Measurement& m) {
  return "(" + m.application.display() + ", " + m.problem.name() + ", " + m.platform.name() +
         ", " + m.metric.display() + ")";
}

}  // namespace

ValidationReport validate_dataset(std::span<const Measurement> measurements,
                                  std::span<const PlatformSpec> specs,
                                  const ValidationOptions& options) {
  ValidationReport report;
  auto add = [&report](ViolationKind kind, std::string message) {
    report.violations.push_back({kind, std::move(message)});
  };

  using TupleKey = std::tuple<ApplicationId, ProblemId, PlatformId, MetricKind>;
  std::map<TupleKey, std::size_t> occurrences;
  // (problem, orientation) -> units seen
  std::map<std::pair<ProblemId, Orientation>, std::set<std::string>> units;

  for (const auto& m : measurements) {
    ++occurrences[{m.application, m.problem, m.platform, m.metric}];
    units[{m.problem, m.metric.orientation}].insert(m.metric.units);
    if (m.supported) {
      if (!m.value) {
        add(ViolationKind::invalid_value, describe(m) + ": supported measurement has no value");
      } else if (!std::isfinite(*m.value) || *m.value <= 0.0) {
        add(ViolationKind::invalid_value,
            describe(m) + ": value must be positive and finite");
      }
    }
  }
  for (const auto& [key, n] : occurrences) {
    if (n > 1) {
      const auto& [app, problem, platform, metric] = key;
      add(ViolationKind::duplicate_tuple,
          "(" + app.display() + ", " + problem.name() + ", " + platform.name() + ", " +
              metric.display() + "): " + std::to_string(n) + " measurements for one tuple");
    }
  }
  for (const auto& [key, seen] : units) {
    if (seen.size() > 1) {
      std::string list;
      for (const auto& u : seen) list += (list.empty() ? "" : ", ") + u;
      add(ViolationKind::mixed_units, "problem '" + key.first.name() + "' mixes " +
                                          std::string(to_string(key.second)) +
                                          " units: " + list);
    }
  }

  std::map<PlatformId, const PlatformSpec*> by_platform;
  for (const auto& spec : specs) {
    if (!by_platform.emplace(spec.platform, &spec).second) {
      add(ViolationKind::duplicate_spec,
          "platform '" + spec.platform.name() + "' has more than one spec");
    }
    for (const auto& [metric, peak] : spec.peaks) {
      if (metric.orientation == Orientation::time) {
        add(ViolationKind::time_oriented_peak,
            "platform '" + spec.platform.name() + "' declares a peak for time-oriented metric " +
                metric.display() + "; peaks exist only for rate metrics");
      }
      if (!std::isfinite(peak) || peak <= 0.0) {
        add(ViolationKind::invalid_peak, "platform '" + spec.platform.name() + "' peak for " +
                                             metric.display() + " must be positive and finite");
      }
    }
  }

  if (options.require_peaks) {
    std::set<std::pair<PlatformId, MetricKind>> reported;
    for (const auto& m : measurements) {
      if (!m.supported || m.metric.orientation != Orientation::rate) continue;
      auto it = by_platform.find(m.platform);
      bool has_peak = it != by_platform.end() && it->second->peak(m.metric).has_value();
      if (!has_peak && reported.insert({m.platform, m.metric}).second) {
        add(ViolationKind::missing_spec, "platform '" + m.platform.name() + "' has no peak for " +
                                             m.metric.display());
      }
    }
  }

  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

}  // namespace ppm
