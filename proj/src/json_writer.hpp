#pragma once

#include <string>

#include <json.hpp>

namespace ppm::detail {

/// Like nlohmann::json::dump(2) but floating-point numbers are written in
/// shortest round-trip fixed notation, never scientific.
std::string dump_json(const nlohmann::ordered_json& value);

}  // namespace ppm::detail
