#include "json_writer.hpp"

#include "ppm/format.hpp"

namespace ppm::detail {

namespace {

void dump(const nlohmann::ordered_json& v, std::string& out, int depth) {
  auto indent = [&out](int d) { out.append(static_cast<std::size_t>(d) * 2, ' '); };
  switch (v.type()) {
    case nlohmann::ordered_json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        indent(depth + 1);
        out += nlohmann::ordered_json(it.key()).dump();
        out += ": ";
        dump(it.value(), out, depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      indent(depth);
      out += "}";
      return;
    }
    case nlohmann::ordered_json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        indent(depth + 1);
        dump(v[i], out, depth + 1);
        out += i + 1 < v.size() ? ",\n" : "\n";
      }
      indent(depth);
      out += "]";
      return;
    }
    case nlohmann::ordered_json::value_t::number_float:
      out += format_decimal(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value) {
  std::string out;
  dump(value, out, 0);
  out += "\n";
  return out;
}

}  // namespace ppm::detail
