#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace monge::cli {

using Json = nlohmann::ordered_json;

/// Shortest text that always carries 17 significant digits, so every double
/// round-trips exactly. Non-finite values have no JSON spelling and become null.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {
inline void write_json(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += Json(k).dump();
        out += indent > 0 ? ": " : ":";
        write_json(v, out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      bool first = true;
      for (const auto& v : j) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        write_json(v, out, indent, depth + 1);
      }
      out += nl;
      out += close_pad;
      out += "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}
}  // namespace detail

/// Serialises like Json::dump(indent) but renders floats with format_double.
inline std::string to_text(const Json& j, int indent = 2) {
  std::string out;
  detail::write_json(j, out, indent, 0);
  return out;
}

}  // namespace monge::cli
