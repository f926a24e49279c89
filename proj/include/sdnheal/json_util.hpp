#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sdnheal/error.hpp"

namespace sdnheal {

using json = nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

namespace jsonio {

inline const json& field(const json& j, std::string_view key, std::string_view context) {
  if (!j.is_object()) throw ParseError(std::string(context) + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(context) + ": missing key '" + std::string(key) + "'");
  return *it;
}

/// Typed read of a required key; type mismatches become ParseError.
template <class T>
T get(const json& j, std::string_view key, std::string_view context) {
  const json& v = field(j, key, context);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string(context) + ": key '" + std::string(key) + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, std::string_view key, T fallback, std::string_view context) {
  if (!j.is_object()) throw ParseError(std::string(context) + ": expected an object");
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, context);
}

inline const json& array(const json& j, std::string_view key, std::string_view context) {
  const json& v = field(j, key, context);
  if (!v.is_array()) throw ParseError(std::string(context) + ": key '" + std::string(key) + "' must be an array");
  return v;
}

}  // namespace jsonio
}  // namespace sdnheal
