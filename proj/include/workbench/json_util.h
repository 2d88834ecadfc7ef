#pragma once

#include <string>

#include "json.hpp"
#include "workbench/errors.h"

// Field access that reports the JSON path of whatever went wrong.
namespace wb::jsonu {

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline const nlohmann::json& need(const nlohmann::json& j, const char* key,
                                  const std::string& path) {
  if (!j.is_object()) throw ParseError(path.empty() ? "$" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(join(path, key), "missing field");
  return *it;
}

inline double num(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

inline int integer(const nlohmann::json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  return v.get<int>();
}

inline std::string str(const nlohmann::json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

inline bool boolean(const nlohmann::json& v, const std::string& path) {
  if (!v.is_boolean()) throw ParseError(path, "expected true or false");
  return v.get<bool>();
}

inline double num_or(const nlohmann::json& j, const char* key, const std::string& path,
                     double dflt) {
  auto it = j.find(key);
  return it == j.end() ? dflt : num(*it, join(path, key));
}

nlohmann::json parse_file(const std::string& path);

}  // namespace wb::jsonu
