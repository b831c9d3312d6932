#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

namespace ribnet::cli {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Malformed configuration or input file; the tool exits with status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads one JSON object strictly: every key must be consumed, and values must
// have the requested type. Errors name the JSON path.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : j_(object), path_(std::move(path)) {
    if (!j_.is_object()) throw InputError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <class T>
  T required(const std::string& key) {
    if (!j_.contains(key)) throw InputError(path_ + ": missing key '" + key + "'");
    return get<T>(key);
  }

  template <class T>
  T optional(const std::string& key, T fallback) {
    return j_.contains(key) ? get<T>(key) : fallback;
  }

  const json& child(const std::string& key) {
    if (!j_.contains(key)) throw InputError(path_ + ": missing key '" + key + "'");
    used_.insert(key);
    return j_.at(key);
  }

  std::string path(const std::string& key) const { return path_ + "." + key; }

  // Throws on keys that were never read.
  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw InputError(path_ + ": unknown key '" + key + "'");
    }
  }

 template <class T>
  std::vector<T> array(const std::string& key) {
    const json& v = child(key);
    if (!v.is_array()) throw InputError(path(key) + ": expected an array");
    std::vector<T> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(convert<T>(v[i], path(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  template <class T>
  static T convert(const json& v, const std::string& where) {
    bool ok = false;
    if constexpr (std::is_same_v<T, bool>) {
      ok = v.is_boolean();
    } else if constexpr (std::is_floating_point_v<T>) {
      ok = v.is_number();
    } else if constexpr (std::is_unsigned_v<T>) {
      ok = v.is_number_unsigned();
    } else if constexpr (std::is_integral_v<T>) {
      ok = v.is_number_integer();
    } else if constexpr (std::is_same_v<T, std::string>) {
      ok = v.is_string();
    }
    if (!ok) throw InputError(where + ": value has the wrong type");
    return v.get<T>();
  }

 private:
  template <class T>
  T get(const std::string& key) {
    used_.insert(key);
    return convert<T>(j_.at(key), path(key));
  }

  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

json parse_json_file(const std::string& file);

}  // namespace ribnet::cli
