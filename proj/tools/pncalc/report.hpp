#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pncalc/distfn.hpp"

namespace pncalc::app {

// Ordered `key=value` lines.  Keys may repeat; numbers are written with
// format_number so output is byte-stable.
class Report {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, std::string_view value) { add(std::move(key), std::string(value)); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, double value);
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  // result=..., family=..., breakpoints=[...], levels=[...], plateau=...
  void add_distfn(const std::string& prefix, const DistFn& f);

  const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
  // First value for key, empty if absent.
  std::string get(std::string_view key) const;
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

std::string format_list(const std::vector<double>& values);

}  // namespace pncalc::app
