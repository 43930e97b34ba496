#include "report.hpp"

#include <variant>

namespace pncalc::app {

void Report::add(std::string key, std::string value) { lines_.emplace_back(std::move(key), std::move(value)); }

void Report::add(std::string key, double value) { add(std::move(key), format_number(value)); }

void Report::add_distfn(const std::string& prefix, const DistFn& f) {
  const std::string p = prefix.empty() ? "" : prefix + ".";
  add(prefix.empty() ? "result" : prefix, describe(f));
  add(p + "family", to_string(f.family()));
  if (const auto s = f.as_step()) {
    add(p + "breakpoints", format_list(s->breakpoints));
    add(p + "levels", format_list(s->levels));
  }
  add(p + "plateau", f.plateau());
  add(p + "membership", to_string(dplus_membership(f)));
}

std::string Report::get(std::string_view key) const {
  for (const auto& [k, v] : lines_) {
    if (k == key) return v;
  }
  return {};
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : lines_) out += k + "=" + v + "\n";
  return out;
}

std::string format_list(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out + "]";
}

}  // namespace pncalc::app
