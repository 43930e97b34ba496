#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pncalc::app {

namespace {

using nlohmann::json;

const OptionInfo kSpace{"space", "space spec, e.g. E9:a=1, E19:l2,dim=2, E25"};
const OptionInfo kTol{"tol", "comparison tolerance (default 1e-9)"};
const OptionInfo kSeed{"seed", "random seed (default $PNCALC_SEED or 7)"};
const OptionInfo kHorizon{"horizon", "largest sequence index examined (default 64)"};
const OptionInfo kLambdas{"lambdas", "neighborhood levels (default 0.5,0.25,0.1,0.05)"};
const OptionInfo kSeq{"seq", "sequence: harmonic|geometric|decay[:dir=..;offset=..], constant:<v>, explicit:<v>;<v>"};
const OptionInfo kSet{"set", "set: all_reals, interval:<lo>,<hi>, finite:<v>;<v>, seq:<sequence>"};
const OptionInfo kSamples{"samples", "sample grid: default | powers:<k> (axioms), count (interval sets)"};
const OptionInfo kGrid{"grid", "grid points for sampled operations (default 1024)"};
const OptionInfo kXmax{"xmax", "grid horizon for sampled operations (default 64)"};

const std::map<std::string, std::vector<OptionInfo>, std::less<>>& table() {
  static const std::map<std::string, std::vector<OptionInfo>, std::less<>> t{
      {"convolve",
       {{"kind", "sup | inf | max (default sup)"},
        {"tnorm", "min | prod | lukasiewicz | t2 (default min)"},
        {"lhs", "left operand: step:<c> | plateau:<g> | ratio:<b> | grid:@<path>"},
        {"rhs", "right operand"},
        kGrid,
        kXmax,
        kSeed}},
      {"axioms",
       {kSpace,
        {"tau", "triangle function tau: sup:<tnorm> | inf:<tnorm> | max"},
        {"taustar", "triangle function tau*"},
        kSamples,
        kTol,
        kGrid,
        kXmax,
        kSeed}},
      {"serstnev", {kSpace, kSamples, kTol, kSeed}},
      {"classify", {kSpace, kSet, kSamples, kHorizon, kSeed}},
      {"radius", {kSpace, kSet, kSamples, kHorizon, kSeed}},
      {"converge", {kSpace, kSeq, {"target", "limit candidate vector (default 0)"}, kLambdas, kHorizon, kSeed}},
      {"cauchy", {kSpace, kSeq, kLambdas, kHorizon, kSeed}},
      {"equiv", {{"a", "first space"}, {"b", "second space"}, {"battery", "default"}, kLambdas, kHorizon, kSeed}},
      {"find_c",
       {kSpace,
        {"basis", "basis vectors separated by ';' (default: standard basis)"},
        {"field", "one-dimensional comparison space (default E19)"},
        kSeed}},
      {"compact", {kSpace, kSet, kSeq, {"lambda", "neighborhood level (default 0.25)"}, kHorizon, kSamples, kSeed}},
      {"lgprobe", {kSpace, {"x", "probe points (default 0.25,0.5,1,2,4,8)"}, kSeed}},
  };
  return t;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the first `"key"` used as an object key.
std::size_t line_of_key(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  for (std::size_t pos = text.find(quoted); pos != std::string_view::npos; pos = text.find(quoted, pos + 1)) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return line_of_offset(text, pos);
  }
  return 1;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw std::invalid_argument("expected a string, number or list");
}

std::string value_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string out;
  const bool nested = std::any_of(v.begin(), v.end(), [](const json& e) { return e.is_array(); });
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += nested ? ';' : ',';
    if (v[i].is_array()) {
      for (std::size_t j = 0; j < v[i].size(); ++j) {
        if (j) out += ',';
        out += scalar_text(v[i][j]);
      }
    } else {
      out += scalar_text(v[i]);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, opts] : table()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::vector<OptionInfo>& task_options(std::string_view task) {
  const auto it = table().find(task);
  if (it == table().end()) throw ValidationError("unknown task '" + std::string(task) + "'");
  return it->second;
}

Scenario parse_scenario(std::string_view text, std::string_view origin, std::string_view fallback_task) {
  const std::string where(origin);
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ValidationError(where + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object()) throw ValidationError(where + ":1: scenario must be a JSON object");

  Scenario sc;
  if (const auto it = doc.find("task"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError(where + ":" + std::to_string(line_of_key(text, "task")) + ": task must be a string");
    sc.task = it->get<std::string>();
  } else {
    sc.task = std::string(fallback_task);
  }
  if (sc.task.empty()) throw ValidationError(where + ":1: missing \"task\"");
  if (!table().count(sc.task)) {
    throw ValidationError(where + ":" + std::to_string(line_of_key(text, "task")) + ": unknown task '" + sc.task + "'");
  }

  const auto& allowed = task_options(sc.task);
  for (const auto& [key, value] : doc.items()) {
    if (key == "task") continue;
    const std::size_t line = line_of_key(text, key);
    if (std::none_of(allowed.begin(), allowed.end(), [&](const OptionInfo& o) { return o.name == key; })) {
      throw ValidationError(where + ":" + std::to_string(line) + ": unknown key '" + key + "' for task " + sc.task);
    }
    try {
      sc.settings[key] = value_text(value);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ":" + std::to_string(line) + ": key '" + key + "': " + e.what());
    }
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, std::string_view fallback_task) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string(), fallback_task);
}

}  // namespace pncalc::app
