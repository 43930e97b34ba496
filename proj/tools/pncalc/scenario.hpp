#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pncalc::app {

// Bad input: exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option values keyed by option name; JSON arrays are flattened to the
// comma (inner) / semicolon (outer) text the command line uses.
using Settings = std::map<std::string, std::string>;

struct Scenario {
  std::string task;
  Settings settings;
};

struct OptionInfo {
  std::string name;
  std::string help;
};

const std::vector<std::string>& task_names();
// Options a task accepts, in report order.  Throws ValidationError for an
// unknown task.
const std::vector<OptionInfo>& task_options(std::string_view task);

// `origin` prefixes error messages (`<origin>:<line>: ...`).  `fallback_task`
// is used when the document has no "task" key.
Scenario parse_scenario(std::string_view text, std::string_view origin, std::string_view fallback_task = {});
Scenario load_scenario(const std::filesystem::path& path, std::string_view fallback_task = {});

}  // namespace pncalc::app
