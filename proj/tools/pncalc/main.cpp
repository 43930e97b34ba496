#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "scenario.hpp"
#include "suites.hpp"
#include "tasks.hpp"

namespace {

using pncalc::app::Report;
using pncalc::app::Scenario;
using pncalc::app::ValidationError;

struct TaskCommand {
  CLI::App* sub = nullptr;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void emit(const Report& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.str();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ValidationError("cannot write report to " + out_path);
  out << report.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pncalc: probabilistic normed space calculator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;

  std::map<std::string, TaskCommand> tasks;
  for (const std::string& task : pncalc::app::task_names()) {
    TaskCommand& cmd = tasks[task];
    cmd.sub = app.add_subcommand(task, "run the " + task + " task");
    for (const auto& opt : pncalc::app::task_options(task)) {
      cmd.options[opt.name] = cmd.sub->add_option("--" + opt.name, cmd.values[opt.name], opt.help);
    }
    cmd.sub->add_option("--scenario", scenario_path, "JSON scenario file; its values override flags");
    cmd.sub->add_option("--out", out_path, "write the report here instead of stdout");
  }

  CLI::App* run = app.add_subcommand("run", "run a JSON scenario file");
  run->add_option("--scenario", scenario_path, "scenario file")->required();
  run->add_option("--out", out_path, "write the report here instead of stdout");

  std::string suite_name;
  std::string suite_seed;
  CLI::App* suite = app.add_subcommand("suite", "run a built-in suite: paper-examples | laws");
  suite->add_option("name", suite_name, "suite name")->required();
  suite->add_option("--seed", suite_seed, "random seed (default $PNCALC_SEED or 7)");
  suite->add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (suite->parsed()) {
      std::uint64_t seed = pncalc::app::default_seed();
      if (!suite_seed.empty()) {
        try {
          seed = std::stoull(suite_seed);
        } catch (const std::exception&) {
          throw ValidationError("--seed expects an unsigned integer");
        }
      }
      emit(pncalc::app::run_suite(suite_name, seed), out_path);
      return 0;
    }

    Scenario sc;
    if (run->parsed()) {
      sc = pncalc::app::load_scenario(scenario_path);
    } else {
      for (auto& [task, cmd] : tasks) {
        if (!cmd.sub->parsed()) continue;
        sc.task = task;
        for (const auto& [name, opt] : cmd.options) {
          if (opt->count() > 0) sc.settings[name] = cmd.values[name];
        }
        if (!scenario_path.empty()) {
          const Scenario file = pncalc::app::load_scenario(scenario_path, task);
          if (file.task != task) {
            throw ValidationError(scenario_path + ": scenario task '" + file.task + "' does not match subcommand " +
                                  task);
          }
          for (const auto& [k, v] : file.settings) sc.settings[k] = v;
        }
      }
    }
    emit(pncalc::app::run_task(sc), out_path);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "pncalc: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "pncalc: internal error: " << e.what() << "\n";
    return 1;
  }
}
