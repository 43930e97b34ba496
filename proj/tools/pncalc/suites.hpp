#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pncalc/tnorm.hpp"
#include "report.hpp"

namespace pncalc::app {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The twelve acceptance criteria, in order.
std::vector<CheckResult> acceptance_checks();

// t-norm, triangle-function and PN-axiom law suites.  `extra_tnorms` are
// run through the t-norm law suite as well (used for negative controls).
std::vector<CheckResult> law_checks(std::uint64_t seed,
                                    const std::vector<std::pair<std::string, BinaryOp>>& extra_tnorms = {});

// `paper-examples` or `laws`; throws ValidationError otherwise.
Report run_suite(const std::string& name, std::uint64_t seed);

}  // namespace pncalc::app
