#pragma once

#include <cstdint>

#include "report.hpp"
#include "scenario.hpp"

namespace pncalc::app {

// PNCALC_SEED when set to an unsigned integer, 7 otherwise.
std::uint64_t default_seed();

// Runs one scenario.  The report opens with the task name and every option
// with defaults expanded, followed by the results.  Throws ValidationError for
// bad settings.
Report run_task(const Scenario& scenario, std::uint64_t seed = default_seed());

}  // namespace pncalc::app
