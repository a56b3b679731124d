#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"
#include "lvspread/lvspread.h"

namespace lvcli {

enum ExitCode { kExitOk = 0, kExitConfig = 2, kExitNumeric = 3, kExitInconclusive = 4 };

// Set expression: primitives joined by '+', e.g. "ball(0,10) + shell(0,15,25)".
//   ball(c.., R)  half_space(n.., s)  cone(apex.., axis.., angle_deg)
//   box(lo.., hi..)  shell(c.., r_in, r_out)
// Coordinates come in groups of `dim`. Caller frees the result.
lvs_set* build_set(const std::string& expr, int dim);

// Runs cfg.command(), writes everything under run.out, returns the exit code.
// On failure error.json is written there and the same record goes to err.
int dispatch(const RunConfig& cfg, std::ostream& log, std::ostream& err);

}  // namespace lvcli
