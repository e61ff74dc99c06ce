#pragma once

// Mode orchestration: executes one RunConfig, writes the mode's artifacts
// under config.output.dir, and returns a process exit code.

#include <iosfwd>

#include "chemoflux/config.hpp"

namespace chemoflux {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;       // bad configuration (set by the caller)
inline constexpr int kExitDivergence = 3;   // numerical blow-up (set by the caller)
inline constexpr int kExitCheckFailure = 4; // self-check battery failed

// Runs the configured mode.  Progress/result lines go to `log`.
// ConfigError and DivergenceError propagate; the caller maps them to exit
// codes 2 and 3.  For averages mode with compare=true, the comparison
// simulation uses the solver block with t_end overridden by averages.t_end.
int run(const RunConfig& config, std::ostream& log);

}  // namespace chemoflux
