#pragma once

// Subcommands of the command-line tool. Each writes its result to `out`,
// diagnostics to `err`, and returns the process exit code.

#include <iosfwd>

#include "hyperext/config.hpp"

namespace hyperext {

enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

// JSON verification report; kExitFailure lists the failing check ids on err.
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// CSV of F over the grid given by sampling.radius and sampling.grid_per_axis.
int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// CSV eps,omega,delta of the continuity modulus of F.
int cmd_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err);
// JSON array coloring the edge-list graph read from `edges`.
int cmd_color(std::istream& edges, std::ostream& out, std::ostream& err);
// JSON net with its separation, covering radius and points.
int cmd_net(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace hyperext
