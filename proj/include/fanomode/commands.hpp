// commands.hpp: CLI subcommands as library calls

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "fanomode/config.hpp"
#include "fanomode/table.hpp"

namespace fanomode {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_violation = 2, exit_solver = 3 };

struct CommandResult {
    Table table;
    int status = exit_ok;
    std::vector<std::string> messages;  // diagnostics for stderr
};

std::vector<std::string> command_names();

CommandResult cmd_spectrum(const RunConfig& cfg);
CommandResult cmd_kernel(const RunConfig& cfg);
CommandResult cmd_evolve(const RunConfig& cfg);
CommandResult cmd_compare(const RunConfig& cfg);
CommandResult cmd_lindblad_check(const RunConfig& cfg);
CommandResult cmd_fanodiag(const RunConfig& cfg);
CommandResult cmd_decay_rate(const RunConfig& cfg);

// Dispatches by name, maps library exceptions to exit codes and writes the
// table in the configured format. Diagnostics go to `err`.
int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

} // namespace fanomode
