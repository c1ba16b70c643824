#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "adaptopt/problem/problem.hpp"
#include "adaptopt/service/run_config.hpp"

namespace adaptopt::service {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1, // validation or optimization failure
    exit_usage = 2,   // bad arguments, bad config, I/O
};

// Parses and checks a workflow file; lists every violation on `err`.
int cmd_validate(const std::filesystem::path& workflow_path, std::ostream& out, std::ostream& err);

// Runs the configured algorithm and publishes output_dir/<run_id>. Prints the run id.
int cmd_optimize(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

// Exact front by enumeration, written to output_dir/oracle_front.json together
// with one oracle_solution_<k>.xml per entry.
int cmd_oracle(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

// Same as cmd_oracle for an already assembled problem.
int write_oracle(const AssembledProblem& problem, const std::filesystem::path& output_dir, const std::string& run_id,
    std::ostream& out, std::ostream& err);

// Blocks until the process is interrupted.
int cmd_serve(const std::filesystem::path& runs_dir, std::uint16_t port, const std::optional<std::filesystem::path>& static_dir,
    std::ostream& out, std::ostream& err);

// Assembles the cobot problem named by a config and applies the default
// hypervolume reference (sum of worst times + 1, sum of penalties + 1) when
// none is configured.
AssembledProblem load_cobot_problem(RunConfig& config);

// "<UTC yyyymmddThhmmssZ>-s<seed>"
std::string default_run_id(std::uint64_t seed);

} // namespace adaptopt::service
