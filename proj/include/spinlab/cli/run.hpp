#pragma once

#include <filesystem>
#include <optional>

#include "spinlab/cli/output.hpp"

namespace spinlab::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 2, kNumerical = 3 };

// Executes the job's subcommand; throws the library's errors.
RunOutput execute(const JobConfig& job);

// execute plus output writing and error mapping to exit codes. With no
// output directory nothing is written.
int run(const JobConfig& job, const std::optional<std::filesystem::path>& out_dir);

// Entry point for the command-line binary.
int main_entry(int argc, char** argv);

}  // namespace spinlab::cli
