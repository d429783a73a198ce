#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "spinlab/cli/config.hpp"

namespace spinlab::cli {

using Cell = std::variant<double, long long, std::string>;

struct ResultTable {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Shortest round-trip form up to 17 significant digits, '.' decimal, no locale.
std::string format_real(double x);
std::string format_cell(const Cell& c);

// "# "-prefixed config echo followed by the header and rows.
std::string render_csv(const ResultTable& table, const JobConfig& job);

struct RunOutput {
  std::vector<ResultTable> tables;
  Json record = Json::object();  // subcommand-specific JSON result
};

// Writes <name>.csv per table, result.json with the record, and run.json
// with the provenance block (config echo, version, wall time, status).
void write_outputs(const std::filesystem::path& dir, const JobConfig& job, const RunOutput& out,
                   double wall_seconds);
void write_error(const std::filesystem::path& dir, const JobConfig& job, const Json& error,
                 double wall_seconds);

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace spinlab::cli
