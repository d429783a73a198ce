#include "spinlab/cli/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "spinlab/core/error.hpp"

namespace spinlab::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ValidationError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw ValidationError("write to '" + path.string() + "' failed");
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

Json provenance(const JobConfig& job, double wall_seconds) {
  return {{"schema_version", kSchemaVersion},
          {"version", kVersion},
          {"subcommand", job.subcommand},
          {"config", job.document},
          {"finished_at", utc_timestamp()},
          {"wall_seconds", wall_seconds}};
}

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc{}) throw NumericalError("format_real: conversion failed");
  return {buf, ptr};
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::string render_csv(const ResultTable& table, const JobConfig& job) {
  std::ostringstream os;
  std::istringstream echo(job.document.dump(2));
  for (std::string line; std::getline(echo, line);) os << "# " << line << '\n';
  for (std::size_t k = 0; k < table.columns.size(); ++k)
    os << (k ? "," : "") << table.columns[k];
  os << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw ValidationError("table '" + table.name + "': row width does not match the schema");
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_cell(row[k]);
    os << '\n';
  }
  return os.str();
}

void write_outputs(const std::filesystem::path& dir, const JobConfig& job, const RunOutput& out,
                   double wall_seconds) {
  std::filesystem::create_directories(dir);
  Json files = Json::array();
  for (const auto& t : out.tables) {
    write_file(dir / (t.name + ".csv"), render_csv(t, job));
    files.push_back(t.name + ".csv");
  }
  Json result = {{"subcommand", job.subcommand}, {"config", job.document}, {"result", out.record}};
  write_file(dir / "result.json", result.dump(2) + "\n");
  files.push_back("result.json");
  Json run = provenance(job, wall_seconds);
  run["status"] = "ok";
  run["outputs"] = files;
  write_file(dir / "run.json", run.dump(2) + "\n");
}

void write_error(const std::filesystem::path& dir, const JobConfig& job, const Json& error,
                 double wall_seconds) {
  std::filesystem::create_directories(dir);
  write_file(dir / "error.json", error.dump(2) + "\n");
  Json run = provenance(job, wall_seconds);
  run["status"] = "error";
  run["error"] = error;
  write_file(dir / "run.json", run.dump(2) + "\n");
}

}  // namespace spinlab::cli
