#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinlab/models/model.hpp"
#include "spinlab/spectral/ground.hpp"

namespace spinlab::cli {

using Json = nlohmann::ordered_json;

// Subcommand plus its JSON document with every default filled in, so the
// echo written next to the results reproduces the run on its own.
struct JobConfig {
  std::string subcommand;
  Json document;
};

const std::vector<std::string>& subcommands();

// Grid "start:stop:step" (inclusive stop, tolerant to rounding), a single
// number, or a JSON array of numbers.
std::vector<double> parse_real_grid(const Json& spec, const char* what);
std::vector<int> parse_int_grid(const Json& spec, const char* what);

// key=value with a dotted key path; the value is parsed as JSON when it
// parses, else taken as a string.
void apply_override(Json& document, const std::string& assignment);

// Validates the subcommand and materialises the defaults.
JobConfig make_job(const std::string& subcommand, Json document,
                   const std::vector<std::string>& overrides = {});

// Model spec, missing keys defaulted: {"name": "tfim" | "xy" | "aklt" | "aklt-staggered" | "interpolated", ...}
// at chain length n.
Model build_model(const Json& spec, int n);

PatchPolicy build_patch(const Json& spec);

}  // namespace spinlab::cli
