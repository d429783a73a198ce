#include "spinlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "spinlab/core/error.hpp"
#include "spinlab/models/zoo.hpp"

namespace spinlab::cli {

namespace {

Json model_defaults(const std::string& name) {
  if (name == "tfim") return {{"name", name}, {"bc", "open"}, {"lambda_min", 0.0}, {"lambda_max", 10.0}};
  if (name == "xy") return {{"name", name}, {"bc", "open"}, {"anisotropy", 0.5}, {"field", 1.0}};
  if (name == "aklt") return {{"name", name}, {"bc", "open"}};
  if (name == "aklt-staggered") return {{"name", name}, {"bc", "open"}, {"field_max", 0.1}};
  if (name == "interpolated")
    return {{"name", name},
            {"model0", {{"name", "tfim"}}},
            {"lambda0", nullptr},
            {"model1", {{"name", "tfim"}}},
            {"lambda1", nullptr}};
  throw ValidationError("unknown model '" + name + "'");
}

// Overlays `given` onto `defaults`, rejecting keys the defaults do not know.
Json merge_strict(Json defaults, const Json& given, const std::string& where) {
  if (!given.is_object()) throw ValidationError(where + ": expected an object");
  for (const auto& [key, value] : given.items()) {
    if (!defaults.contains(key)) throw ValidationError(where + ": unknown key '" + key + "'");
    defaults[key] = value;
  }
  return defaults;
}

Json materialize_model(const Json& given) {
  Json spec = given.is_null() ? Json::object() : given;
  if (spec.is_object() && !spec.contains("name")) spec["name"] = "tfim";
  if (!spec.is_object() || !spec["name"].is_string())
    throw ValidationError("model: expected an object with a string 'name'");
  Json out = merge_strict(model_defaults(spec["name"].get<std::string>()), spec, "model");
  if (out["name"] == "interpolated") {
    out["model0"] = materialize_model(out["model0"]);
    out["model1"] = materialize_model(out["model1"]);
  }
  return out;
}

const Json kPatch = {{"m", nullptr}, {"delta", nullptr}};

Json subcommand_defaults(const std::string& sub) {
  const Json model = {{"name", "tfim"}};
  if (sub == "gap-scan")
    return {{"model", model}, {"sizes", "6:12:2"}, {"lambda", "0:2:0.1"}, {"patch", kPatch}};
  if (sub == "splitting") return {{"model", model}, {"sizes", "6:12:2"}, {"lambda", 0.5}};
  if (sub == "lr-cone")
    return {{"model", model},      {"n", 12},           {"lambda", 1.0},
            {"a_op", "z"},         {"a_site", 1},       {"b_op", "z"},
            {"distances", "3:8:1"}, {"times", "0.8:1:0.1"}, {"epsilon", nullptr},
            {"sector_path", true}};
  if (sub == "flow")
    return {{"model", model},       {"n", 8},           {"lambda0", 1.2},
            {"lambda1", 2.0},       {"steps", 400},     {"gamma", nullptr},
            {"gamma_fraction", 0.9}, {"enforce_gap", true}, {"use_sectors", true},
            {"patch", kPatch},      {"cocycle", true}};
  if (sub == "flow-identity")
    return {{"model", model}, {"n", 6},          {"lambda", 1.0},      {"gamma", nullptr},
            {"gamma_fraction", 0.9}, {"h", Json::array({1e-2, 5e-3, 2.5e-3})},
            {"patch", kPatch}, {"use_sectors", true}};
  if (sub == "locality")
    return {{"model", model},   {"n", 10},          {"lambda0", 1.3}, {"lambda1", 1.9},
            {"steps", 200},     {"gamma", nullptr}, {"gamma_fraction", 0.9},
            {"op", "z"},        {"center", nullptr}, {"patch", kPatch}};
  if (sub == "decompose")
    return {{"model", model}, {"n", 10},          {"lambda", 1.6},  {"gamma", nullptr},
            {"gamma_fraction", 0.9}, {"center", nullptr}, {"patch", kPatch}};
  if (sub == "symmetry")
    return {{"model", model},
            {"n", 8},
            {"symmetry_op", "z"},
            {"lambdas", "1.2:2:0.2"},
            {"lambda0", 1.2},
            {"lambda1", 2.0},
            {"steps", 100},
            {"gamma", nullptr},
            {"gamma_fraction", 0.9},
            {"perturbation", 0.0},
            {"patch", kPatch}};
  if (sub == "entropy-scan")
    return {{"model", model}, {"n", 12}, {"lambda", 1.0}, {"lengths", nullptr}};
  if (sub == "topo-degeneracy")
    return {{"surfaces", Json::array({"disk:3x3", "torus:2x2", "torus:3x3", "genus:2"})}};
  if (sub == "topo-entropy")
    return {{"lx", 4}, {"ly", 4}, {"cx", 2}, {"cy", 2}, {"radius", 1.5}, {"purify", true}};
  throw ValidationError("unknown subcommand '" + sub + "'");
}

BoundaryCondition parse_bc(const Json& v) {
  const auto s = v.get<std::string>();
  if (s == "open") return BoundaryCondition::open;
  if (s == "periodic") return BoundaryCondition::periodic;
  throw ValidationError("model: bc must be 'open' or 'periodic'");
}

double parse_number(const std::string& text, const char* what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ValidationError(std::string(what) + ": cannot parse '" + text + "'");
  return v;
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {
      "gap-scan", "splitting", "lr-cone",      "flow",           "flow-identity", "locality",
      "decompose", "symmetry", "entropy-scan", "topo-degeneracy", "topo-entropy"};
  return names;
}

std::vector<double> parse_real_grid(const Json& spec, const char* what) {
  if (spec.is_number()) return {spec.get<double>()};
  if (spec.is_array()) {
    std::vector<double> out;
    for (const auto& v : spec) {
      if (!v.is_number()) throw ValidationError(std::string(what) + ": non-numeric entry");
      out.push_back(v.get<double>());
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty grid");
    return out;
  }
  if (!spec.is_string()) throw ValidationError(std::string(what) + ": expected a grid");
  const auto text = spec.get<std::string>();
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {parse_number(parts[0], what)};
  if (parts.size() != 3) throw ValidationError(std::string(what) + ": grid must be start:stop:step");
  const double start = parse_number(parts[0], what);
  const double stop = parse_number(parts[1], what);
  const double step = parse_number(parts[2], what);
  if (!(step > 0.0) || stop < start)
    throw ValidationError(std::string(what) + ": need step > 0 and stop >= start");
  const double span = (stop - start) / step;
  const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  if (count > 1000000) throw ValidationError(std::string(what) + ": grid too large");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

std::vector<int> parse_int_grid(const Json& spec, const char* what) {
  std::vector<int> out;
  for (double v : parse_real_grid(spec, what)) {
    if (v != std::round(v)) throw ValidationError(std::string(what) + ": expected integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

void apply_override(Json& document, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("override '" + assignment + "': expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value = Json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  Json* node = &document;
  std::stringstream ss(key);
  std::vector<std::string> path;
  for (std::string p; std::getline(ss, p, '.');) path.push_back(p);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!node->is_object()) throw ValidationError("override '" + key + "': not an object path");
    node = &(*node)[path[i]];
    if (node->is_null()) *node = Json::object();
  }
  if (!node->is_object()) throw ValidationError("override '" + key + "': not an object path");
  (*node)[path.back()] = std::move(value);
}

JobConfig make_job(const std::string& subcommand, Json document,
                   const std::vector<std::string>& overrides) {
  if (std::ranges::find(subcommands(), subcommand) == subcommands().end())
    throw ValidationError("unknown subcommand '" + subcommand + "'");
  if (document.is_null()) document = Json::object();
  if (!document.is_object()) throw ValidationError("config: expected a JSON object");
  // A config may name its subcommand; it must then match the invocation.
  if (document.contains("subcommand")) {
    if (document["subcommand"] != subcommand)
      throw ValidationError("config: written for subcommand '" +
                            document["subcommand"].dump() + "', invoked as '" + subcommand + "'");
    document.erase("subcommand");
  }
  for (const auto& o : overrides) apply_override(document, o);

  Json merged = merge_strict(subcommand_defaults(subcommand), document, "config");
  if (merged.contains("model")) merged["model"] = materialize_model(merged["model"]);
  if (merged.contains("patch")) merged["patch"] = merge_strict(kPatch, merged["patch"], "patch");

  Json full = {{"subcommand", subcommand}};
  for (const auto& [k, v] : merged.items()) full[k] = v;
  return {subcommand, std::move(full)};
}

Model build_model(const Json& given, int n) {
  const Json spec = materialize_model(given);
  const auto name = spec.at("name").get<std::string>();
  if (name == "tfim")
    return tfim(n, parse_bc(spec.at("bc")), spec.at("lambda_min").get<double>(),
                spec.at("lambda_max").get<double>());
  if (name == "xy")
    return xy_chain(n, spec.at("anisotropy").get<double>(), spec.at("field").get<double>(),
                    parse_bc(spec.at("bc")));
  if (name == "aklt") return aklt(n, parse_bc(spec.at("bc")));
  if (name == "aklt-staggered")
    return aklt_staggered_field(n, spec.at("field_max").get<double>(), parse_bc(spec.at("bc")));
  if (name == "interpolated") {
    const Model m0 = build_model(spec.at("model0"), n);
    const Model m1 = build_model(spec.at("model1"), n);
    const double l0 = spec.at("lambda0").is_null() ? m0.default_lambda : spec["lambda0"].get<double>();
    const double l1 = spec.at("lambda1").is_null() ? m1.default_lambda : spec["lambda1"].get<double>();
    return interpolate(m0, l0, m1, l1);
  }
  throw ValidationError("unknown model '" + name + "'");
}

PatchPolicy build_patch(const Json& spec) {
  PatchPolicy p;
  if (!spec.at("m").is_null()) {
    const long m = spec["m"].get<long>();
    if (m < 1) throw ValidationError("patch.m must be positive");
    p.m = static_cast<std::size_t>(m);
  }
  if (!spec.at("delta").is_null()) p.delta = spec["delta"].get<double>();
  return p;
}

}  // namespace spinlab::cli
