#include "spinlab/cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "spinlab/core/error.hpp"
#include "spinlab/core/linalg.hpp"
#include "spinlab/core/operators.hpp"
#include "spinlab/dynamics/lieb_robinson.hpp"
#include "spinlab/flow/filter.hpp"
#include "spinlab/flow/generator.hpp"
#include "spinlab/flow/locality.hpp"
#include "spinlab/flow/transport.hpp"
#include "spinlab/models/zoo.hpp"
#include "spinlab/spectral/entropy.hpp"
#include "spinlab/spectral/scan.hpp"
#include "spinlab/stabilizer/stabilizer.hpp"

namespace spinlab::cli {

namespace {

using Cells = std::vector<Cell>;

long long as_ll(std::size_t v) { return static_cast<long long>(v); }

int get_int(const Json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string(key) + ": expected an integer");
  return v.get<int>();
}

// Pauli operators on spin-1/2 sites and spin-1 matrices on spin-1 sites.
ComplexMatrix site_operator(const std::string& name, int dim) {
  if (dim == 2) {
    if (name == "x") return ops::pauli_x();
    if (name == "y") return ops::pauli_y();
    if (name == "z") return ops::pauli_z();
  } else if (dim == 3) {
    if (name == "x") return ops::spin1_x();
    if (name == "y") return ops::spin1_y();
    if (name == "z") return ops::spin1_z();
  }
  throw ValidationError("unknown site operator '" + name + "' for local dimension " +
                        std::to_string(dim));
}

int middle_site(const Model& m) {
  const auto sites = m.geometry.sites();
  return sites[(sites.size() - 1) / 2];
}

int center_of(const Json& doc, const Model& m) {
  if (doc.at("center").is_null()) return middle_site(m);
  const int c = get_int(doc, "center");
  if (!m.geometry.contains(c)) throw ValidationError("center: not a site of the lattice");
  return c;
}

// Explicit gamma, or gamma_fraction times the patch gap at lambda.
double resolve_gamma(const Json& doc, const Model& model, double lambda, const PatchPolicy& patch) {
  if (!doc.at("gamma").is_null()) {
    const double g = doc["gamma"].get<double>();
    if (!(g > 0.0)) throw ValidationError("gamma must be positive");
    return g;
  }
  const double fraction = doc.at("gamma_fraction").get<double>();
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ValidationError("gamma_fraction must lie in (0, 1]");
  return fraction * model_ground_data(model, lambda, patch).patch_gap;
}

FlowOptions flow_options(const Json& doc) {
  FlowOptions o;
  const int steps = get_int(doc, "steps");
  if (steps < 1) throw ValidationError("steps must be positive");
  o.steps = static_cast<std::size_t>(steps);
  o.patch = build_patch(doc.at("patch"));
  if (!doc.at("gamma").is_null()) o.gamma = doc["gamma"].get<double>();
  o.gamma_fraction = doc.at("gamma_fraction").get<double>();
  if (doc.contains("enforce_gap")) o.enforce_gap = doc["enforce_gap"].get<bool>();
  if (doc.contains("use_sectors")) o.use_sectors = doc["use_sectors"].get<bool>();
  return o;
}

Json flow_json(const FlowUnitary& f) {
  return {{"lambda0", f.lambda0},
          {"lambda1", f.lambda1},
          {"steps", f.steps},
          {"gamma", f.gamma},
          {"m", f.m},
          {"min_patch_gap", f.min_patch_gap},
          {"lambda_at_min", f.lambda_at_min},
          {"integrator", f.integrator}};
}

RunOutput gap_scan_cmd(const Json& doc) {
  const Json spec = doc.at("model");
  const auto sizes = parse_int_grid(doc.at("sizes"), "sizes");
  const auto lambdas = parse_real_grid(doc.at("lambda"), "lambda");
  const auto rows = gap_scan([&](int n) { return build_model(spec, n); }, sizes, lambdas,
                             build_patch(doc.at("patch")));
  ResultTable t{"gap_scan", {"model", "N", "lambda", "e0", "gap", "m", "split", "patch_gap"}, {}};
  Json failures = Json::array();
  for (const auto& r : rows) {
    t.rows.push_back(Cells{r.model, static_cast<long long>(r.n), r.lambda, r.e0, r.gap, as_ll(r.m),
                           r.split, r.patch_gap});
    if (!r.ok()) failures.push_back({{"N", r.n}, {"lambda", r.lambda}, {"error", r.error}});
  }
  return {{t}, {{"rows", rows.size()}, {"failures", failures}}};
}

RunOutput splitting_cmd(const Json& doc) {
  const Json spec = doc.at("model");
  const auto sizes = parse_int_grid(doc.at("sizes"), "sizes");
  const double lambda = doc.at("lambda").get<double>();
  const auto rows = degeneracy_splitting([&](int n) { return build_model(spec, n); }, lambda, sizes);
  ResultTable t{"splitting", {"N", "e1_minus_e0", "e2_minus_e0"}, {}};
  Json ratios = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    t.rows.push_back(Cells{static_cast<long long>(rows[i].n), rows[i].e1_minus_e0, rows[i].e2_minus_e0});
    if (i > 0) ratios.push_back(rows[i - 1].e1_minus_e0 / rows[i].e1_minus_e0);
  }
  return {{t}, {{"lambda", lambda}, {"shrink_ratios", ratios}}};
}

RunOutput lr_cone_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double lambda = doc.at("lambda").get<double>();
  const int a_site = get_int(doc, "a_site");
  model.geometry.require_subset(std::vector<int>{a_site}, "lr-cone a_site");
  const int dim = model.geometry.local_dim(a_site);
  const LocalOperator a{{a_site}, site_operator(doc.at("a_op").get<std::string>(), dim)};
  const LocalOperator b{{model.geometry.sites().front()},
                        site_operator(doc.at("b_op").get<std::string>(), dim)};
  LRScanOptions opts;
  opts.allow_sector_path = doc.at("sector_path").get<bool>();
  const auto scan = lr_commutator_scan(model, lambda, a, b, parse_int_grid(doc.at("distances"), "distances"),
                                       parse_real_grid(doc.at("times"), "times"), opts);
  ResultTable t{"lr_cone", {"d", "t", "c"}, {}};
  for (const auto& s : scan.samples) t.rows.push_back(Cells{static_cast<long long>(s.d), s.t, s.c});
  std::optional<double> eps;
  if (!doc.at("epsilon").is_null()) eps = doc["epsilon"].get<double>();
  const LRFit fit = lr_fit(scan.samples, scan.norm_bound, eps);
  Json rec = {{"v", fit.v},
              {"mu", fit.mu},
              {"c0", fit.c0},
              {"residual", fit.residual},
              {"epsilon", fit.epsilon},
              {"used", fit.used},
              {"v_arrival", std::isnan(fit.v_arrival) ? Json(nullptr) : Json(fit.v_arrival)},
              {"resolved", fit.resolved},
              {"norm_bound", scan.norm_bound},
              {"sector_path", scan.sector_path}};
  return {{t}, rec};
}

RunOutput flow_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double l0 = doc.at("lambda0").get<double>();
  const double l1 = doc.at("lambda1").get<double>();
  FlowOptions opts = flow_options(doc);
  const FlowUnitary v = integrate_flow(model, l0, l1, opts);
  const auto fixed = PatchPolicy::explicit_size(v.m);
  const GroundData p0 = model_ground_data(model, l0, fixed);
  const GroundData p1 = model_ground_data(model, l1, fixed);
  Json rec = flow_json(v);
  rec["transport_residual"] = transport_check(v, p0, p1);
  rec["unitarity_residual"] = unitarity_residual(v);
  rec["cocycle_residual"] = nullptr;
  if (doc.at("cocycle").get<bool>()) {
    if (opts.steps % 2 != 0) throw ValidationError("cocycle check needs an even step count");
    // Both halves reuse the full-path gamma and half the steps, so their
    // grids coincide with the full run.
    const double mid = 0.5 * (l0 + l1);
    opts.gamma = v.gamma;
    opts.steps /= 2;
    const FlowUnitary first = integrate_flow(model, l0, mid, opts);
    const FlowUnitary second = integrate_flow(model, mid, l1, opts);
    rec["cocycle_residual"] = spectral_norm(second.v * first.v - v.v);
  }
  return {{}, rec};
}

RunOutput flow_identity_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double lambda = doc.at("lambda").get<double>();
  const PatchPolicy patch = build_patch(doc.at("patch"));
  const double gamma = resolve_gamma(doc, model, lambda, patch);
  const auto hs = parse_real_grid(doc.at("h"), "h");
  ResultTable t{"flow_identity", {"h", "residual"}, {}};
  Json orders = Json::array();
  double previous = 0.0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double r = derivative_identity_check(model, lambda, gamma, hs[i], patch,
                                               doc.at("use_sectors").get<bool>());
    t.rows.push_back(Cells{hs[i], r});
    if (i > 0) orders.push_back(std::log(previous / r) / std::log(hs[i - 1] / hs[i]));
    previous = r;
  }
  return {{t}, {{"lambda", lambda}, {"gamma", gamma}, {"observed_orders", orders}}};
}

RunOutput locality_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const FlowUnitary v =
      integrate_flow(model, doc.at("lambda0").get<double>(), doc.at("lambda1").get<double>(),
                     flow_options(doc));
  const int center = center_of(doc, model);
  const LocalOperator a{{center}, site_operator(doc.at("op").get<std::string>(),
                                                model.geometry.local_dim(center))};
  const auto profile =
      locality_profile(apply_automorphism(v, embed(a, model.geometry)), center, model.geometry);
  ResultTable t{"locality", {"r", "delta"}, {}};
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    t.rows.push_back(Cells{static_cast<long long>(profile.radii[i]), profile.deltas[i]});
  Json rec = flow_json(v);
  rec["center"] = center;
  rec["decay_rate"] = std::isnan(profile.decay_rate) ? Json(nullptr) : Json(profile.decay_rate);
  return {{t}, rec};
}

RunOutput decompose_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double lambda = doc.at("lambda").get<double>();
  const double gamma = resolve_gamma(doc, model, lambda, build_patch(doc.at("patch")));
  const int center = center_of(doc, model);
  // The full D is a sum over the lattice; its shells around one site do not
  // decay. The piece sourced by the terms anchored at the center does.
  const auto gen = anchored_generator(model, lambda, FilterFunction(gamma), center);
  const auto dec = decompose_generator(gen.d, center, model.geometry);
  ResultTable t{"decompose", {"r", "norm"}, {}};
  for (std::size_t i = 0; i < dec.radii.size(); ++i)
    t.rows.push_back(Cells{static_cast<long long>(dec.radii[i]), dec.norms[i]});
  return {{t},
          {{"lambda", lambda},
           {"gamma", gamma},
           {"center", center},
           {"reconstruction_error", dec.reconstruction_error}}};
}

RunOutput symmetry_cmd(const Json& doc) {
  Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double eps = doc.at("perturbation").get<double>();
  if (eps != 0.0) {
    // Uniform x field: breaks the spin-flip symmetry generated by prod z.
    std::vector<InteractionTerm> extra;
    for (int s : model.geometry.sites())
      extra.push_back(constant_term({s}, eps * site_operator("x", model.geometry.local_dim(s)), "break"));
    model = with_terms(model, std::move(extra), model.name + "+x-field");
  }
  const int dim = model.geometry.local_dims().front();
  const auto pi = SymmetryAction::uniform(model.geometry,
                                          site_operator(doc.at("symmetry_op").get<std::string>(), dim));
  const auto lambdas = parse_real_grid(doc.at("lambdas"), "lambdas");
  const PatchPolicy patch = build_patch(doc.at("patch"));
  ResultTable t{"symmetry", {"lambda", "gamma", "commutator"}, {}};
  double worst = 0.0;
  for (double l : lambdas) {
    const double gamma = resolve_gamma(doc, model, l, patch);
    const auto gen = flow_generator(model, l, FilterFunction(gamma), false);
    const double c = symmetry_commutation(gen.d, pi, model.geometry);
    worst = std::max(worst, c);
    t.rows.push_back(Cells{l, gamma, c});
  }
  FlowOptions opts = flow_options(doc);
  opts.use_sectors = false;
  const FlowUnitary v =
      integrate_flow(model, doc.at("lambda0").get<double>(), doc.at("lambda1").get<double>(), opts);
  Json rec = flow_json(v);
  rec["model_defect"] = verify_symmetry(model, pi, lambdas);
  rec["max_generator_commutator"] = worst;
  rec["unitary_commutator"] = symmetry_commutation(v.v, pi, model.geometry);
  return {{t}, rec};
}

RunOutput entropy_scan_cmd(const Json& doc) {
  const Model model = build_model(doc.at("model"), get_int(doc, "n"));
  const double lambda = doc.at("lambda").get<double>();
  std::vector<int> lengths;
  if (!doc.at("lengths").is_null()) lengths = parse_int_grid(doc["lengths"], "lengths");
  const auto rows = area_law_scan(model, lambda, std::nullopt, lengths);
  ResultTable t{"entropy_scan", {"l", "entropy"}, {}};
  double lo = rows.empty() ? 0.0 : rows.front().entropy;
  double hi = lo;
  for (const auto& r : rows) {
    t.rows.push_back(Cells{static_cast<long long>(r.length), r.entropy});
    lo = std::min(lo, r.entropy);
    hi = std::max(hi, r.entropy);
  }
  return {{t}, {{"lambda", lambda}, {"entropy_range", hi - lo}}};
}

std::pair<int, int> parse_dims(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw ValidationError("surface size '" + text + "': expected LxxLy");
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw ValidationError("surface size '" + text + "': expected LxxLy");
  }
}

CellComplex build_surface(const Json& spec) {
  if (spec.is_object()) {
    if (!spec.contains("file")) throw ValidationError("surface object needs a 'file' key");
    const auto path = spec["file"].get<std::string>();
    std::ifstream f(path);
    if (!f) throw ValidationError("cannot read surface file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return load_cell_complex(buf.str());
  }
  const auto text = spec.get<std::string>();
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() >= 2 && parts[0] == "torus" && parts.size() == 2) {
    const auto [lx, ly] = parse_dims(parts[1]);
    return torus(lx, ly);
  }
  if (parts.size() >= 2 && (parts[0] == "planar" || parts[0] == "disk") && parts.size() <= 3) {
    const auto [lx, ly] = parse_dims(parts[1]);
    PlanarBoundary b = PlanarBoundary::smooth;
    if (parts.size() == 3) {
      if (parts[2] == "mixed") b = PlanarBoundary::mixed;
      else if (parts[2] != "smooth") throw ValidationError("planar boundary must be smooth or mixed");
    }
    return planar(lx, ly, b);
  }
  if (parts.size() >= 2 && parts[0] == "genus" && parts.size() <= 3) {
    try {
      return genus_surface(std::stoi(parts[1]), parts.size() == 3 ? std::stoi(parts[2]) : 2);
    } catch (const std::invalid_argument&) {
      throw ValidationError("surface '" + text + "': bad genus spec");
    }
  }
  throw ValidationError("unknown surface '" + text + "'");
}

RunOutput topo_degeneracy_cmd(const Json& doc) {
  const auto& specs = doc.at("surfaces");
  if (!specs.is_array() || specs.empty()) throw ValidationError("surfaces: expected a nonempty list");
  ResultTable t{"topo_degeneracy", {"surface", "V", "E", "F", "genus", "rank", "degeneracy"}, {}};
  Json records = Json::array();
  for (const auto& s : specs) {
    const CellComplex c = build_surface(s);
    const auto group = toric_code_stabilizers(c);
    const auto deg = ground_degeneracy(group);
    t.rows.push_back(Cells{c.name(), as_ll(c.n_vertices()), as_ll(c.n_edges()), as_ll(c.n_faces()),
                           static_cast<long long>(c.genus()), as_ll(group.rank()),
                           static_cast<long long>(deg)});
    records.push_back({{"surface", c.name()},
                       {"qubits", group.n_qubits()},
                       {"genus", c.genus()},
                       {"boundary_components", c.boundary_components()},
                       {"rank", group.rank()},
                       {"degeneracy", deg}});
  }
  Json rec = {{"surfaces", records}};
  if (records.size() == 1) rec["degeneracy"] = records[0]["degeneracy"];
  return {{t}, rec};
}

RunOutput topo_entropy_cmd(const Json& doc) {
  const int lx = get_int(doc, "lx");
  const int ly = get_int(doc, "ly");
  const CellComplex c = torus(lx, ly);
  StabilizerGroup group = toric_code_stabilizers(c);
  if (doc.at("purify").get<bool>()) group = purify(group);
  const auto part = disk_tripartition(lx, ly, get_int(doc, "cx"), get_int(doc, "cy"),
                                      doc.at("radius").get<double>());
  const double gamma = topological_entropy(group, part.a, part.b, part.c);
  const std::size_t n = group.n_qubits();
  const double product = topological_entropy(product_state_group(n), part.a, part.b, part.c);
  const double bell = topological_entropy(bell_chain_group(n / 2), part.a, part.b, part.c);
  ResultTable t{"topo_entropy", {"state", "gamma", "gamma_over_ln2"}, {}};
  t.rows.push_back(Cells{std::string("toric"), gamma, gamma / std::numbers::ln2});
  t.rows.push_back(Cells{std::string("product"), product, product / std::numbers::ln2});
  t.rows.push_back(Cells{std::string("bell-chain"), bell, bell / std::numbers::ln2});
  return {{t},
          {{"surface", c.name()},
           {"region_sizes", {part.a.size(), part.b.size(), part.c.size()}},
           {"gamma", gamma},
           {"gamma_over_ln2", gamma / std::numbers::ln2},
           {"controls", {{"product", product}, {"bell_chain", bell}}}}};
}

const char* describe(const std::string& sub) {
  if (sub == "gap-scan") return "Ground energy, gap and patch over sizes and couplings";
  if (sub == "splitting") return "Finite-size splitting E1-E0 and E2-E0 at one coupling";
  if (sub == "lr-cone") return "Commutator light cone ||[A, tau_t(B)]|| and its fit";
  if (sub == "flow") return "Spectral flow unitary: transport, unitarity and cocycle residuals";
  if (sub == "flow-identity") return "Finite-difference check of P' = i[D, P]";
  if (sub == "locality") return "Shell profile of the flowed local observable";
  if (sub == "decompose") return "Shell decomposition of the anchored flow generator";
  if (sub == "symmetry") return "Commutators of the generator and the flow with a global symmetry";
  if (sub == "entropy-scan") return "Block entanglement entropies of the ground state";
  if (sub == "topo-degeneracy") return "Toric-code ground degeneracy on surfaces";
  if (sub == "topo-entropy") return "Kitaev-Preskill topological entropy with controls";
  return "";
}

Json error_record(const char* kind, const std::exception& e, int code) {
  Json rec = {{"kind", kind}, {"message", e.what()}, {"exit_code", code}};
  if (const auto* g = dynamic_cast<const GapClosedError*>(&e)) {
    rec["error"] = "gap closed along path";
    rec["lambda"] = g->lambda;
    rec["patch_gap"] = g->patch_gap;
    rec["gamma"] = g->gamma;
  } else if (const auto* p = dynamic_cast<const PatchNotIsolatedError*>(&e)) {
    rec["error"] = "patch not isolated";
    rec["spectrum_head"] = p->spectrum_head;
  } else {
    rec["error"] = std::string(kind) + " error";
  }
  return rec;
}

}  // namespace

RunOutput execute(const JobConfig& job) {
  const Json& d = job.document;
  const std::string& s = job.subcommand;
  if (s == "gap-scan") return gap_scan_cmd(d);
  if (s == "splitting") return splitting_cmd(d);
  if (s == "lr-cone") return lr_cone_cmd(d);
  if (s == "flow") return flow_cmd(d);
  if (s == "flow-identity") return flow_identity_cmd(d);
  if (s == "locality") return locality_cmd(d);
  if (s == "decompose") return decompose_cmd(d);
  if (s == "symmetry") return symmetry_cmd(d);
  if (s == "entropy-scan") return entropy_scan_cmd(d);
  if (s == "topo-degeneracy") return topo_degeneracy_cmd(d);
  if (s == "topo-entropy") return topo_entropy_cmd(d);
  throw ValidationError("unknown subcommand '" + s + "'");
}

int run(const JobConfig& job, const std::optional<std::filesystem::path>& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  Json error;
  int code = kSuccess;
  try {
    const RunOutput out = execute(job);
    if (out_dir) {
      write_outputs(*out_dir, job, out, elapsed());
    } else {
      for (const auto& t : out.tables) std::cout << render_csv(t, job) << '\n';
      std::cout << out.record.dump(2) << '\n';
    }
    return kSuccess;
  } catch (const NumericalError& e) {
    code = kNumerical;
    error = error_record("numerical", e, code);
  } catch (const ValidationError& e) {
    code = kValidation;
    error = error_record("validation", e, code);
  } catch (const nlohmann::json::exception& e) {
    code = kValidation;
    error = error_record("validation", e, code);
  }
  std::cerr << error.dump() << '\n';
  if (out_dir) write_error(*out_dir, job, error, elapsed());
  return code;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Finite-size laboratory for gapped quantum spin systems"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool echo_only = false;
  for (const auto& name : subcommands()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--config", config_path, "JSON job config (missing keys take defaults)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory; results go to stdout when omitted");
    sub->add_option("--override", overrides, "key=value, dotted keys; applied after the config");
    sub->add_flag("--print-config", echo_only, "Print the fully materialised config and exit");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  JobConfig job{sub, Json::object()};
  try {
    Json doc = Json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      doc = Json::parse(f);
    }
    job = make_job(sub, std::move(doc), overrides);
  } catch (const std::exception& e) {
    const Json rec = error_record("validation", e, kValidation);
    std::cerr << rec.dump() << '\n';
    if (!out_dir.empty()) write_error(out_dir, job, rec, 0.0);
    return kValidation;
  }
  if (echo_only) {
    std::cout << job.document.dump(2) << '\n';
    return kSuccess;
  }
  return run(job, out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir));
}

}  // namespace spinlab::cli
