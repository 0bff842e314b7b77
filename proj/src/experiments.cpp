// Copyright 2026 The gkscp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gkscp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "gkscp/cp_analysis.hpp"
#include "gkscp/documents.hpp"
#include "gkscp/dynamics.hpp"
#include "gkscp/error.hpp"
#include "gkscp/generators.hpp"
#include "gkscp/positivity.hpp"

namespace gkscp {

namespace {

using documents::Json;

constexpr double kShortTime = 1e-3;

std::string generator_text(const ComplexMatrix& kossakowski) {
  return documents::dump(documents::generator_to_json(
      GeneratorSpec(ComplexMatrix::Zero(2, 2), KossakowskiMatrix(kossakowski))));
}

ComplexMatrix diag3(double a, double b, double c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

// The qubit pair of the factorized counterexample. The Kossakowski
// matrices are twice diag(1,1,1) and diag(1,-1,1): with the orthonormal
// basis sigma_i / sqrt(2) this gives the decay rate 4.
const std::map<std::string, std::vector<std::string>, std::less<>>& presets() {
  static const auto* table = [] {
    auto* t = new std::map<std::string, std::vector<std::string>, std::less<>>;
    const std::string c1 = generator_text(diag3(2, 2, 2));
    const std::string c2 = generator_text(diag3(2, -2, 2));
    const std::string base = generator_text(diag3(1, 1, 1));
    const std::string gamma =
        documents::dump(documents::perturbation_to_json({2, diag3(0, -2, 0)}));
    (*t)["paper:C1"] = {c1};
    (*t)["paper:C2"] = {c2};
    (*t)["paper:counterexample"] = {c1, c2};
    (*t)["paper:lemma1"] = {c1, c2};
    (*t)["paper:perturb-base"] = {base};
    (*t)["paper:perturb-gamma"] = {gamma};
    (*t)["paper:perturb"] = {base, gamma};
    return t;
  }();
  return *table;
}

std::vector<std::string> resolve_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> texts;
  for (const auto& in : inputs) {
    if (in.rfind("paper:", 0) == 0) {
      const auto docs = preset_documents(in);
      if (!docs) throw Error(ErrorCode::kInvalidArgument, "unknown preset '" + in + "'");
      texts.insert(texts.end(), docs->begin(), docs->end());
      continue;
    }
    std::ifstream file(in, std::ios::binary);
    if (!file) throw Error(ErrorCode::kIo, "cannot read input document '" + in + "'");
    std::ostringstream ss;
    ss << file.rdbuf();
    texts.push_back(ss.str());
  }
  return texts;
}

void require_inputs(const std::vector<std::string>& texts, std::size_t count,
                    const std::string& command) {
  if (texts.size() != count) {
    std::ostringstream os;
    os << command << ": expected " << count << " input document(s), got " << texts.size();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

GeneratorSpec parse_generator_input(const std::string& text, std::size_t index) {
  try {
    return documents::parse_generator(text);
  } catch (const Error& e) {
    throw Error(e.code(), "input " + std::to_string(index + 1) + ": " + e.what());
  }
}

Json header(const char* kind, const RunConfig& cfg) {
  Json doc;
  doc["version"] = documents::kSchemaVersion;
  doc["kind"] = kind;
  doc["command"] = cfg.command;
  return doc;
}

Json grid_json(const std::vector<double>& grid) { return Json(grid); }

std::vector<double> effective_grid(const RunConfig& cfg) {
  return cfg.grid.empty() ? default_time_grid() : cfg.grid;
}

CommandResult cmd_check_cp(const RunConfig& cfg, const std::vector<std::string>& texts) {
  require_inputs(texts, 1, cfg.command);
  const GeneratorSpec g = parse_generator_input(texts[0], 0);
  const double tol = cfg.tolerance.value_or(kTolerances.positivity);
  const std::vector<double> grid = effective_grid(cfg);
  if (std::none_of(grid.begin(), grid.end(), [](double t) { return t > 0.0; })) {
    throw Error(ErrorCode::kInvalidArgument, "check-cp: the time grid needs a positive time");
  }
  const CpVerdict kv = kossakowski_cp_test(g.kossakowski(), tol);
  const SuperoperatorMatrix generator = superoperator_matrix(g);
  Json choi = Json::array();
  double min_choi = std::numeric_limits<double>::infinity();
  bool choi_cp = true;
  for (double t : grid) {
    if (t <= 0.0) continue;  // gamma_0 is the identity map
    const CpVerdict cv = is_completely_positive(evolution_map(generator, t), tol);
    min_choi = std::min(min_choi, *cv.min_choi_eigenvalue);
    choi_cp = choi_cp && cv.is_cp;
    Json entry;
    entry["t"] = t;
    entry["min_choi_eigenvalue"] = *cv.min_choi_eigenvalue;
    entry["is_cp"] = cv.is_cp;
    choi.push_back(entry);
  }
  Json doc = header("cp-certificate", cfg);
  doc["verdict"] = kv.is_cp ? "cp" : "not-cp";
  doc["min_kossakowski_eigenvalue"] = *kv.min_kossakowski_eigenvalue;
  doc["min_choi_eigenvalue"] = min_choi;
  doc["routes_agree"] = choi_cp == kv.is_cp;
  doc["tolerance"] = tol;
  doc["seed"] = cfg.seed;
  doc["choi"] = choi;
  return {kv.is_cp ? kExitHolds : kExitFails, documents::dump(doc), {}};
}

Json report_json(const PositivityReport& r) {
  Json doc;
  doc["verdict"] = to_string(r.verdict);
  doc["note"] = r.note;
  doc["min_eigenvalue_found"] = r.min_eigenvalue_found;
  doc["witness_time"] = r.witness_time;
  doc["witness_state"] = documents::vector_to_json(r.witness_state);
  doc["samples_used"] = r.samples_used;
  doc["refinement_steps"] = r.refinement_steps;
  doc["seed"] = r.seed;
  Json per_time = Json::array();
  for (const auto& s : r.per_time) {
    Json e;
    e["t"] = s.t;
    e["min_eigenvalue"] = s.min_eigenvalue;
    per_time.push_back(e);
  }
  doc["per_time"] = per_time;
  return doc;
}

CommandResult cmd_tensor_positivity(const RunConfig& cfg, const std::vector<std::string>& texts) {
  require_inputs(texts, 2, cfg.command);
  const GeneratorSpec g1 = parse_generator_input(texts[0], 0);
  const GeneratorSpec g2 = parse_generator_input(texts[1], 1);
  if (g1.dimension() != g2.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "tensor-positivity: generators differ in dimension");
  }
  const double tol = cfg.tolerance.value_or(kTolerances.positivity);
  PositivitySearchOptions opts;
  opts.budget = cfg.budget;
  opts.refinement_steps = cfg.refinement_steps;
  opts.seed = cfg.seed;
  opts.tolerance = tol;
  opts.local_dimension = g1.dimension();
  const Lemma1Condition pair = lemma1_condition(g1.kossakowski(), g2.kossakowski(), tol);
  if (pair.min_eigenvalue < -1e-10) {
    const Lemma1Witness w = lemma1_witness(g1, g2, cfg.seed);
    opts.seed_states.push_back(w.psi_vector / w.psi_vector.norm());
  }
  const std::vector<double> grid = effective_grid(cfg);
  const PositivityReport r = min_output_eigenvalue_over_grid(tensor_sum_generator(g1, g2), grid, opts);
  Json doc = header("positivity-report", cfg);
  const Json body = report_json(r);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  doc["budget"] = cfg.budget;
  doc["tolerance"] = tol;
  doc["grid"] = grid_json(grid);
  Json pc;
  pc["min_eigenvalue"] = pair.min_eigenvalue;
  pc["holds"] = pair.holds;
  pc["witness_seeded"] = !opts.seed_states.empty();
  doc["pair_condition"] = pc;
  const bool violated = r.verdict == PositivityVerdict::kViolationFound;
  return {violated ? kExitFails : kExitHolds, documents::dump(doc), {}};
}

std::string curve_name(double mu, double alpha) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "curve_mu%.3f_alpha%.4f.csv", mu, alpha);
  return buf;
}

Json check_json(double measured, double tolerance, bool passed) {
  Json j;
  j["measured"] = measured;
  j["tolerance"] = tolerance;
  j["passed"] = passed;
  return j;
}

CommandResult cmd_counterexample(const RunConfig& cfg, const std::vector<std::string>& texts) {
  for (const auto& in : cfg.inputs) {
    if (in != "paper:counterexample") {
      throw Error(ErrorCode::kInvalidArgument,
                  "counterexample: takes no documents (optionally the preset paper:counterexample)");
    }
  }
  (void)texts;
  CounterexampleGrid grid = CounterexampleGrid::default_grid();
  if (!cfg.grid.empty()) grid.t = cfg.grid;
  if (!cfg.mu.empty()) grid.mu = cfg.mu;
  if (!cfg.alpha.empty()) grid.alpha = cfg.alpha;
  if (!cfg.varphi.empty()) grid.varphi = cfg.varphi;
  const CounterexampleReport rep = verify_counterexample(grid, cfg.rate);

  Json doc = header("counterexample-report", cfg);
  doc["rate"] = cfg.rate;
  Json g;
  g["mu"] = grid.mu;
  g["alpha"] = grid.alpha;
  g["varphi"] = grid.varphi;
  g["t"] = grid.t;
  doc["grid"] = g;
  doc["points"] = rep.points.size();
  Json checks;
  checks["closed_form_vs_numeric"] =
      check_json(rep.max_state_residual, 1e-9, rep.max_state_residual <= 1e-9);
  checks["eigenvalues_vs_z"] =
      check_json(rep.max_eigenvalue_residual, 1e-9, rep.max_eigenvalue_residual <= 1e-9);
  checks["z_nonnegative"] = check_json(rep.min_z, -1e-12, rep.min_z >= -1e-12);
  checks["state_positive"] =
      check_json(rep.min_state_eigenvalue, -1e-10, rep.min_state_eigenvalue >= -1e-10);
  Json zmin = check_json(rep.z_minimum.value, -1e-12, rep.z_minimum.value >= -1e-12);
  zmin["mu"] = rep.z_minimum.mu;
  zmin["alpha"] = rep.z_minimum.alpha;
  zmin["t"] = rep.z_minimum.t;
  zmin["grid_points"] = rep.z_minimum.grid_points;
  zmin["refined_starts"] = rep.z_minimum.refined_starts;
  checks["z_global_minimum"] = zmin;
  doc["checks"] = checks;
  Json failures = Json::array();
  for (const auto& p : rep.points) {
    if (p.passed) continue;
    Json f;
    f["mu"] = p.mu;
    f["alpha"] = p.alpha;
    f["varphi"] = p.varphi;
    f["t"] = p.t;
    f["state_residual"] = p.state_residual;
    f["eigenvalue_residual"] = p.eigenvalue_residual;
    f["z_minus"] = p.z_minus;
    f["min_state_eigenvalue"] = p.min_state_eigenvalue;
    failures.push_back(f);
  }
  doc["failures"] = failures;
  doc["all_passed"] = rep.all_passed;

  CommandResult result;
  Json curves = Json::array();
  for (double mu : grid.mu) {
    for (double alpha : grid.alpha) {
      std::ostringstream os;
      write_curve_csv(os, counterexample_curve(mu, alpha, grid.varphi.front(), grid.t, cfg.rate));
      result.files.push_back({curve_name(mu, alpha), os.str()});
      curves.push_back(result.files.back().name);
    }
  }
  doc["curves"] = curves;
  result.exit_code = rep.all_passed ? kExitHolds : kExitFails;
  result.document = documents::dump(doc);
  return result;
}

CommandResult cmd_lemma1(const RunConfig& cfg, const std::vector<std::string>& texts) {
  require_inputs(texts, 2, cfg.command);
  const GeneratorSpec g1 = parse_generator_input(texts[0], 0);
  const GeneratorSpec g2 = parse_generator_input(texts[1], 1);
  if (g1.dimension() != g2.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "lemma1: generators differ in dimension");
  }
  const double tol = cfg.tolerance.value_or(kTolerances.positivity);
  const Lemma1Condition cond = lemma1_condition(g1.kossakowski(), g2.kossakowski(), tol);
  Json doc = header("lemma1-report", cfg);
  doc["condition_holds"] = cond.holds;
  doc["min_eigenvalue"] = cond.min_eigenvalue;
  doc["tolerance"] = tol;
  if (cond.min_eigenvalue < -1e-10) {
    const Lemma1Witness w = lemma1_witness(g1, g2, cfg.seed);
    const double g_short = lemma1_overlap_at(g1, g2, w, kShortTime);
    Json wj;
    wj["seed"] = w.seed;
    wj["xi_eigenvalue"] = w.xi_eigenvalue;
    wj["xi"] = documents::vector_to_json(w.xi);
    wj["w"] = documents::matrix_to_json(w.w);
    wj["phi_matrix"] = documents::matrix_to_json(w.phi);
    wj["psi_matrix"] = documents::matrix_to_json(w.psi);
    wj["phi"] = documents::vector_to_json(w.phi_vector);
    wj["psi"] = documents::vector_to_json(w.psi_vector);
    wj["l_value"] = w.l_value;
    wj["xi_form"] = w.xi_form;
    wj["overlap"] = w.overlap;
    wj["factorization_residual"] = w.factorization_residual;
    wj["similarity_residual"] = w.similarity_residual;
    Json st;
    st["t"] = kShortTime;
    st["value"] = g_short;
    st["negative"] = g_short < 0.0;
    wj["short_time"] = st;
    doc["witness"] = wj;
  }
  return {cond.holds ? kExitHolds : kExitFails, documents::dump(doc), {}};
}

CommandResult cmd_perturb(const RunConfig& cfg, const std::vector<std::string>& texts) {
  require_inputs(texts, 2, cfg.command);
  const GeneratorSpec g = parse_generator_input(texts[0], 0);
  documents::Perturbation p;
  try {
    p = documents::parse_perturbation(texts[1]);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("input 2: ") + e.what());
  }
  if (p.n != g.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "perturb: perturbation and generator differ in n");
  }
  const double tol = cfg.tolerance.value_or(kTolerances.positivity);
  const KossakowskiMatrix& c = g.kossakowski();
  const double eps0 = perturbation_cp_interval(c, p.gamma, cfg.eps_max);
  Json doc = header("perturbation-report", cfg);
  doc["eps_max"] = cfg.eps_max;
  doc["eps0"] = eps0;
  doc["base_min_eigenvalue"] = c.min_eigenvalue();
  Json checks = Json::array();
  bool all_cp = true;
  constexpr int kPoints = 11;
  for (int i = 0; i < kPoints; ++i) {
    const double eps = eps0 * i / (kPoints - 1);
    const CpVerdict base = kossakowski_cp_test(c, tol);
    const CpVerdict pert = kossakowski_cp_test(KossakowskiMatrix(c.matrix() + eps * p.gamma), tol);
    Json e;
    e["eps"] = eps;
    e["min_eigenvalue_base"] = *base.min_kossakowski_eigenvalue;
    e["min_eigenvalue_perturbed"] = *pert.min_kossakowski_eigenvalue;
    e["both_cp"] = base.is_cp && pert.is_cp;
    all_cp = all_cp && base.is_cp && pert.is_cp;
    checks.push_back(e);
  }
  doc["checks"] = checks;
  doc["all_cp"] = all_cp;
  return {all_cp ? kExitHolds : kExitFails, documents::dump(doc), {}};
}

CommandResult cmd_kraus(const RunConfig& cfg, const std::vector<std::string>& texts) {
  require_inputs(texts, 1, cfg.command);
  const GeneratorSpec g = parse_generator_input(texts[0], 0);
  if (!(cfg.time >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "kraus: time must be >= 0");
  const double tol = cfg.tolerance.value_or(kTolerances.positivity);
  const SuperoperatorMatrix map = evolution_map(superoperator_matrix(g), cfg.time);
  const CpVerdict v = is_completely_positive(map, tol);
  Json doc = header("kraus-report", cfg);
  doc["t"] = cfg.time;
  doc["min_choi_eigenvalue"] = *v.min_choi_eigenvalue;
  doc["tolerance"] = tol;
  if (!v.is_cp) {
    doc["verdict"] = "not-cp";
    doc["message"] = "no Kraus decomposition: the Choi matrix has a negative eigenvalue";
    return {kExitFails, documents::dump(doc), {}};
  }
  const KrausSet k = kraus_decomposition(choi_matrix(map), tol);
  doc["verdict"] = "cp";
  Json ops = Json::array();
  for (const auto& op : k.operators) ops.push_back(documents::matrix_to_json(op));
  doc["operators"] = ops;
  doc["weights"] = k.weights;
  doc["completeness_residual"] =
      (k.completeness() - identity(g.dimension())).cwiseAbs().maxCoeff();
  doc["reconstruction_residual"] =
      (k.to_superoperator().matrix() - map.matrix()).cwiseAbs().maxCoeff();
  return {kExitHolds, documents::dump(doc), {}};
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [name, docs] : presets()) names.push_back(name);
  return names;
}

std::optional<std::vector<std::string>> preset_documents(std::string_view name) {
  const auto& table = presets();
  const auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::vector<double> parse_grid(std::string_view spec) {
  if (spec == "default") return default_time_grid();
  std::vector<double> grid;
  std::string token;
  std::istringstream in{std::string(spec)};
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    double t = 0.0;
    try {
      t = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() || !(t >= 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "grid: '" + token + "' is not a time >= 0");
    }
    grid.push_back(t);
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "grid: no times given");
  return grid;
}

CommandResult run_command(const RunConfig& cfg) {
  try {
    if (cfg.budget == 0) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");
    const std::vector<std::string> texts =
        cfg.command == "counterexample" ? std::vector<std::string>{} : resolve_inputs(cfg.inputs);
    if (cfg.command == "check-cp") return cmd_check_cp(cfg, texts);
    if (cfg.command == "tensor-positivity") return cmd_tensor_positivity(cfg, texts);
    if (cfg.command == "counterexample") return cmd_counterexample(cfg, texts);
    if (cfg.command == "lemma1") return cmd_lemma1(cfg, texts);
    if (cfg.command == "perturb") return cmd_perturb(cfg, texts);
    if (cfg.command == "kraus") return cmd_kraus(cfg, texts);
    throw Error(ErrorCode::kInvalidArgument, "unknown command '" + cfg.command + "'");
  } catch (const Error& e) {
    Json doc = header("error", cfg);
    doc["message"] = e.what();
    return {kExitInputError, documents::dump(doc), {}};
  }
}

}  // namespace gkscp
