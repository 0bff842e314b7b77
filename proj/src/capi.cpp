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

#include "gkscp/gkscp.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "gkscp/cp_analysis.hpp"
#include "gkscp/documents.hpp"
#include "gkscp/dynamics.hpp"
#include "gkscp/error.hpp"
#include "gkscp/experiments.hpp"
#include "gkscp/generators.hpp"
#include "gkscp/positivity.hpp"

struct gkscp_generator {
  gkscp::GeneratorSpec spec;
};

struct gkscp_superop {
  gkscp::SuperoperatorMatrix matrix;
};

struct gkscp_result {
  gkscp::CommandResult result;
};

namespace {

thread_local std::string last_error;

gkscp_status to_status(gkscp::ErrorCode code) {
  using gkscp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return GKSCP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return GKSCP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNotHermitian: return GKSCP_ERR_NOT_HERMITIAN;
    case ErrorCode::kPrecondition: return GKSCP_ERR_PRECONDITION;
    case ErrorCode::kParse: return GKSCP_ERR_PARSE;
    case ErrorCode::kNumerical: return GKSCP_ERR_NUMERICAL;
    case ErrorCode::kIo: return GKSCP_ERR_IO;
  }
  return GKSCP_ERR_INTERNAL;
}

template <typename F>
gkscp_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return GKSCP_OK;
  } catch (const gkscp::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GKSCP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GKSCP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw gkscp::Error(gkscp::ErrorCode::kInvalidArgument, what);
}

gkscp::ComplexMatrix read_matrix(const double* data, gkscp::Index rows, gkscp::Index cols) {
  gkscp::ComplexMatrix m(rows, cols);
  for (gkscp::Index i = 0; i < rows; ++i)
    for (gkscp::Index j = 0; j < cols; ++j)
      m(i, j) = {data[2 * (i * cols + j)], data[2 * (i * cols + j) + 1]};
  return m;
}

void write_matrix(const gkscp::ComplexMatrix& m, double* out) {
  for (gkscp::Index i = 0; i < m.rows(); ++i) {
    for (gkscp::Index j = 0; j < m.cols(); ++j) {
      out[2 * (i * m.cols() + j)] = m(i, j).real();
      out[2 * (i * m.cols() + j) + 1] = m(i, j).imag();
    }
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* gkscp_version(void) { return "1.0.0"; }

const char* gkscp_status_string(gkscp_status status) {
  switch (status) {
    case GKSCP_OK: return "ok";
    case GKSCP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GKSCP_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case GKSCP_ERR_NOT_HERMITIAN: return "not Hermitian";
    case GKSCP_ERR_PRECONDITION: return "precondition violated";
    case GKSCP_ERR_PARSE: return "parse error";
    case GKSCP_ERR_NUMERICAL: return "numerical failure";
    case GKSCP_ERR_IO: return "i/o error";
    case GKSCP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gkscp_last_error(void) { return last_error.c_str(); }

void gkscp_string_free(char* s) { delete[] s; }

gkscp_status gkscp_generator_create(size_t n, const double* hamiltonian,
                                    const double* kossakowski, gkscp_generator** out) {
  return guarded([&] {
    require(out != nullptr && kossakowski != nullptr, "gkscp_generator_create: null argument");
    require(n >= 2, "gkscp_generator_create: n must be >= 2");
    const auto dim = static_cast<gkscp::Index>(n);
    const gkscp::ComplexMatrix h = hamiltonian ? read_matrix(hamiltonian, dim, dim)
                                               : gkscp::ComplexMatrix::Zero(dim, dim);
    const gkscp::ComplexMatrix c = read_matrix(kossakowski, dim * dim - 1, dim * dim - 1);
    *out = new gkscp_generator{gkscp::GeneratorSpec(h, gkscp::KossakowskiMatrix(c))};
  });
}

gkscp_status gkscp_generator_parse(const char* document, gkscp_generator** out) {
  return guarded([&] {
    require(out != nullptr && document != nullptr, "gkscp_generator_parse: null argument");
    *out = new gkscp_generator{gkscp::documents::parse_generator(document)};
  });
}

gkscp_status gkscp_generator_preset(const char* name, gkscp_generator** out) {
  return guarded([&] {
    require(out != nullptr && name != nullptr, "gkscp_generator_preset: null argument");
    const auto docs = gkscp::preset_documents(name);
    if (!docs) {
      throw gkscp::Error(gkscp::ErrorCode::kInvalidArgument,
                         std::string("unknown preset '") + name + "'");
    }
    if (docs->size() != 1) {
      throw gkscp::Error(gkscp::ErrorCode::kInvalidArgument,
                         std::string("preset '") + name + "' is not a single generator");
    }
    *out = new gkscp_generator{gkscp::documents::parse_generator(docs->front())};
  });
}

gkscp_status gkscp_generator_to_document(const gkscp_generator* g, char** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "gkscp_generator_to_document: null argument");
    *out = copy_string(gkscp::documents::dump(gkscp::documents::generator_to_json(g->spec)));
  });
}

size_t gkscp_generator_dimension(const gkscp_generator* g) {
  return g ? static_cast<size_t>(g->spec.dimension()) : 0;
}

gkscp_status gkscp_generator_kossakowski(const gkscp_generator* g, double* out, size_t capacity) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "gkscp_generator_kossakowski: null argument");
    const auto& c = g->spec.kossakowski().matrix();
    require(capacity >= static_cast<size_t>(2 * c.size()), "gkscp_generator_kossakowski: buffer too small");
    write_matrix(c, out);
  });
}

void gkscp_generator_free(gkscp_generator* g) { delete g; }

gkscp_status gkscp_generator_superoperator(const gkscp_generator* g, gkscp_superop** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "gkscp_generator_superoperator: null argument");
    *out = new gkscp_superop{gkscp::superoperator_matrix(g->spec)};
  });
}

gkscp_status gkscp_tensor_sum_generator(const gkscp_generator* g1, const gkscp_generator* g2,
                                        gkscp_superop** out) {
  return guarded([&] {
    require(g1 != nullptr && g2 != nullptr && out != nullptr,
            "gkscp_tensor_sum_generator: null argument");
    *out = new gkscp_superop{gkscp::tensor_sum_generator(g1->spec, g2->spec)};
  });
}

gkscp_status gkscp_evolution_map(const gkscp_superop* generator, double t, gkscp_superop** out) {
  return guarded([&] {
    require(generator != nullptr && out != nullptr, "gkscp_evolution_map: null argument");
    *out = new gkscp_superop{gkscp::evolution_map(generator->matrix, t)};
  });
}

size_t gkscp_superop_dimension(const gkscp_superop* s) {
  return s ? static_cast<size_t>(s->matrix.dimension()) : 0;
}

gkscp_status gkscp_superop_entries(const gkscp_superop* s, double* out, size_t capacity) {
  return guarded([&] {
    require(s != nullptr && out != nullptr, "gkscp_superop_entries: null argument");
    const auto& m = s->matrix.matrix();
    require(capacity >= static_cast<size_t>(2 * m.size()), "gkscp_superop_entries: buffer too small");
    write_matrix(m, out);
  });
}

gkscp_status gkscp_superop_apply(const gkscp_superop* s, const double* x, double* y) {
  return guarded([&] {
    require(s != nullptr && x != nullptr && y != nullptr, "gkscp_superop_apply: null argument");
    const gkscp::Index n = s->matrix.dimension();
    write_matrix(s->matrix.apply(read_matrix(x, n, n)), y);
  });
}

void gkscp_superop_free(gkscp_superop* s) { delete s; }

gkscp_status gkscp_is_completely_positive(const gkscp_superop* map, double tol,
                                          gkscp_verdict* out) {
  return guarded([&] {
    require(map != nullptr && out != nullptr, "gkscp_is_completely_positive: null argument");
    const auto v = gkscp::is_completely_positive(map->matrix, tol);
    *out = {v.is_cp ? 1 : 0, *v.min_choi_eigenvalue, v.tolerance};
  });
}

gkscp_status gkscp_kossakowski_cp_test(const gkscp_generator* g, double tol, gkscp_verdict* out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "gkscp_kossakowski_cp_test: null argument");
    const auto v = gkscp::kossakowski_cp_test(g->spec.kossakowski(), tol);
    *out = {v.is_cp ? 1 : 0, *v.min_kossakowski_eigenvalue, v.tolerance};
  });
}

gkscp_status gkscp_lemma1_condition(const gkscp_generator* g1, const gkscp_generator* g2,
                                    double tol, gkscp_verdict* out) {
  return guarded([&] {
    require(g1 != nullptr && g2 != nullptr && out != nullptr, "gkscp_lemma1_condition: null argument");
    const auto c = gkscp::lemma1_condition(g1->spec.kossakowski(), g2->spec.kossakowski(), tol);
    *out = {c.holds ? 1 : 0, c.min_eigenvalue, tol};
  });
}

gkscp_status gkscp_perturbation_cp_interval(size_t dim, const double* c, const double* gamma,
                                            double eps_max, double* eps0) {
  return guarded([&] {
    require(c != nullptr && gamma != nullptr && eps0 != nullptr && dim > 0,
            "gkscp_perturbation_cp_interval: null argument");
    const auto d = static_cast<gkscp::Index>(dim);
    *eps0 = gkscp::perturbation_cp_interval(gkscp::KossakowskiMatrix(read_matrix(c, d, d)),
                                            read_matrix(gamma, d, d), eps_max);
  });
}

gkscp_status gkscp_counterexample_eigenvalues(double mu, double alpha, double t, double rate,
                                              double* z_plus, double* z_minus) {
  return guarded([&] {
    require(z_plus != nullptr && z_minus != nullptr, "gkscp_counterexample_eigenvalues: null argument");
    const auto z = gkscp::counterexample_eigenvalues(mu, alpha, t, rate);
    *z_plus = z.z_plus;
    *z_minus = z.z_minus;
  });
}

gkscp_status gkscp_min_output_eigenvalue(const gkscp_superop* generator, const double* grid,
                                         size_t grid_len, size_t local_dim, size_t budget,
                                         uint64_t seed, double* min_eigenvalue,
                                         double* witness_time) {
  return guarded([&] {
    require(generator != nullptr && min_eigenvalue != nullptr,
            "gkscp_min_output_eigenvalue: null argument");
    std::vector<double> times = grid ? std::vector<double>(grid, grid + grid_len)
                                     : gkscp::default_time_grid();
    gkscp::PositivitySearchOptions opts;
    opts.budget = budget;
    opts.seed = seed;
    if (local_dim > 0) opts.local_dimension = static_cast<gkscp::Index>(local_dim);
    const auto r = gkscp::min_output_eigenvalue_over_grid(generator->matrix, times, opts);
    *min_eigenvalue = r.min_eigenvalue_found;
    if (witness_time) *witness_time = r.witness_time;
  });
}

void gkscp_run_options_init(gkscp_run_options* options) {
  if (!options) return;
  const gkscp::RunConfig defaults;
  *options = gkscp_run_options{};
  options->seed = defaults.seed;
  options->budget = defaults.budget;
  options->refinement_steps = defaults.refinement_steps;
  options->tolerance = 0.0;
  options->eps_max = defaults.eps_max;
  options->time = defaults.time;
  options->rate = defaults.rate;
}

gkscp_status gkscp_run(const char* command, const char* const* inputs, size_t n_inputs,
                       const gkscp_run_options* options, gkscp_result** out) {
  return guarded([&] {
    require(command != nullptr && out != nullptr, "gkscp_run: null argument");
    require(n_inputs == 0 || inputs != nullptr, "gkscp_run: null input list");
    gkscp_run_options opts;
    gkscp_run_options_init(&opts);
    if (options) opts = *options;
    gkscp::RunConfig cfg;
    cfg.command = command;
    for (size_t i = 0; i < n_inputs; ++i) {
      require(inputs[i] != nullptr, "gkscp_run: null input");
      cfg.inputs.emplace_back(inputs[i]);
    }
    auto list = [](const double* p, size_t n) {
      return p ? std::vector<double>(p, p + n) : std::vector<double>{};
    };
    cfg.grid = list(opts.grid, opts.grid_len);
    cfg.seed = opts.seed;
    cfg.budget = opts.budget;
    cfg.refinement_steps = opts.refinement_steps;
    if (opts.tolerance > 0.0) cfg.tolerance = opts.tolerance;
    cfg.eps_max = opts.eps_max;
    cfg.time = opts.time;
    cfg.rate = opts.rate;
    cfg.mu = list(opts.mu, opts.mu_len);
    cfg.alpha = list(opts.alpha, opts.alpha_len);
    cfg.varphi = list(opts.varphi, opts.varphi_len);
    *out = new gkscp_result{gkscp::run_command(cfg)};
  });
}

int gkscp_result_exit_code(const gkscp_result* r) { return r ? r->result.exit_code : 2; }

const char* gkscp_result_document(const gkscp_result* r) {
  return r ? r->result.document.c_str() : "";
}

size_t gkscp_result_file_count(const gkscp_result* r) { return r ? r->result.files.size() : 0; }

const char* gkscp_result_file_name(const gkscp_result* r, size_t i) {
  return r && i < r->result.files.size() ? r->result.files[i].name.c_str() : nullptr;
}

const char* gkscp_result_file_contents(const gkscp_result* r, size_t i) {
  return r && i < r->result.files.size() ? r->result.files[i].contents.c_str() : nullptr;
}

void gkscp_result_free(gkscp_result* r) { delete r; }

size_t gkscp_preset_count(void) { return gkscp::preset_names().size(); }

const char* gkscp_preset_name(size_t i) {
  static const std::vector<std::string> names = gkscp::preset_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

gkscp_status gkscp_parse_grid(const char* spec, double* out, size_t capacity, size_t* len) {
  return guarded([&] {
    require(spec != nullptr && len != nullptr, "gkscp_parse_grid: null argument");
    const std::vector<double> grid = gkscp::parse_grid(spec);
    *len = grid.size();
    require(out != nullptr && capacity >= grid.size(), "gkscp_parse_grid: buffer too small");
    std::copy(grid.begin(), grid.end(), out);
  });
}

}  // extern "C"
