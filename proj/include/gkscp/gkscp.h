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

/*
 * C interface to gkscp: Lindblad/GKS semigroups, complete positivity and
 * positivity of factorized bipartite dynamics.
 *
 * Conventions
 *  - Objects are opaque handles created by gkscp_*_create/parse/... and
 *    released with the matching gkscp_*_free. Free functions accept NULL.
 *  - Every fallible call returns a gkscp_status; on failure
 *    gkscp_last_error() holds a message for the calling thread.
 *  - Complex matrices cross the boundary as row-major arrays of interleaved
 *    (re, im) doubles: entry (i, j) of an r x c matrix lives at
 *    [2 * (i * c + j)] and [2 * (i * c + j) + 1].
 *  - Superoperators act on column-stacked n x n matrices.
 */

#ifndef GKSCP_GKSCP_H_
#define GKSCP_GKSCP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GKSCP_BUILDING_LIBRARY)
#    define GKSCP_API __declspec(dllexport)
#  else
#    define GKSCP_API __declspec(dllimport)
#  endif
#else
#  define GKSCP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gkscp_status {
  GKSCP_OK = 0,
  GKSCP_ERR_INVALID_ARGUMENT = 1,
  GKSCP_ERR_DIMENSION_MISMATCH = 2,
  GKSCP_ERR_NOT_HERMITIAN = 3,
  GKSCP_ERR_PRECONDITION = 4,
  GKSCP_ERR_PARSE = 5,
  GKSCP_ERR_NUMERICAL = 6,
  GKSCP_ERR_IO = 7,
  GKSCP_ERR_INTERNAL = 99
} gkscp_status;

typedef struct gkscp_generator gkscp_generator;
typedef struct gkscp_superop gkscp_superop;
typedef struct gkscp_result gkscp_result;

GKSCP_API const char* gkscp_version(void);
GKSCP_API const char* gkscp_status_string(gkscp_status status);
/* Message of the last failed call on this thread ("" if none). */
GKSCP_API const char* gkscp_last_error(void);
GKSCP_API void gkscp_string_free(char* s);

/* ---- generators ------------------------------------------------------- */

/* hamiltonian: n x n (NULL for zero); kossakowski: (n^2-1) x (n^2-1).
 * Both must be Hermitian. Uses the orthonormal generalized Gell-Mann basis. */
GKSCP_API gkscp_status gkscp_generator_create(size_t n, const double* hamiltonian,
                                              const double* kossakowski,
                                              gkscp_generator** out);
GKSCP_API gkscp_status gkscp_generator_parse(const char* document, gkscp_generator** out);
/* Single-document presets such as "paper:C1". */
GKSCP_API gkscp_status gkscp_generator_preset(const char* name, gkscp_generator** out);
/* Caller frees *out with gkscp_string_free. */
GKSCP_API gkscp_status gkscp_generator_to_document(const gkscp_generator* g, char** out);
GKSCP_API size_t gkscp_generator_dimension(const gkscp_generator* g);
/* Copies the (n^2-1)^2 Kossakowski entries. */
GKSCP_API gkscp_status gkscp_generator_kossakowski(const gkscp_generator* g, double* out,
                                                   size_t capacity);
GKSCP_API void gkscp_generator_free(gkscp_generator* g);

/* ---- superoperators --------------------------------------------------- */

GKSCP_API gkscp_status gkscp_generator_superoperator(const gkscp_generator* g,
                                                     gkscp_superop** out);
/* L1 (x) id + id (x) L2 acting on n^2 x n^2 matrices. */
GKSCP_API gkscp_status gkscp_tensor_sum_generator(const gkscp_generator* g1,
                                                  const gkscp_generator* g2,
                                                  gkscp_superop** out);
/* exp(L t), t >= 0. */
GKSCP_API gkscp_status gkscp_evolution_map(const gkscp_superop* generator, double t,
                                           gkscp_superop** out);
/* Dimension n of the matrices the superoperator acts on. */
GKSCP_API size_t gkscp_superop_dimension(const gkscp_superop* s);
/* Copies the n^2 x n^2 matrix (2 n^4 doubles). */
GKSCP_API gkscp_status gkscp_superop_entries(const gkscp_superop* s, double* out,
                                             size_t capacity);
/* y = S[x] for an n x n matrix x (both 2 n^2 doubles). */
GKSCP_API gkscp_status gkscp_superop_apply(const gkscp_superop* s, const double* x, double* y);
GKSCP_API void gkscp_superop_free(gkscp_superop* s);

/* ---- analysis --------------------------------------------------------- */

typedef struct gkscp_verdict {
  int holds;             /* 1 if CP / condition holds */
  double min_eigenvalue; /* Choi, Kossakowski or C1 + C2 spectrum */
  double tolerance;
} gkscp_verdict;

GKSCP_API gkscp_status gkscp_is_completely_positive(const gkscp_superop* map, double tol,
                                                    gkscp_verdict* out);
GKSCP_API gkscp_status gkscp_kossakowski_cp_test(const gkscp_generator* g, double tol,
                                                 gkscp_verdict* out);
GKSCP_API gkscp_status gkscp_lemma1_condition(const gkscp_generator* g1,
                                              const gkscp_generator* g2, double tol,
                                              gkscp_verdict* out);
/* c and gamma are dim x dim Hermitian matrices. */
GKSCP_API gkscp_status gkscp_perturbation_cp_interval(size_t dim, const double* c,
                                                      const double* gamma, double eps_max,
                                                      double* eps0);
GKSCP_API gkscp_status gkscp_counterexample_eigenvalues(double mu, double alpha, double t,
                                                        double rate, double* z_plus,
                                                        double* z_minus);
/* Sampled search for the lowest output eigenvalue of exp(L t) over the
 * grid. local_dim > 0 marks a bipartite map on C^k (x) C^k. */
GKSCP_API gkscp_status gkscp_min_output_eigenvalue(const gkscp_superop* generator,
                                                   const double* grid, size_t grid_len,
                                                   size_t local_dim, size_t budget, uint64_t seed,
                                                   double* min_eigenvalue, double* witness_time);

/* ---- commands --------------------------------------------------------- */

typedef struct gkscp_run_options {
  const double* grid; /* NULL: default time grid */
  size_t grid_len;
  uint64_t seed;
  size_t budget;
  size_t refinement_steps;
  double tolerance; /* <= 0: library default */
  double eps_max;   /* perturb */
  double time;      /* kraus */
  double rate;      /* counterexample */
  const double* mu; /* counterexample grid overrides; NULL: default */
  size_t mu_len;
  const double* alpha;
  size_t alpha_len;
  const double* varphi;
  size_t varphi_len;
} gkscp_run_options;

GKSCP_API void gkscp_run_options_init(gkscp_run_options* options);

/* Runs a command (check-cp, tensor-positivity, counterexample, lemma1,
 * perturb, kraus). inputs are document paths or preset names. Input
 * problems do not fail the call: they yield exit code 2 and an error
 * document. */
GKSCP_API gkscp_status gkscp_run(const char* command, const char* const* inputs,
                                 size_t n_inputs, const gkscp_run_options* options,
                                 gkscp_result** out);
/* 0 holds, 1 analyzed and fails, 2 usage or input error. */
GKSCP_API int gkscp_result_exit_code(const gkscp_result* r);
GKSCP_API const char* gkscp_result_document(const gkscp_result* r);
GKSCP_API size_t gkscp_result_file_count(const gkscp_result* r);
GKSCP_API const char* gkscp_result_file_name(const gkscp_result* r, size_t i);
GKSCP_API const char* gkscp_result_file_contents(const gkscp_result* r, size_t i);
GKSCP_API void gkscp_result_free(gkscp_result* r);

GKSCP_API size_t gkscp_preset_count(void);
GKSCP_API const char* gkscp_preset_name(size_t i);

/* "default" or comma-separated times. *len receives the count even when
 * capacity is too small (then GKSCP_ERR_INVALID_ARGUMENT is returned). */
GKSCP_API gkscp_status gkscp_parse_grid(const char* spec, double* out, size_t capacity,
                                        size_t* len);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* GKSCP_GKSCP_H_ */
