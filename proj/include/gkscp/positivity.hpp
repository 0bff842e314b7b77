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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gkscp/dynamics.hpp"
#include "gkscp/generators.hpp"
#include "gkscp/numerics.hpp"

namespace gkscp {

/// |psi> = sum_i sqrt(weights[i]) frame1.col(i) (x) frame2.col(i).
struct SchmidtState {
  std::vector<double> weights;
  ComplexMatrix frame1;  // orthonormal columns
  ComplexMatrix frame2;

  Index local_dimension() const { return frame1.rows(); }
  /// mu_1 for qubit pairs.
  double mu() const { return weights.at(0); }
  ComplexVector assemble() const;

  /// Qubit-pair angles of the second frame with respect to sigma_2:
  /// <phi1|sigma2|phi1> = cos(alpha), <phi2|sigma2|phi1> = e^{i varphi} sin(alpha),
  /// alpha in [0, pi].
  double alpha() const;
  double varphi() const;

  /// Qubit-pair state with the given weight and sigma_2 angles; frame1 is
  /// any 2x2 unitary.
  static SchmidtState from_angles(double mu, double alpha, double varphi,
                                  const ComplexMatrix& frame1);
};

/// Schmidt decomposition of a unit vector on C^n (x) C^n (index j*n + k).
SchmidtState schmidt_decompose(const ComplexVector& psi, Index n);

enum class PositivityVerdict { kPositiveWithinBudget, kViolationFound };

const char* to_string(PositivityVerdict v);

struct TimeSample {
  double t = 0.0;
  double min_eigenvalue = 0.0;
};

struct PositivityReport {
  PositivityVerdict verdict = PositivityVerdict::kPositiveWithinBudget;
  double min_eigenvalue_found = 0.0;
  ComplexVector witness_state;
  double witness_time = 0.0;
  std::size_t samples_used = 0;
  std::size_t refinement_steps = 0;
  std::uint64_t seed = 0;
  std::vector<TimeSample> per_time;
  /// Qubit maps only: every sampled map sends the Bloch ball into itself.
  bool analytically_certified = false;
  /// Qubit maps only: lowest det(gamma_t[rho]) over the sampled inputs.
  std::optional<double> min_determinant;
  std::string note;
};

struct PositivitySearchOptions {
  std::size_t budget = 2000;
  std::size_t refinement_steps = 200;
  std::uint64_t seed = 0;
  /// When set, the map acts on C^n (x) C^n and refinement moves through
  /// Schmidt coordinates (weights and local unitaries).
  std::optional<Index> local_dimension;
  /// Extra starting points evaluated before the random samples.
  std::vector<ComplexVector> seed_states;
  double tolerance = kTolerances.positivity;
};

/// Lowest eigenvalue of map[|psi><psi|].
double output_min_eigenvalue(const SuperoperatorMatrix& map, const ComplexVector& psi);

/// Haar sampling of pure inputs followed by coordinate-descent refinement
/// (golden-section line searches) of the worst sample. Only a violation is
/// conclusive; "positive within budget" is not a proof of positivity.
PositivityReport min_output_eigenvalue(const SuperoperatorMatrix& map,
                                       const PositivitySearchOptions& options);

/// min_output_eigenvalue applied to exp(L t) for every t of the grid. Each
/// time point draws from its own seed stream.
PositivityReport min_output_eigenvalue_over_grid(const SuperoperatorMatrix& generator,
                                                 const std::vector<double>& grid,
                                                 const PositivitySearchOptions& options);

/// Qubit maps: det(gamma_t[rho]) over sampled pure rho, plus the
/// Bloch-ball contraction certificate (unital, trace preserving, Pauli
/// block of operator norm <= 1).
PositivityReport single_map_positivity_2d(const SuperoperatorMatrix& generator,
                                          const std::vector<double>& grid,
                                          const PositivitySearchOptions& options);

/// The qubit semigroups of the factorized counterexample with the sigma
/// basis rates written in terms of the orthonormal basis:
/// C = (rate / 2) diag(1, 1, 1) resp. (rate / 2) diag(1, -1, 1).
GeneratorSpec elementary_generator(ElementaryEvolution which, double rate);

/// 2x2 matrix Z_t of the closed-form evolution, in the frame of the first
/// subsystem's Schmidt vectors.
ComplexMatrix counterexample_zt(double mu, double alpha, double varphi, double t, double rate);

struct CounterexampleEigenvalues {
  double z_plus = 0.0;
  double z_minus = 0.0;
};

/// Doubly degenerate eigenvalues of the second term of the closed form.
CounterexampleEigenvalues counterexample_eigenvalues(double mu, double alpha, double t,
                                                     double rate);

/// rho(t) = e^{-rate t} rho + (1 - e^{-rate t})/2 [I (x) D - Z_t (x) sigma_2],
/// with D = diag(mu, 1 - mu) in the second Schmidt frame and Z_t in the first.
struct ClosedFormState {
  ComplexMatrix first_term;
  ComplexMatrix second_term;
  ComplexMatrix total;
};

ClosedFormState counterexample_state(const SchmidtState& initial, double t, double rate);

struct CounterexampleGrid {
  std::vector<double> mu;
  std::vector<double> alpha;
  std::vector<double> varphi;
  std::vector<double> t;

  /// mu in {0, .25, .5, .75, 1}, alpha in {0, pi/4, pi/2},
  /// varphi in {0, pi/3}, t on the default time grid.
  static CounterexampleGrid default_grid();
};

struct CounterexamplePoint {
  double mu = 0.0, alpha = 0.0, varphi = 0.0, t = 0.0;
  double state_residual = 0.0;       // max entrywise |closed form - numerical|
  double eigenvalue_residual = 0.0;  // max |spec(second term) - {z-, z-, z+, z+}|
  double z_minus = 0.0;
  double min_state_eigenvalue = 0.0;
  double min_first_term_eigenvalue = 0.0;
  bool passed = false;
};

struct ExtremumSearch {
  double value = 0.0;
  double mu = 0.0, alpha = 0.0, t = 0.0;
  std::size_t grid_points = 0;
  std::size_t refined_starts = 0;
};

struct CounterexampleReport {
  double rate = 4.0;
  std::vector<CounterexamplePoint> points;
  double max_state_residual = 0.0;
  double max_eigenvalue_residual = 0.0;
  double min_z = 0.0;
  double min_state_eigenvalue = 0.0;
  ExtremumSearch z_minimum;
  bool all_passed = false;
};

/// Closed form vs. numerical evolution under the tensor-sum generator on
/// every grid point, plus a global scan of z_-.
CounterexampleReport verify_counterexample(const CounterexampleGrid& grid, double rate);

/// z_- minimized over (mu, alpha, t) in [0,1] x [0, 2 pi) x [0, 10]: a
/// 25 x 25 x 16 grid, then bounded coordinate descent from the 10 lowest
/// grid points.
ExtremumSearch minimize_counterexample_eigenvalue(double rate);

struct CurveRow {
  double t = 0.0;
  double z_plus = 0.0;
  double z_minus = 0.0;
  double min_eig_numeric = 0.0;  // lowest eigenvalue of rho_num(t) - e^{-rate t} rho
};

std::vector<CurveRow> counterexample_curve(double mu, double alpha, double varphi,
                                           const std::vector<double>& grid, double rate);

/// Header "t,z_plus,z_minus,min_eig_numeric", then one row per time.
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);

/// For a positive but not completely positive qubit (or qudit) semigroup,
/// looks for a negative output eigenvalue of gamma_t (x) gamma_t. When
/// C + C fails the pair condition the explicit witness seeds the search.
/// Throws kPrecondition if the generator is CP or gamma_t is found not to
/// be positive.
PositivityReport theorem5_breakdown_search(const GeneratorSpec& g, const std::vector<double>& grid,
                                           const PositivitySearchOptions& options);

}  // namespace gkscp
