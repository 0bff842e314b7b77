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

#include <array>
#include <iosfwd>
#include <vector>

#include "gkscp/generators.hpp"
#include "gkscp/numerics.hpp"

namespace gkscp {

/// Hermitian, unit-trace, positive semidefinite n x n matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace within 1e-12 and a minimum
  /// eigenvalue >= -1e-10.
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Index n);

  Index dimension() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }
  double purity() const;

 private:
  ComplexMatrix rho_;
};

/// Result of pushing a state through a map that is not known to be
/// positive: negative eigenvalues are kept and reported.
struct EvolvedState {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;
  double trace_residual = 0.0;  // |Tr - 1|

  /// Throws kNumerical if the matrix is not a valid state.
  DensityMatrix as_density_matrix() const;
};

/// gamma_t = exp(L t). Rejects t < 0.
SuperoperatorMatrix evolution_map(const SuperoperatorMatrix& generator, double t);

EvolvedState evolve_state(const SuperoperatorMatrix& generator, const DensityMatrix& rho0, double t);

/// U rho U^dagger with U = exp(-i H t).
DensityMatrix unitary_evolution(const ComplexMatrix& hamiltonian, const DensityMatrix& rho0, double t);

/// Pauli-basis coefficients of a 2x2 matrix: rho = sum_mu c[mu] sigma_mu,
/// c[mu] = Tr(rho sigma_mu) / 2.
struct CoherenceVector {
  std::array<double, 4> c{};

  double bloch_norm_squared() const { return c[1] * c[1] + c[2] * c[2] + c[3] * c[3]; }
};

CoherenceVector to_coherence_vector(const ComplexMatrix& rho);
CoherenceVector to_coherence_vector(const DensityMatrix& rho);
ComplexMatrix from_coherence_vector(const CoherenceVector& v);

/// The two elementary qubit semigroups of the factorized counterexample.
enum class ElementaryEvolution {
  kUniformDamping = 1,  // all three Pauli components decay at `rate`
  kSigma2Damping = 2,   // only the sigma_2 component decays
};

CoherenceVector closed_form_elementary(ElementaryEvolution which, const CoherenceVector& v,
                                       double t, double rate);

/// {0, 0.01, 0.05, 0.1, 0.5, 1, 2, 5, 10}
std::vector<double> default_time_grid();

struct TrajectoryPoint {
  double t = 0.0;
  EvolvedState state;
};

std::vector<TrajectoryPoint> trajectory(const SuperoperatorMatrix& generator,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& grid);

/// Comma-separated rows: t, re/im of each entry (row-major), min eigenvalue,
/// trace residual. A header row names the columns.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points);

}  // namespace gkscp
