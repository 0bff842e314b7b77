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

#include "gkscp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gkscp/error.hpp"

namespace gkscp {

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  require_hermitian(rho_, kTolerances.hermiticity, "density matrix");
  const double tr_err = std::abs(rho_.trace() - Complex(1.0));
  if (tr_err > kTolerances.hermiticity) {
    std::ostringstream os;
    os << "density matrix: |Tr(rho) - 1| = " << tr_err;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  const double lo = min_eigenvalue(rho_);
  if (lo < -kTolerances.positivity) {
    std::ostringstream os;
    os << "density matrix: negative eigenvalue " << lo;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(ErrorCode::kInvalidArgument, "pure state: zero vector");
  const ComplexVector u = psi / norm;
  ComplexMatrix rho = outer(u, u);
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::maximally_mixed(Index n) {
  return DensityMatrix(identity(n) / static_cast<double>(n));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

DensityMatrix EvolvedState::as_density_matrix() const {
  try {
    return DensityMatrix(matrix);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNumerical, std::string("evolved state is not a state: ") + e.what());
  }
}

SuperoperatorMatrix evolution_map(const SuperoperatorMatrix& generator, double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "evolution_map: the semigroup is defined only for t >= 0, got t = " << t;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return SuperoperatorMatrix(generator.dimension(), matrix_exponential(generator.matrix(), t));
}

EvolvedState evolve_state(const SuperoperatorMatrix& generator, const DensityMatrix& rho0,
                          double t) {
  if (rho0.dimension() != generator.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "evolve_state: state and generator dimensions differ");
  }
  EvolvedState out;
  const ComplexMatrix m = evolution_map(generator, t).apply(rho0.matrix());
  // Rounding in the exponential leaves an anti-Hermitian residue that scales
  // with the entries of the map, which grow with t when the map is not positive.
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (max_asymmetry(m) > 1e-9 * scale) {
    std::ostringstream os;
    os << "evolve_state: evolved matrix is not Hermitian (max |A - A^dagger| = "
       << max_asymmetry(m) << ")";
    throw Error(ErrorCode::kNumerical, os.str());
  }
  out.matrix = 0.5 * (m + m.adjoint());
  out.min_eigenvalue = min_eigenvalue(out.matrix);
  out.trace_residual = std::abs(out.matrix.trace() - Complex(1.0));
  return out;
}

DensityMatrix unitary_evolution(const ComplexMatrix& hamiltonian, const DensityMatrix& rho0,
                                double t) {
  require_hermitian(hamiltonian, kTolerances.hermiticity, "unitary_evolution Hamiltonian");
  if (hamiltonian.rows() != rho0.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "unitary_evolution: dimension mismatch");
  }
  const ComplexMatrix u = matrix_exponential(-kI * hamiltonian, t);
  ComplexMatrix rho = u * rho0.matrix() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

CoherenceVector to_coherence_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "coherence vector: only defined for 2x2 matrices");
  }
  CoherenceVector v;
  for (int mu = 0; mu < 4; ++mu) v.c[static_cast<size_t>(mu)] = 0.5 * (rho * pauli(mu)).trace().real();
  return v;
}

CoherenceVector to_coherence_vector(const DensityMatrix& rho) {
  return to_coherence_vector(rho.matrix());
}

ComplexMatrix from_coherence_vector(const CoherenceVector& v) {
  ComplexMatrix rho = ComplexMatrix::Zero(2, 2);
  for (int mu = 0; mu < 4; ++mu) rho += v.c[static_cast<size_t>(mu)] * pauli(mu);
  return rho;
}

CoherenceVector closed_form_elementary(ElementaryEvolution which, const CoherenceVector& v,
                                       double t, double rate) {
  const double decay = std::exp(-rate * t);
  CoherenceVector out = v;
  switch (which) {
    case ElementaryEvolution::kUniformDamping:
      out.c[1] *= decay;
      out.c[2] *= decay;
      out.c[3] *= decay;
      break;
    case ElementaryEvolution::kSigma2Damping:
      out.c[2] *= decay;
      break;
  }
  return out;
}

std::vector<double> default_time_grid() { return {0.0, 0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}; }

std::vector<TrajectoryPoint> trajectory(const SuperoperatorMatrix& generator,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& grid) {
  std::vector<TrajectoryPoint> points;
  points.reserve(grid.size());
  for (double t : grid) points.push_back({t, evolve_state(generator, rho0, t)});
  return points;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
  if (points.empty()) return;
  const Index n = points.front().state.matrix.rows();
  os << "t";
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) os << ",re_" << i << j << ",im_" << i << j;
  os << ",min_eigenvalue,trace_residual\n";
  os << std::setprecision(17);
  for (const auto& p : points) {
    os << p.t;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        os << ',' << p.state.matrix(i, j).real() << ',' << p.state.matrix(i, j).imag();
    os << ',' << p.state.min_eigenvalue << ',' << p.state.trace_residual << '\n';
  }
}

}  // namespace gkscp
