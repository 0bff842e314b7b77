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

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

#include <Eigen/Dense>

namespace gkscp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

inline constexpr Complex kI{0.0, 1.0};

// Project-wide tolerance defaults. Checks report the measured residual
// alongside the verdict, so these only decide pass/fail.
struct Tolerances {
  double hermiticity = 1e-12;
  double reconstruction = 1e-10;
  double positivity = 1e-10;
};

inline constexpr Tolerances kTolerances{};

struct HermitianEigensystem {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns
};

/// Largest entrywise |H - H^dagger|.
double max_asymmetry(const ComplexMatrix& h);

void require_square(const ComplexMatrix& a, std::string_view what);

/// Throws kNotHermitian with the measured asymmetry in the message.
void require_hermitian(const ComplexMatrix& h, double tol, std::string_view what);

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h,
                                           double tol = kTolerances.hermiticity);

double min_eigenvalue(const ComplexMatrix& h, double tol = kTolerances.hermiticity);

/// exp(t A). Normal matrices go through a Schur (unitary) diagonalization,
/// everything else through scaling-and-squaring with a degree-13 Pade
/// approximant. t == 0 returns the identity exactly.
ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t);

/// (A (x) B)[i*rowsB + k, j*colsB + l] = A[i,j] B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(A rho) for Hermitian A; throws if the imaginary residue exceeds 1e-12
/// relative to the operands.
double expectation(const ComplexMatrix& observable, const ComplexMatrix& rho);

double operator_norm(const ComplexMatrix& a);

ComplexMatrix identity(Index n);

/// sigma(0) is the 2x2 identity, sigma(1..3) the Pauli matrices.
ComplexMatrix pauli(int k);

// Column-stacking vectorization: vec(A X B) = (B^T (x) A) vec(X).
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Index n);

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b);

// Deterministic seeding: every random draw in the library comes from an
// Rng seeded by mixing a user seed with stream indices, so results do not
// depend on evaluation order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_a,
                       std::uint64_t stream_b = 0);

/// Haar-random unit vector (normalized complex Gaussian).
ComplexVector random_pure_state(Index d, Rng& rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Index n, Rng& rng);
/// Hermitian with i.i.d. Gaussian entries (GUE up to scale).
ComplexMatrix random_hermitian(Index n, Rng& rng, double scale = 1.0);

}  // namespace gkscp
