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

#include "gkscp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "gkscp/error.hpp"

namespace gkscp {

double max_asymmetry(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

void require_hermitian(const ComplexMatrix& h, double tol, std::string_view what) {
  require_square(h, what);
  const double asym = max_asymmetry(h);
  if (!(asym <= tol)) {
    std::ostringstream os;
    os << what << ": not Hermitian (max |H - H^dagger| = " << asym
       << ", tolerance " << tol << ")";
    throw Error(ErrorCode::kNotHermitian, os.str());
  }
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h, double tol) {
  require_hermitian(h, tol, "hermitian_eigensystem");
  if (h.size() == 0) return {};
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical, "hermitian_eigensystem: solver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& h, double tol) {
  require_hermitian(h, tol, "min_eigenvalue");
  if (h.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "min_eigenvalue: empty matrix");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumerical, "min_eigenvalue: solver did not converge");
  }
  return solver.eigenvalues()(0);
}

namespace {

bool is_normal(const ComplexMatrix& a) {
  const double scale = 1.0 + a.squaredNorm();
  return (a * a.adjoint() - a.adjoint() * a).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

}  // namespace

ComplexMatrix matrix_exponential(const ComplexMatrix& a, double t) {
  require_square(a, "matrix_exponential");
  const Index n = a.rows();
  if (t == 0.0 || n == 0) return identity(n);
  const ComplexMatrix ta = t * a;
  if (is_normal(ta)) {
    Eigen::ComplexSchur<ComplexMatrix> schur(ta);
    if (schur.info() == Eigen::Success) {
      const ComplexMatrix& tri = schur.matrixT();
      const ComplexMatrix strict = tri.triangularView<Eigen::StrictlyUpper>();
      if (strict.size() == 0 ||
          strict.cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + tri.cwiseAbs().maxCoeff())) {
        const ComplexMatrix& u = schur.matrixU();
        ComplexVector d(n);
        for (Index i = 0; i < n; ++i) d(i) = std::exp(tri(i, i));
        return u * d.asDiagonal() * u.adjoint();
      }
    }
  }
  return ta.exp();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double expectation(const ComplexMatrix& observable, const ComplexMatrix& rho) {
  require_hermitian(observable, kTolerances.hermiticity, "expectation");
  if (rho.rows() != observable.rows() || rho.cols() != observable.cols()) {
    std::ostringstream os;
    os << "expectation: observable is " << observable.rows() << "x" << observable.cols()
       << " but state is " << rho.rows() << "x" << rho.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  const Complex value = (observable * rho).trace();
  const double scale = std::max(1.0, observable.cwiseAbs().maxCoeff() *
                                         rho.cwiseAbs().maxCoeff() * double(rho.rows()));
  if (std::abs(value.imag()) > 1e-12 * scale) {
    std::ostringstream os;
    os << "expectation: imaginary residue " << value.imag() << " (is the state Hermitian?)";
    throw Error(ErrorCode::kNumerical, os.str());
  }
  return value.real();
}

double operator_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix pauli(int k) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (k) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = -kI; m(1, 0) = kI; break;
    case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: throw Error(ErrorCode::kInvalidArgument, "pauli: index must be 0..3");
  }
  return m;
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorCode::kDimensionMismatch, "unvec: vector length is not n^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
  return a * b.adjoint();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
  // splitmix64 finalizer applied to each word in turn
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ stream_a) ^ stream_b);
}

namespace {

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

ComplexVector random_pure_state(Index d, Rng& rng) {
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = complex_gaussian(rng);
  return v / v.norm();
}

ComplexMatrix random_unitary(Index n, Rng& rng) {
  ComplexMatrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = complex_gaussian(rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_hermitian(Index n, Rng& rng, double scale) {
  ComplexMatrix g(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = complex_gaussian(rng);
  return scale * 0.5 * (g + g.adjoint());
}

}  // namespace gkscp
