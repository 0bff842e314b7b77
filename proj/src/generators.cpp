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

#include "gkscp/generators.hpp"

#include <cmath>
#include <sstream>

#include "gkscp/error.hpp"

namespace gkscp {

namespace {

const char* kGellMannTag = "gell-mann-orthonormal";

ComplexMatrix unit(Index n, Index i, Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

TracelessBasis TracelessBasis::gell_mann(Index n) {
  if (n < 2) {
    std::ostringstream os;
    os << "build_traceless_basis: dimension must be >= 2, got " << n;
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  const double r2 = std::sqrt(2.0);
  std::vector<ComplexMatrix> ms;
  ms.reserve(static_cast<size_t>(n * n - 1));
  for (Index j = 0; j < n; ++j)
    for (Index k = j + 1; k < n; ++k) ms.push_back((unit(n, j, k) + unit(n, k, j)) / r2);
  for (Index j = 0; j < n; ++j)
    for (Index k = j + 1; k < n; ++k) ms.push_back((-kI * unit(n, j, k) + kI * unit(n, k, j)) / r2);
  for (Index l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (Index m = 0; m < l; ++m) d(m, m) = 1.0;
    d(l, l) = -static_cast<double>(l);
    ms.push_back(d / std::sqrt(static_cast<double>(l * (l + 1))));
  }
  return TracelessBasis(n, std::move(ms), kGellMannTag);
}

TracelessBasis TracelessBasis::from_matrices(std::vector<ComplexMatrix> matrices, double tol) {
  if (matrices.empty()) throw Error(ErrorCode::kInvalidArgument, "traceless basis: no matrices");
  const Index n = matrices.front().rows();
  if (n < 2 || static_cast<Index>(matrices.size()) != n * n - 1) {
    throw Error(ErrorCode::kDimensionMismatch, "traceless basis: need n^2 - 1 matrices of size n >= 2");
  }
  for (size_t i = 0; i < matrices.size(); ++i) {
    const ComplexMatrix& f = matrices[i];
    if (f.rows() != n || f.cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "traceless basis: matrices differ in size");
    }
    if (std::abs(f.trace()) > tol) {
      std::ostringstream os;
      os << "traceless basis: |Tr F_" << i << "| = " << std::abs(f.trace());
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  TracelessBasis basis(n, std::move(matrices), "custom");
  const double err = (basis.gram() - identity(basis.size())).cwiseAbs().maxCoeff();
  if (err > tol) {
    std::ostringstream os;
    os << "traceless basis: not orthonormal (max |G - I| = " << err << ")";
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  return basis;
}

ComplexMatrix TracelessBasis::gram() const {
  const Index m = size();
  ComplexMatrix g(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) g(i, j) = ((*this)[i].adjoint() * (*this)[j]).trace();
  return g;
}

TracelessBasis build_traceless_basis(Index n) { return TracelessBasis::gell_mann(n); }

KossakowskiMatrix::KossakowskiMatrix(ComplexMatrix c, double tol) : c_(std::move(c)) {
  require_hermitian(c_, tol, "Kossakowski matrix");
}

double KossakowskiMatrix::min_eigenvalue() const { return gkscp::min_eigenvalue(c_); }

KossakowskiMatrix operator+(const KossakowskiMatrix& a, const KossakowskiMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "Kossakowski matrices differ in dimension");
  }
  return KossakowskiMatrix(a.c_ + b.c_);
}

KossakowskiMatrix operator*(double s, const KossakowskiMatrix& a) {
  return KossakowskiMatrix(s * a.c_);
}

GeneratorSpec::GeneratorSpec(ComplexMatrix hamiltonian, KossakowskiMatrix kossakowski,
                             TracelessBasis basis)
    : hamiltonian_(std::move(hamiltonian)),
      kossakowski_(std::move(kossakowski)),
      basis_(std::move(basis)) {
  const Index n = basis_.dimension();
  require_hermitian(hamiltonian_, kTolerances.hermiticity, "Hamiltonian");
  if (hamiltonian_.rows() != n) {
    std::ostringstream os;
    os << "generator: Hamiltonian is " << hamiltonian_.rows() << "x" << hamiltonian_.cols()
       << " but the basis acts on dimension " << n;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  if (kossakowski_.dim() != n * n - 1) {
    std::ostringstream os;
    os << "generator: Kossakowski matrix is " << kossakowski_.dim() << "x" << kossakowski_.dim()
       << ", expected " << n * n - 1 << "x" << n * n - 1 << " for n = " << n;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

GeneratorSpec::GeneratorSpec(ComplexMatrix hamiltonian, KossakowskiMatrix kossakowski)
    : GeneratorSpec(hamiltonian, kossakowski, TracelessBasis::gell_mann(hamiltonian.rows())) {}

GeneratorSpec GeneratorSpec::zero(Index n) {
  return GeneratorSpec(ComplexMatrix::Zero(n, n), KossakowskiMatrix::zero(n * n - 1));
}

bool GeneratorSpec::operator==(const GeneratorSpec& o) const {
  if (basis_.tag() != o.basis_.tag() || basis_.size() != o.basis_.size()) return false;
  for (Index i = 0; i < basis_.size(); ++i)
    if (basis_[i] != o.basis_[i]) return false;
  return hamiltonian_ == o.hamiltonian_ && kossakowski_ == o.kossakowski_;
}

SuperoperatorMatrix::SuperoperatorMatrix(Index n, ComplexMatrix s) : n_(n), s_(std::move(s)) {
  if (s_.rows() != n * n || s_.cols() != n * n) {
    std::ostringstream os;
    os << "superoperator: expected " << n * n << "x" << n * n << " matrix, got " << s_.rows()
       << "x" << s_.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

SuperoperatorMatrix SuperoperatorMatrix::identity(Index n) {
  return SuperoperatorMatrix(n, gkscp::identity(n * n));
}

SuperoperatorMatrix SuperoperatorMatrix::transpose(Index n) {
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  // vec index of (i, j) is j*n + i; the transpose swaps it with i*n + j.
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  return SuperoperatorMatrix(n, s);
}

SuperoperatorMatrix SuperoperatorMatrix::from_kraus(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw Error(ErrorCode::kInvalidArgument, "from_kraus: empty operator list");
  const Index n = ops.front().rows();
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& k : ops) {
    if (k.rows() != n || k.cols() != n) {
      throw Error(ErrorCode::kDimensionMismatch, "from_kraus: operators differ in size");
    }
    s += kron(k.conjugate(), k);
  }
  return SuperoperatorMatrix(n, s);
}

ComplexMatrix SuperoperatorMatrix::apply(const ComplexMatrix& x) const {
  if (x.rows() != n_ || x.cols() != n_) {
    std::ostringstream os;
    os << "superoperator acts on " << n_ << "x" << n_ << " matrices, got " << x.rows() << "x"
       << x.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  return unvec(s_ * vec(x), n_);
}

SuperoperatorMatrix operator*(const SuperoperatorMatrix& a, const SuperoperatorMatrix& b) {
  if (a.n_ != b.n_) throw Error(ErrorCode::kDimensionMismatch, "superoperator composition");
  return SuperoperatorMatrix(a.n_, a.s_ * b.s_);
}

ComplexMatrix apply_generator(const GeneratorSpec& g, const ComplexMatrix& rho) {
  const Index n = g.dimension();
  if (rho.rows() != n || rho.cols() != n) {
    std::ostringstream os;
    os << "apply_generator: generator acts on " << n << "x" << n << ", got " << rho.rows() << "x"
       << rho.cols();
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  const ComplexMatrix& h = g.hamiltonian();
  ComplexMatrix out = -kI * (h * rho - rho * h);
  const ComplexMatrix& c = g.kossakowski().matrix();
  const TracelessBasis& f = g.basis();
  for (Index i = 0; i < f.size(); ++i) {
    for (Index j = 0; j < f.size(); ++j) {
      if (c(i, j) == Complex(0.0)) continue;
      const ComplexMatrix fjd = f[j].adjoint();
      const ComplexMatrix fjd_fi = fjd * f[i];
      out += c(i, j) * (f[i] * rho * fjd - 0.5 * (fjd_fi * rho + rho * fjd_fi));
    }
  }
  return out;
}

ComplexMatrix lindblad_superoperator(const ComplexMatrix& hamiltonian, const ComplexMatrix& c,
                                     const std::vector<ComplexMatrix>& ops) {
  const Index n = hamiltonian.rows();
  const Index m = static_cast<Index>(ops.size());
  if (c.rows() != m || c.cols() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "lindblad_superoperator: coefficient/operator count");
  }
  const ComplexMatrix id = identity(n);
  ComplexMatrix s = -kI * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      const Complex cij = c(i, j);
      if (cij == Complex(0.0)) continue;
      const auto& ai = ops[static_cast<size_t>(i)];
      const auto& aj = ops[static_cast<size_t>(j)];
      s += cij * kron(aj.conjugate(), ai);
      d += cij * (aj.adjoint() * ai);
    }
  }
  s -= 0.5 * (kron(id, d) + kron(d.transpose(), id));
  return s;
}

SuperoperatorMatrix superoperator_matrix(const GeneratorSpec& g) {
  return SuperoperatorMatrix(
      g.dimension(),
      lindblad_superoperator(g.hamiltonian(), g.kossakowski().matrix(), g.basis().matrices()));
}

KossakowskiMatrix block_diag_kossakowski(const KossakowskiMatrix& c1, const KossakowskiMatrix& c2) {
  if (c1.dim() != c2.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "block_diag_kossakowski: dimensions differ");
  }
  const Index m = c1.dim();
  ComplexMatrix c = ComplexMatrix::Zero(2 * m, 2 * m);
  c.topLeftCorner(m, m) = c1.matrix();
  c.bottomRightCorner(m, m) = c2.matrix();
  return KossakowskiMatrix(c);
}

SuperoperatorMatrix tensor_sum_generator(const GeneratorSpec& g1, const GeneratorSpec& g2) {
  const Index n = g1.dimension();
  if (g2.dimension() != n) {
    std::ostringstream os;
    os << "tensor_sum_generator: subsystem dimensions differ (" << n << " vs " << g2.dimension()
       << ")";
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
  const ComplexMatrix id = identity(n);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<size_t>(2 * g1.basis().size()));
  for (const auto& f : g1.basis().matrices()) ops.push_back(kron(f, id));
  for (const auto& f : g2.basis().matrices()) ops.push_back(kron(id, f));
  const ComplexMatrix h = kron(g1.hamiltonian(), id) + kron(id, g2.hamiltonian());
  const KossakowskiMatrix c = block_diag_kossakowski(g1.kossakowski(), g2.kossakowski());
  return SuperoperatorMatrix(n * n, lindblad_superoperator(h, c.matrix(), ops));
}

}  // namespace gkscp
