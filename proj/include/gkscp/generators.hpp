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

#include <string>
#include <vector>

#include "gkscp/numerics.hpp"

namespace gkscp {

/// Orthonormal basis {F_i} of the traceless n x n matrices:
/// Tr(F_i) = 0 and Tr(F_i^dagger F_j) = delta_ij.
class TracelessBasis {
 public:
  /// Generalized Gell-Mann matrices, normalized to unit Hilbert-Schmidt
  /// norm. Fixed ordering: symmetric off-diagonal (j,k) for j < k in
  /// lexicographic order, then antisymmetric off-diagonal in the same order,
  /// then the n - 1 diagonal matrices. For n = 2 this is sigma_{1,2,3}/sqrt(2).
  static TracelessBasis gell_mann(Index n);

  /// Validates tracelessness and orthonormality within `tol`.
  static TracelessBasis from_matrices(std::vector<ComplexMatrix> matrices,
                                      double tol = kTolerances.hermiticity);

  Index dimension() const { return n_; }
  Index size() const { return static_cast<Index>(matrices_.size()); }
  const ComplexMatrix& operator[](Index i) const { return matrices_[static_cast<size_t>(i)]; }
  const std::vector<ComplexMatrix>& matrices() const { return matrices_; }

  /// "gell-mann-orthonormal" for the canonical basis, "custom" otherwise.
  const std::string& tag() const { return tag_; }

  /// Gram matrix G_ij = Tr(F_i^dagger F_j).
  ComplexMatrix gram() const;

 private:
  TracelessBasis(Index n, std::vector<ComplexMatrix> matrices, std::string tag)
      : n_(n), matrices_(std::move(matrices)), tag_(std::move(tag)) {}

  Index n_;
  std::vector<ComplexMatrix> matrices_;
  std::string tag_;
};

TracelessBasis build_traceless_basis(Index n);

/// Hermitian (n^2-1) x (n^2-1) dissipator coefficients, rates in 1/time.
class KossakowskiMatrix {
 public:
  explicit KossakowskiMatrix(ComplexMatrix c, double tol = kTolerances.hermiticity);

  static KossakowskiMatrix zero(Index dim) { return KossakowskiMatrix(ComplexMatrix::Zero(dim, dim)); }

  Index dim() const { return c_.rows(); }
  const ComplexMatrix& matrix() const { return c_; }
  double min_eigenvalue() const;

  friend KossakowskiMatrix operator+(const KossakowskiMatrix& a, const KossakowskiMatrix& b);
  friend KossakowskiMatrix operator*(double s, const KossakowskiMatrix& a);
  bool operator==(const KossakowskiMatrix& o) const { return c_ == o.c_; }

 private:
  ComplexMatrix c_;
};

/// L[rho] = -i[H, rho] + sum_ij c_ij (F_i rho F_j^dagger - 1/2 {F_j^dagger F_i, rho}).
class GeneratorSpec {
 public:
  GeneratorSpec(ComplexMatrix hamiltonian, KossakowskiMatrix kossakowski,
                TracelessBasis basis);

  /// Canonical Gell-Mann basis.
  GeneratorSpec(ComplexMatrix hamiltonian, KossakowskiMatrix kossakowski);

  static GeneratorSpec zero(Index n);

  Index dimension() const { return basis_.dimension(); }
  const ComplexMatrix& hamiltonian() const { return hamiltonian_; }
  const KossakowskiMatrix& kossakowski() const { return kossakowski_; }
  const TracelessBasis& basis() const { return basis_; }

  bool operator==(const GeneratorSpec& o) const;

 private:
  ComplexMatrix hamiltonian_;
  KossakowskiMatrix kossakowski_;
  TracelessBasis basis_;
};

/// Matrix of a linear map on n x n matrices acting on column-stacked
/// vectors: apply(X) = unvec(S vec(X)).
class SuperoperatorMatrix {
 public:
  SuperoperatorMatrix(Index n, ComplexMatrix s);

  static SuperoperatorMatrix identity(Index n);
  /// The transpose map X -> X^T.
  static SuperoperatorMatrix transpose(Index n);
  static SuperoperatorMatrix from_kraus(const std::vector<ComplexMatrix>& ops);

  Index dimension() const { return n_; }
  const ComplexMatrix& matrix() const { return s_; }
  ComplexMatrix apply(const ComplexMatrix& x) const;

  /// Composition: (a * b).apply(x) == a.apply(b.apply(x)).
  friend SuperoperatorMatrix operator*(const SuperoperatorMatrix& a, const SuperoperatorMatrix& b);

 private:
  Index n_;
  ComplexMatrix s_;
};

ComplexMatrix apply_generator(const GeneratorSpec& g, const ComplexMatrix& rho);

SuperoperatorMatrix superoperator_matrix(const GeneratorSpec& g);

/// Generator of the factorized dynamics gamma^(1)_t (x) gamma^(2)_t on
/// M_n (x) M_n, i.e. L_1 (x) id + id (x) L_2. States of the composite system
/// are n^2 x n^2 matrices in the basis |j> (x) |k> (index j*n + k).
SuperoperatorMatrix tensor_sum_generator(const GeneratorSpec& g1, const GeneratorSpec& g2);

/// diag(C1, C2): the coefficient matrix of the factorized generator in the
/// operator family {F_i (x) I} followed by {I (x) F_j}.
KossakowskiMatrix block_diag_kossakowski(const KossakowskiMatrix& c1, const KossakowskiMatrix& c2);

/// Lindblad superoperator for an arbitrary operator family {A_i} and
/// coefficient matrix c (no Hermiticity or basis requirements on A_i).
ComplexMatrix lindblad_superoperator(const ComplexMatrix& hamiltonian,
                                     const ComplexMatrix& c,
                                     const std::vector<ComplexMatrix>& ops);

}  // namespace gkscp
