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
#include <optional>
#include <vector>

#include "gkscp/generators.hpp"
#include "gkscp/numerics.hpp"

namespace gkscp {

/// Unnormalized Choi matrix sum_ij gamma[E_ij] (x) E_ij of a map on M_n.
class ChoiMatrix {
 public:
  ChoiMatrix(Index n, ComplexMatrix m);

  Index dimension() const { return n_; }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  Index n_;
  ComplexMatrix m_;
};

ChoiMatrix choi_matrix(const SuperoperatorMatrix& map);

enum class CpRoute { kChoi, kKossakowski };

struct CpVerdict {
  bool is_cp = false;
  CpRoute route = CpRoute::kChoi;
  std::optional<double> min_choi_eigenvalue;
  std::optional<double> min_kossakowski_eigenvalue;
  double tolerance = 0.0;
};

/// Choi-spectrum test. The map must be Hermiticity-preserving (its Choi
/// matrix Hermitian within 1e-10, relative to its largest entry);
/// otherwise kPrecondition is thrown with the residual.
CpVerdict is_completely_positive(const SuperoperatorMatrix& map,
                                 double tol = kTolerances.positivity);

/// The semigroup generated with coefficient matrix C is CP iff C >= 0.
CpVerdict kossakowski_cp_test(const KossakowskiMatrix& c, double tol = kTolerances.positivity);

/// Operators K_i with gamma[rho] = sum_i K_i rho K_i^dagger. (Writing the
/// same form as sum V_i^dagger rho V_i only relabels V_i = K_i^dagger.)
struct KrausSet {
  std::vector<ComplexMatrix> operators;
  std::vector<double> weights;  // Choi eigenvalues absorbed into each operator

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// sum_i K_i^dagger K_i; the identity for trace-preserving maps.
  ComplexMatrix completeness() const;
  SuperoperatorMatrix to_superoperator() const;
};

/// Kraus operators from the scaled eigenvectors of the Choi matrix.
/// Eigenvalues at or below 1e-12 times the largest are dropped; a Choi
/// eigenvalue below -tol is rejected (kPrecondition) and reported.
KrausSet kraus_decomposition(const ChoiMatrix& choi, double tol = kTolerances.positivity);

struct Lemma1Condition {
  bool holds = false;
  double min_eigenvalue = 0.0;  // of C1 + C2
};

/// Necessary condition for positivity of gamma^(1)_t (x) gamma^(2)_t:
/// C1 + C2 >= 0.
Lemma1Condition lemma1_condition(const KossakowskiMatrix& c1, const KossakowskiMatrix& c2,
                                 double tol = kTolerances.positivity);

/// Explicit pair of orthogonal bipartite vectors whose overlap
/// G(t) = <phi| (gamma^(1)_t (x) gamma^(2)_t)[|psi><psi|] |phi>
/// starts at zero with negative slope <xi|(C1 + C2)|xi>.
struct Lemma1Witness {
  ComplexVector xi;        // unit eigenvector of C1 + C2 for its lowest eigenvalue
  double xi_eigenvalue = 0.0;
  ComplexMatrix w;         // sum_i xi_i F_i
  ComplexMatrix phi;       // coefficient matrices: |phi> = sum_jk phi(j,k) |j>|k>
  ComplexMatrix psi;
  ComplexVector phi_vector;
  ComplexVector psi_vector;
  double l_value = 0.0;    // <phi| (L1 (x) id + id (x) L2)[|psi><psi|] |phi>
  double xi_form = 0.0;    // <xi|(C1 + C2)|xi>
  double overlap = 0.0;                 // |<phi|psi>| = |Tr(Phi Psi^dagger)|
  double factorization_residual = 0.0;  // max |W - Phi Psi^dagger|
  double similarity_residual = 0.0;     // max |Phi^-1 W Phi - W^T|
  double phi_condition_number = 0.0;
  std::uint64_t seed = 0;
};

/// Requires min eig(C1 + C2) < -1e-10 and a common traceless basis;
/// otherwise throws kPrecondition ("no witness exists"). The similarity
/// Phi^-1 W Phi = W^T is drawn as a random combination of the solution
/// space of W Phi = Phi W^T, seeded by `seed`.
Lemma1Witness lemma1_witness(const GeneratorSpec& g1, const GeneratorSpec& g2,
                             std::uint64_t seed = 0);

/// G(t) for the witness vectors (unnormalized, so G(0) = |<phi|psi>|^2 = 0).
double lemma1_overlap_at(const GeneratorSpec& g1, const GeneratorSpec& g2,
                         const Lemma1Witness& witness, double t);

/// Largest eps0 in [0, eps_max] with C + eps Gamma >= -1e-10 on all of
/// [0, eps0]. min eig(C + eps Gamma) is concave in eps, so the feasible
/// set is an interval and bisection on its right end is exact to ~1e-13.
double perturbation_cp_interval(const KossakowskiMatrix& c, const ComplexMatrix& gamma,
                                double eps_max);

}  // namespace gkscp
