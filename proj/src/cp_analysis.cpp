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

#include "gkscp/cp_analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "gkscp/error.hpp"

namespace gkscp {

ChoiMatrix::ChoiMatrix(Index n, ComplexMatrix m) : n_(n), m_(std::move(m)) {
  if (m_.rows() != n * n || m_.cols() != n * n) {
    throw Error(ErrorCode::kDimensionMismatch, "Choi matrix: expected n^2 x n^2");
  }
}

ChoiMatrix choi_matrix(const SuperoperatorMatrix& map) {
  const Index n = map.dimension();
  ComplexMatrix c = ComplexMatrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = 1.0;
      const ComplexMatrix image = unvec(map.matrix().col(j * n + i), n);
      c += kron(image, e);
    }
  }
  return ChoiMatrix(n, c);
}

namespace {

// Hermiticity bound for Choi matrices produced by exponentiation.
double choi_hermiticity_bound(const ComplexMatrix& m) {
  return 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

}  // namespace

CpVerdict is_completely_positive(const SuperoperatorMatrix& map, double tol) {
  const ChoiMatrix choi = choi_matrix(map);
  const double asym = max_asymmetry(choi.matrix());
  const double bound = choi_hermiticity_bound(choi.matrix());
  if (asym > bound) {
    std::ostringstream os;
    os << "is_completely_positive: map does not preserve Hermiticity (Choi asymmetry " << asym
       << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  CpVerdict v;
  v.route = CpRoute::kChoi;
  v.tolerance = tol;
  v.min_choi_eigenvalue = min_eigenvalue(choi.matrix(), bound);
  v.is_cp = *v.min_choi_eigenvalue >= -tol;
  return v;
}

CpVerdict kossakowski_cp_test(const KossakowskiMatrix& c, double tol) {
  CpVerdict v;
  v.route = CpRoute::kKossakowski;
  v.tolerance = tol;
  v.min_kossakowski_eigenvalue = c.min_eigenvalue();
  v.is_cp = *v.min_kossakowski_eigenvalue >= -tol;
  return v;
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : operators) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix KrausSet::completeness() const {
  if (operators.empty()) return {};
  const Index n = operators.front().cols();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& k : operators) out += k.adjoint() * k;
  return out;
}

SuperoperatorMatrix KrausSet::to_superoperator() const {
  return SuperoperatorMatrix::from_kraus(operators);
}

KrausSet kraus_decomposition(const ChoiMatrix& choi, double tol) {
  const Index n = choi.dimension();
  const HermitianEigensystem es =
      hermitian_eigensystem(choi.matrix(), choi_hermiticity_bound(choi.matrix()));
  const double lowest = es.eigenvalues(0);
  if (lowest < -tol) {
    std::ostringstream os;
    os << "kraus_decomposition: map is not completely positive (Choi eigenvalue " << lowest
       << " < -" << tol << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  const double largest = es.eigenvalues(es.eigenvalues.size() - 1);
  if (largest <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "kraus_decomposition: zero map has no Kraus form");
  }
  const double cutoff = 1e-12 * largest;
  KrausSet set;
  // Largest weights first.
  for (Index e = es.eigenvalues.size() - 1; e >= 0; --e) {
    const double lambda = es.eigenvalues(e);
    if (lambda <= cutoff) break;
    ComplexMatrix k(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index i = 0; i < n; ++i) k(a, i) = std::sqrt(lambda) * es.eigenvectors(a * n + i, e);
    set.operators.push_back(std::move(k));
    set.weights.push_back(lambda);
  }
  return set;
}

Lemma1Condition lemma1_condition(const KossakowskiMatrix& c1, const KossakowskiMatrix& c2,
                                 double tol) {
  const double lo = (c1 + c2).min_eigenvalue();
  return {lo >= -tol, lo};
}

namespace {

bool same_basis(const TracelessBasis& a, const TracelessBasis& b) {
  if (a.size() != b.size() || a.dimension() != b.dimension()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if ((a[i] - b[i]).cwiseAbs().maxCoeff() > 1e-14) return false;
  return true;
}

ComplexVector flatten_row_major(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  for (Index j = 0; j < m.rows(); ++j)
    for (Index k = 0; k < m.cols(); ++k) v(j * m.cols() + k) = m(j, k);
  return v;
}

// Solution space of W X = X W^T as columns of n^2-vectors (column-stacked X).
ComplexMatrix transpose_similarity_space(const ComplexMatrix& w) {
  const Index n = w.rows();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix m = kron(id, w) - kron(w, id);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, s(0));
  Index rank = 0;
  while (rank < s.size() && s(rank) > cutoff) ++rank;
  return svd.matrixV().rightCols(n * n - rank);
}

double condition_number(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  return smallest > 0.0 ? s(0) / smallest : std::numeric_limits<double>::infinity();
}

}  // namespace

Lemma1Witness lemma1_witness(const GeneratorSpec& g1, const GeneratorSpec& g2,
                             std::uint64_t seed) {
  const Index n = g1.dimension();
  if (g2.dimension() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "lemma1_witness: subsystem dimensions differ");
  }
  if (!same_basis(g1.basis(), g2.basis())) {
    throw Error(ErrorCode::kPrecondition,
                "lemma1_witness: both generators must use the same traceless basis");
  }
  const KossakowskiMatrix sum = g1.kossakowski() + g2.kossakowski();
  const HermitianEigensystem es = hermitian_eigensystem(sum.matrix());
  if (!(es.eigenvalues(0) < -1e-10)) {
    std::ostringstream os;
    os << "lemma1_witness: no witness exists, C1 + C2 >= 0 (min eigenvalue " << es.eigenvalues(0)
       << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }

  Lemma1Witness out;
  out.seed = seed;
  out.xi = es.eigenvectors.col(0);
  out.xi_eigenvalue = es.eigenvalues(0);
  out.xi_form = out.xi.dot(sum.matrix() * out.xi).real();

  const TracelessBasis& basis = g1.basis();
  out.w = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < basis.size(); ++i) out.w += out.xi(i) * basis[i];
  const ComplexMatrix wt = out.w.transpose();

  const ComplexMatrix space = transpose_similarity_space(out.w);
  constexpr int kMaxAttempts = 64;
  bool found = false;
  for (int attempt = 0; attempt < kMaxAttempts && !found; ++attempt) {
    Rng rng(mix_seed(seed, 0x1e33a1, static_cast<std::uint64_t>(attempt)));
    const ComplexVector coeffs = random_pure_state(space.cols(), rng);
    const ComplexMatrix candidate = unvec(space * coeffs, n);
    const double cond = condition_number(candidate);
    if (cond < 1e8) {
      out.phi = candidate;
      out.phi_condition_number = cond;
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::kNumerical,
                "lemma1_witness: no well-conditioned similarity W -> W^T found");
  }

  const Eigen::FullPivLU<ComplexMatrix> lu(out.phi);
  // Psi^dagger Phi = W^T with Psi^dagger = Phi^-1 W.
  const ComplexMatrix psi_dagger = lu.solve(out.w);
  out.psi = psi_dagger.adjoint();
  out.phi_vector = flatten_row_major(out.phi);
  out.psi_vector = flatten_row_major(out.psi);

  out.overlap = std::abs((out.phi * out.psi.adjoint()).trace());
  out.factorization_residual = (out.w - out.phi * out.psi.adjoint()).cwiseAbs().maxCoeff();
  out.similarity_residual = (lu.solve(out.w * out.phi) - wt).cwiseAbs().maxCoeff();

  const SuperoperatorMatrix generator = tensor_sum_generator(g1, g2);
  const ComplexMatrix image = generator.apply(outer(out.psi_vector, out.psi_vector));
  out.l_value = out.phi_vector.dot(image * out.phi_vector).real();
  return out;
}

double lemma1_overlap_at(const GeneratorSpec& g1, const GeneratorSpec& g2,
                         const Lemma1Witness& witness, double t) {
  const SuperoperatorMatrix generator = tensor_sum_generator(g1, g2);
  const ComplexMatrix evolved = SuperoperatorMatrix(generator.dimension(),
                                                    matrix_exponential(generator.matrix(), t))
                                    .apply(outer(witness.psi_vector, witness.psi_vector));
  return witness.phi_vector.dot(evolved * witness.phi_vector).real();
}

double perturbation_cp_interval(const KossakowskiMatrix& c, const ComplexMatrix& gamma,
                                double eps_max) {
  require_hermitian(gamma, kTolerances.hermiticity, "perturbation Gamma");
  if (gamma.rows() != c.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "perturbation_cp_interval: Gamma and C differ in dimension");
  }
  if (!(eps_max >= 0.0) || !std::isfinite(eps_max)) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation_cp_interval: eps_max must be >= 0");
  }
  constexpr double kSlack = 1e-10;
  const double base = c.min_eigenvalue();
  if (base < -kSlack) {
    std::ostringstream os;
    os << "perturbation_cp_interval: the unperturbed semigroup must be completely positive, "
          "but C has eigenvalue "
       << base;
    throw Error(ErrorCode::kPrecondition, os.str());
  }
  auto feasible = [&](double eps) {
    return min_eigenvalue(c.matrix() + eps * gamma) >= -kSlack;
  };
  if (feasible(eps_max)) return eps_max;
  double lo = 0.0;
  double hi = eps_max;
  const double stop = 1e-14 * std::max(1.0, eps_max);
  for (int it = 0; it < 200 && hi - lo > stop; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace gkscp
