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

#include "gkscp/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gkscp/cp_analysis.hpp"
#include "gkscp/error.hpp"

namespace gkscp {

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix two_by_two_columns(const ComplexVector& a, const ComplexVector& b) {
  ComplexMatrix m(2, 2);
  m.col(0) = a;
  m.col(1) = b;
  return m;
}

// Minimizes f on [a, b]; returns (argmin, min). Also compares the endpoints,
// which golden-section search never evaluates.
std::pair<double, double> golden_minimize(const std::function<double(double)>& f, double a,
                                          double b, int iterations) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    }
  }
  std::pair<double, double> best = f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
  for (double x : {a, b}) {
    const double v = f(x);
    if (v < best.second) best = {x, v};
  }
  return best;
}

double lowest_eigenvalue_of_hermitian_part(const ComplexMatrix& y) {
  const ComplexMatrix sym = 0.5 * (y + y.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

ComplexMatrix hermitian_from_coordinates(const double* h, Index n) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  Index p = 0;
  for (Index i = 0; i < n; ++i) m(i, i) = h[p++];
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      m(i, j) = Complex(h[p], h[p + 1]);
      m(j, i) = std::conj(m(i, j));
      p += 2;
    }
  }
  return m;
}

// Maps a real parameter vector to a unit vector around a base state.
class Parameterization {
 public:
  virtual ~Parameterization() = default;
  virtual std::vector<double> initial() const = 0;
  virtual ComplexVector state(const std::vector<double>& p) const = 0;
};

class AmbientParameterization final : public Parameterization {
 public:
  explicit AmbientParameterization(ComplexVector base) : base_(std::move(base)) {}

  std::vector<double> initial() const override {
    return std::vector<double>(static_cast<size_t>(2 * base_.size()), 0.0);
  }

  ComplexVector state(const std::vector<double>& p) const override {
    ComplexVector v = base_;
    for (Index k = 0; k < base_.size(); ++k) {
      v(k) += Complex(p[static_cast<size_t>(2 * k)], p[static_cast<size_t>(2 * k + 1)]);
    }
    const double norm = v.norm();
    return norm > 0.0 ? ComplexVector(v / norm) : base_;
  }

 private:
  ComplexVector base_;
};

// Schmidt weights via theta_i^2 / sum theta^2 and local frames U_a exp(i H(h_a)).
class SchmidtParameterization final : public Parameterization {
 public:
  explicit SchmidtParameterization(const SchmidtState& base) : base_(base) {}

  std::vector<double> initial() const override {
    const Index n = base_.local_dimension();
    std::vector<double> p(static_cast<size_t>(n + 2 * n * n), 0.0);
    for (Index i = 0; i < n; ++i) p[static_cast<size_t>(i)] = std::sqrt(base_.weights[static_cast<size_t>(i)]);
    return p;
  }

  ComplexVector state(const std::vector<double>& p) const override {
    const Index n = base_.local_dimension();
    SchmidtState s;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) total += p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
    if (total <= 0.0) return base_.assemble();
    for (Index i = 0; i < n; ++i) s.weights.push_back(p[static_cast<size_t>(i)] * p[static_cast<size_t>(i)] / total);
    const ComplexMatrix h1 = hermitian_from_coordinates(p.data() + n, n);
    const ComplexMatrix h2 = hermitian_from_coordinates(p.data() + n + n * n, n);
    s.frame1 = base_.frame1 * matrix_exponential(kI * h1, 1.0);
    s.frame2 = base_.frame2 * matrix_exponential(kI * h2, 1.0);
    return s.assemble();
  }

 private:
  SchmidtState base_;
};

struct SearchOutcome {
  double value = 0.0;
  ComplexVector witness;
  std::size_t samples = 0;
  std::size_t steps = 0;
};

void require_hermiticity_preserving(const SuperoperatorMatrix& map) {
  const ChoiMatrix choi = choi_matrix(map);
  const double asym = max_asymmetry(choi.matrix());
  if (asym > 1e-9 * std::max(1.0, choi.matrix().cwiseAbs().maxCoeff())) {
    std::ostringstream os;
    os << "positivity search: map does not preserve Hermiticity (Choi asymmetry " << asym << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }
}

SearchOutcome search_single_map(const SuperoperatorMatrix& map,
                                const PositivitySearchOptions& options, std::uint64_t stream) {
  const Index d = map.dimension();
  SearchOutcome out;
  out.value = std::numeric_limits<double>::infinity();
  auto consider = [&](const ComplexVector& psi) {
    const double v = output_min_eigenvalue(map, psi);
    if (v < out.value) {
      out.value = v;
      out.witness = psi;
    }
  };
  for (const auto& s : options.seed_states) {
    if (s.size() != d) throw Error(ErrorCode::kDimensionMismatch, "seed state has wrong dimension");
    consider(s / s.norm());
  }
  for (std::size_t i = 0; i < options.budget; ++i) {
    Rng rng(mix_seed(options.seed, stream, i));
    consider(random_pure_state(d, rng));
  }
  out.samples = options.seed_states.size() + options.budget;

  std::unique_ptr<Parameterization> param;
  if (options.local_dimension) {
    param = std::make_unique<SchmidtParameterization>(
        schmidt_decompose(out.witness, *options.local_dimension));
  } else {
    param = std::make_unique<AmbientParameterization>(out.witness);
  }
  std::vector<double> p = param->initial();
  double best = output_min_eigenvalue(map, param->state(p));
  const std::size_t coords = p.size();
  double delta = 0.5;
  bool improved_in_sweep = false;
  for (std::size_t step = 0; step < options.refinement_steps; ++step) {
    const std::size_t k = step % coords;
    if (k == 0 && step > 0) {
      delta *= improved_in_sweep ? 0.8 : 0.5;
      improved_in_sweep = false;
    }
    std::vector<double> trial = p;
    auto line = [&](double x) {
      trial[k] = x;
      return output_min_eigenvalue(map, param->state(trial));
    };
    const auto [x, v] = golden_minimize(line, p[k] - delta, p[k] + delta, 20);
    if (v < best) {
      p[k] = x;
      best = v;
      improved_in_sweep = true;
    }
  }
  out.steps = options.refinement_steps;
  const ComplexVector refined = param->state(p);
  const double refined_value = output_min_eigenvalue(map, refined);
  if (refined_value < out.value) {
    out.value = refined_value;
    out.witness = refined;
  }
  return out;
}

void finish_verdict(PositivityReport& report, double tol) {
  if (report.min_eigenvalue_found < -tol) {
    report.verdict = PositivityVerdict::kViolationFound;
    report.note = "violation found: the witness state evolves into an operator with a negative "
                  "eigenvalue";
  } else {
    report.verdict = PositivityVerdict::kPositiveWithinBudget;
    report.note = "no violation found within the sampling budget; this does not prove positivity";
  }
}

}  // namespace

ComplexVector SchmidtState::assemble() const {
  const Index n = local_dimension();
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (Index i = 0; i < n; ++i) {
    psi += std::sqrt(weights[static_cast<size_t>(i)]) * kron(frame1.col(i), frame2.col(i));
  }
  return psi;
}

// <phi_1|sigma_2|phi_1> = cos(alpha) and <phi_2|sigma_2|phi_1> = e^{i varphi} sin(alpha);
// atan2 keeps alpha accurate near 0 and pi where acos loses half the digits.
double SchmidtState::alpha() const {
  const Complex c = frame2.col(0).dot(pauli(2) * frame2.col(0));
  const Complex d = frame2.col(1).dot(pauli(2) * frame2.col(0));
  return std::atan2(std::abs(d), c.real());
}

double SchmidtState::varphi() const {
  const Complex c = frame2.col(1).dot(pauli(2) * frame2.col(0));
  return std::abs(c) > 1e-14 ? std::arg(c) : 0.0;
}

SchmidtState SchmidtState::from_angles(double mu, double alpha, double varphi,
                                       const ComplexMatrix& frame1) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Schmidt weight mu must lie in [0, 1]");
  }
  if (frame1.rows() != 2 || frame1.cols() != 2 ||
      (frame1.adjoint() * frame1 - identity(2)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::kInvalidArgument, "Schmidt frame must be a 2x2 unitary");
  }
  const double r = 1.0 / std::sqrt(2.0);
  ComplexVector yp(2), ym(2);
  yp << r, kI * r;  // sigma_2 eigenvalue +1
  ym << r, -kI * r;  // sigma_2 eigenvalue -1
  const ComplexVector phi1 = std::cos(alpha / 2) * yp + std::sin(alpha / 2) * ym;
  const ComplexVector phi2 =
      std::exp(kI * (kPi - varphi)) * (-std::sin(alpha / 2) * yp + std::cos(alpha / 2) * ym);
  SchmidtState s;
  s.weights = {mu, 1.0 - mu};
  s.frame1 = frame1;
  s.frame2 = two_by_two_columns(phi1, phi2);
  return s;
}

SchmidtState schmidt_decompose(const ComplexVector& psi, Index n) {
  if (psi.size() != n * n) {
    throw Error(ErrorCode::kDimensionMismatch, "schmidt_decompose: vector length is not n^2");
  }
  ComplexMatrix coeff(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k) coeff(j, k) = psi(j * n + k);
  Eigen::JacobiSVD<ComplexMatrix> svd(coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SchmidtState s;
  const double norm2 = psi.squaredNorm();
  for (Index i = 0; i < n; ++i) {
    const double sv = svd.singularValues()(i);
    s.weights.push_back(sv * sv / norm2);
  }
  s.frame1 = svd.matrixU();
  s.frame2 = svd.matrixV().conjugate();
  return s;
}

const char* to_string(PositivityVerdict v) {
  return v == PositivityVerdict::kViolationFound ? "violation-found" : "positive-within-budget";
}

double output_min_eigenvalue(const SuperoperatorMatrix& map, const ComplexVector& psi) {
  return lowest_eigenvalue_of_hermitian_part(map.apply(outer(psi, psi)));
}

PositivityReport min_output_eigenvalue(const SuperoperatorMatrix& map,
                                       const PositivitySearchOptions& options) {
  if (options.budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "positivity search: budget must be positive");
  }
  if (options.local_dimension &&
      *options.local_dimension * *options.local_dimension != map.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "positivity search: local dimension squared must equal the map dimension");
  }
  require_hermiticity_preserving(map);
  const SearchOutcome o = search_single_map(map, options, 0);
  PositivityReport r;
  r.seed = options.seed;
  r.min_eigenvalue_found = o.value;
  r.witness_state = o.witness;
  r.samples_used = o.samples;
  r.refinement_steps = o.steps;
  r.per_time.push_back({0.0, o.value});
  finish_verdict(r, options.tolerance);
  return r;
}

PositivityReport min_output_eigenvalue_over_grid(const SuperoperatorMatrix& generator,
                                                 const std::vector<double>& grid,
                                                 const PositivitySearchOptions& options) {
  if (options.budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "positivity search: budget must be positive");
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "positivity search: empty time grid");
  if (options.local_dimension &&
      *options.local_dimension * *options.local_dimension != generator.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "positivity search: local dimension squared must equal the map dimension");
  }
  PositivityReport r;
  r.seed = options.seed;
  r.min_eigenvalue_found = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const SuperoperatorMatrix map = evolution_map(generator, grid[k]);
    if (k == 0) require_hermiticity_preserving(map);
    const SearchOutcome o = search_single_map(map, options, k);
    r.per_time.push_back({grid[k], o.value});
    r.samples_used += o.samples;
    r.refinement_steps += o.steps;
    if (o.value < r.min_eigenvalue_found) {
      r.min_eigenvalue_found = o.value;
      r.witness_state = o.witness;
      r.witness_time = grid[k];
    }
  }
  finish_verdict(r, options.tolerance);
  return r;
}

PositivityReport single_map_positivity_2d(const SuperoperatorMatrix& generator,
                                          const std::vector<double>& grid,
                                          const PositivitySearchOptions& options) {
  if (generator.dimension() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "single_map_positivity_2d: qubit maps only");
  }
  if (options.budget == 0) {
    throw Error(ErrorCode::kInvalidArgument, "positivity search: budget must be positive");
  }
  PositivityReport r;
  r.seed = options.seed;
  r.analytically_certified = true;
  r.min_eigenvalue_found = std::numeric_limits<double>::infinity();
  double min_det = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const SuperoperatorMatrix map = evolution_map(generator, grid[k]);
    // Pauli transfer matrix R_{mu nu} = Tr(sigma_mu gamma[sigma_nu]) / 2.
    Eigen::Matrix4d transfer;
    for (int nu = 0; nu < 4; ++nu) {
      const ComplexMatrix image = map.apply(pauli(nu));
      for (int mu = 0; mu < 4; ++mu) transfer(mu, nu) = 0.5 * (pauli(mu) * image).trace().real();
    }
    const double affine_err =
        std::max({std::abs(transfer(0, 0) - 1.0), transfer.row(0).tail(3).cwiseAbs().maxCoeff(),
                  transfer.col(0).tail(3).cwiseAbs().maxCoeff()});
    const Eigen::Matrix3d block = transfer.bottomRightCorner(3, 3);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(block);
    if (affine_err > 1e-12 || svd.singularValues()(0) > 1.0 + 1e-12) r.analytically_certified = false;

    double time_min = std::numeric_limits<double>::infinity();
    for (const auto& s : options.seed_states) {
      const ComplexMatrix out = map.apply(outer(s / s.norm(), s / s.norm()));
      min_det = std::min(min_det, out.determinant().real());
      time_min = std::min(time_min, lowest_eigenvalue_of_hermitian_part(out));
    }
    for (std::size_t i = 0; i < options.budget; ++i) {
      Rng rng(mix_seed(options.seed, k, i));
      const ComplexVector psi = random_pure_state(2, rng);
      const ComplexMatrix out = map.apply(outer(psi, psi));
      min_det = std::min(min_det, out.determinant().real());
      const double v = lowest_eigenvalue_of_hermitian_part(out);
      if (v < time_min) time_min = v;
      if (v < r.min_eigenvalue_found) {
        r.min_eigenvalue_found = v;
        r.witness_state = psi;
        r.witness_time = grid[k];
      }
    }
    r.samples_used += options.seed_states.size() + options.budget;
    r.per_time.push_back({grid[k], time_min});
  }
  r.min_determinant = min_det;
  if (min_det < -1e-12) {
    r.verdict = PositivityVerdict::kViolationFound;
    r.note = "violation found: a pure state is mapped to a matrix with negative determinant";
  } else {
    r.verdict = PositivityVerdict::kPositiveWithinBudget;
    r.note = r.analytically_certified
                 ? "positive: every sampled map contracts the Bloch ball into itself"
                 : "no violation found within the sampling budget; this does not prove positivity";
  }
  return r;
}

GeneratorSpec elementary_generator(ElementaryEvolution which, double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "elementary_generator: rate must be > 0");
  ComplexMatrix c = ComplexMatrix::Identity(3, 3);
  if (which == ElementaryEvolution::kSigma2Damping) c(1, 1) = -1.0;
  return GeneratorSpec(ComplexMatrix::Zero(2, 2), KossakowskiMatrix(0.5 * rate * c));
}

namespace {

void check_counterexample_domain(double mu, double t, double rate) {
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "counterexample: mu must lie in [0, 1]");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "counterexample: t must be >= 0");
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "counterexample: rate must be > 0");
}

}  // namespace

ComplexMatrix counterexample_zt(double mu, double alpha, double varphi, double t, double rate) {
  check_counterexample_domain(mu, t, rate);
  const double s = std::exp(-rate * t);
  const double off = std::sin(alpha) * s * std::sqrt(mu * (1.0 - mu));
  ComplexMatrix z(2, 2);
  z(0, 0) = 0.5 * std::cos(alpha) * (2.0 * mu - 1.0 + s);
  z(1, 1) = 0.5 * std::cos(alpha) * (2.0 * mu - 1.0 - s);
  z(0, 1) = std::exp(kI * varphi) * off;
  z(1, 0) = std::exp(-kI * varphi) * off;
  return z;
}

CounterexampleEigenvalues counterexample_eigenvalues(double mu, double alpha, double t,
                                                     double rate) {
  check_counterexample_domain(mu, t, rate);
  const double s = std::exp(-rate * t);
  const double sin_term = std::sin(alpha) * (1.0 - 2.0 * mu);
  // 1 - (1 - s^2)(1 - q^2), expanded to avoid cancellation when both are small.
  const double radicand = s * s + sin_term * sin_term * (1.0 - s * s);
  const double root = std::sqrt(std::max(0.0, radicand));
  const double prefactor = 0.25 * (1.0 - s);
  return {prefactor * (1.0 + root), prefactor * (1.0 - root)};
}

ClosedFormState counterexample_state(const SchmidtState& initial, double t, double rate) {
  if (initial.local_dimension() != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "counterexample_state: qubit pairs only");
  }
  const double mu = initial.mu();
  const double s = std::exp(-rate * t);
  const ComplexMatrix z = counterexample_zt(mu, initial.alpha(), initial.varphi(), t, rate);
  const ComplexMatrix z_op = initial.frame1 * z * initial.frame1.adjoint();
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = mu;
  d(1, 1) = 1.0 - mu;
  const ComplexMatrix d_op = initial.frame2 * d * initial.frame2.adjoint();
  const ComplexVector psi = initial.assemble();
  ClosedFormState out;
  out.first_term = s * outer(psi, psi);
  out.second_term = 0.5 * (1.0 - s) * (kron(identity(2), d_op) - kron(z_op, pauli(2)));
  out.total = out.first_term + out.second_term;
  return out;
}

CounterexampleGrid CounterexampleGrid::default_grid() {
  return {{0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, kPi / 4, kPi / 2}, {0.0, kPi / 3},
          default_time_grid()};
}

namespace {

// Fixed, generic frame for the first subsystem; the closed form must hold
// for any choice.
ComplexMatrix reference_frame() {
  const ComplexMatrix h = 0.3 * pauli(1) + 0.5 * pauli(2) + 0.7 * pauli(3);
  return matrix_exponential(kI * h, 1.0);
}

}  // namespace

CounterexampleReport verify_counterexample(const CounterexampleGrid& grid, double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidArgument, "verify_counterexample: rate must be > 0");
  const SuperoperatorMatrix generator =
      tensor_sum_generator(elementary_generator(ElementaryEvolution::kUniformDamping, rate),
                           elementary_generator(ElementaryEvolution::kSigma2Damping, rate));
  std::vector<SuperoperatorMatrix> maps;
  maps.reserve(grid.t.size());
  for (double t : grid.t) maps.push_back(evolution_map(generator, t));

  const ComplexMatrix frame1 = reference_frame();
  CounterexampleReport rep;
  rep.rate = rate;
  rep.min_z = std::numeric_limits<double>::infinity();
  rep.min_state_eigenvalue = std::numeric_limits<double>::infinity();
  rep.all_passed = true;
  for (double mu : grid.mu) {
    for (double alpha : grid.alpha) {
      for (double varphi : grid.varphi) {
        const SchmidtState initial = SchmidtState::from_angles(mu, alpha, varphi, frame1);
        const ComplexVector psi = initial.assemble();
        const ComplexMatrix rho0 = outer(psi, psi);
        for (std::size_t k = 0; k < grid.t.size(); ++k) {
          const double t = grid.t[k];
          CounterexamplePoint pt;
          pt.mu = mu;
          pt.alpha = alpha;
          pt.varphi = varphi;
          pt.t = t;
          const ComplexMatrix numeric = maps[k].apply(rho0);
          const ClosedFormState closed = counterexample_state(initial, t, rate);
          pt.state_residual = (closed.total - numeric).cwiseAbs().maxCoeff();

          const auto z = counterexample_eigenvalues(mu, alpha, t, rate);
          pt.z_minus = z.z_minus;
          const HermitianEigensystem second = hermitian_eigensystem(closed.second_term, 1e-12);
          const std::array<double, 4> expected{z.z_minus, z.z_minus, z.z_plus, z.z_plus};
          for (int i = 0; i < 4; ++i) {
            pt.eigenvalue_residual = std::max(
                pt.eigenvalue_residual, std::abs(second.eigenvalues(i) - expected[static_cast<size_t>(i)]));
          }
          pt.min_state_eigenvalue = lowest_eigenvalue_of_hermitian_part(numeric);
          pt.min_first_term_eigenvalue = lowest_eigenvalue_of_hermitian_part(closed.first_term);
          pt.passed = pt.state_residual <= 1e-9 && pt.eigenvalue_residual <= 1e-9 &&
                      z.z_minus >= -1e-12 && z.z_plus >= -1e-12 &&
                      pt.min_state_eigenvalue >= -1e-10 && pt.min_first_term_eigenvalue >= -1e-12;

          rep.max_state_residual = std::max(rep.max_state_residual, pt.state_residual);
          rep.max_eigenvalue_residual = std::max(rep.max_eigenvalue_residual, pt.eigenvalue_residual);
          rep.min_z = std::min(rep.min_z, z.z_minus);
          rep.min_state_eigenvalue = std::min(rep.min_state_eigenvalue, pt.min_state_eigenvalue);
          rep.all_passed = rep.all_passed && pt.passed;
          rep.points.push_back(pt);
        }
      }
    }
  }
  rep.z_minimum = minimize_counterexample_eigenvalue(rate);
  rep.all_passed = rep.all_passed && rep.z_minimum.value >= -1e-12;
  return rep;
}

ExtremumSearch minimize_counterexample_eigenvalue(double rate) {
  constexpr int kMu = 25, kAlpha = 25, kTime = 16;
  constexpr double kTMax = 10.0;
  auto z_minus = [rate](double mu, double alpha, double t) {
    return counterexample_eigenvalues(std::clamp(mu, 0.0, 1.0), alpha, std::max(t, 0.0), rate)
        .z_minus;
  };
  struct Sample {
    double value, mu, alpha, t;
  };
  std::vector<Sample> samples;
  samples.reserve(kMu * kAlpha * kTime);
  for (int i = 0; i < kMu; ++i) {
    const double mu = static_cast<double>(i) / (kMu - 1);
    for (int j = 0; j < kAlpha; ++j) {
      const double alpha = 2.0 * kPi * j / kAlpha;
      for (int k = 0; k < kTime; ++k) {
        // 0 followed by a geometric ladder from 1e-3 to kTMax
        const double t = k == 0 ? 0.0 : 1e-3 * std::pow(kTMax / 1e-3, (k - 1) / double(kTime - 2));
        samples.push_back({z_minus(mu, alpha, t), mu, alpha, t});
      }
    }
  }
  std::stable_sort(samples.begin(), samples.end(),
                   [](const Sample& a, const Sample& b) { return a.value < b.value; });

  ExtremumSearch best;
  best.grid_points = samples.size();
  best.value = samples.front().value;
  best.mu = samples.front().mu;
  best.alpha = samples.front().alpha;
  best.t = samples.front().t;
  const std::size_t starts = std::min<std::size_t>(10, samples.size());
  for (std::size_t s = 0; s < starts; ++s) {
    std::array<double, 3> x{samples[s].mu, samples[s].alpha, samples[s].t};
    const std::array<double, 3> lo{0.0, 0.0, 0.0};
    const std::array<double, 3> hi{1.0, 2.0 * kPi, kTMax};
    double value = samples[s].value;
    for (int sweep = 0; sweep < 20; ++sweep) {
      const double width = 0.25 * std::pow(0.6, sweep);
      for (int c = 0; c < 3; ++c) {
        auto line = [&](double v) {
          auto y = x;
          y[static_cast<size_t>(c)] = v;
          return z_minus(y[0], y[1], y[2]);
        };
        const double span = width * (hi[static_cast<size_t>(c)] - lo[static_cast<size_t>(c)]);
        const double a = std::max(lo[static_cast<size_t>(c)], x[static_cast<size_t>(c)] - span);
        const double b = std::min(hi[static_cast<size_t>(c)], x[static_cast<size_t>(c)] + span);
        const auto [arg, v] = golden_minimize(line, a, b, 30);
        if (v < value) {
          value = v;
          x[static_cast<size_t>(c)] = arg;
        }
      }
    }
    if (value < best.value) {
      best.value = value;
      best.mu = x[0];
      best.alpha = x[1];
      best.t = x[2];
    }
  }
  best.refined_starts = starts;
  return best;
}

std::vector<CurveRow> counterexample_curve(double mu, double alpha, double varphi,
                                           const std::vector<double>& grid, double rate) {
  const SuperoperatorMatrix generator =
      tensor_sum_generator(elementary_generator(ElementaryEvolution::kUniformDamping, rate),
                           elementary_generator(ElementaryEvolution::kSigma2Damping, rate));
  const SchmidtState initial = SchmidtState::from_angles(mu, alpha, varphi, reference_frame());
  const ComplexVector psi = initial.assemble();
  const ComplexMatrix rho0 = outer(psi, psi);
  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (double t : grid) {
    const auto z = counterexample_eigenvalues(mu, alpha, t, rate);
    const ComplexMatrix numeric = evolution_map(generator, t).apply(rho0);
    const double numeric_second =
        lowest_eigenvalue_of_hermitian_part(numeric - std::exp(-rate * t) * rho0);
    rows.push_back({t, z.z_plus, z.z_minus, numeric_second});
  }
  return rows;
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "t,z_plus,z_minus,min_eig_numeric\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.t << ',' << r.z_plus << ',' << r.z_minus << ',' << r.min_eig_numeric << '\n';
  }
}

PositivityReport theorem5_breakdown_search(const GeneratorSpec& g, const std::vector<double>& grid,
                                           const PositivitySearchOptions& options) {
  const CpVerdict cp = kossakowski_cp_test(g.kossakowski(), options.tolerance);
  if (cp.is_cp) {
    throw Error(ErrorCode::kPrecondition,
                "breakdown search: the generator is completely positive, so gamma_t (x) gamma_t "
                "is positive and no breakdown exists");
  }
  const Index n = g.dimension();
  const SuperoperatorMatrix single = superoperator_matrix(g);
  PositivitySearchOptions single_opts = options;
  single_opts.local_dimension.reset();
  single_opts.seed_states.clear();
  const PositivityReport single_report = n == 2
                                             ? single_map_positivity_2d(single, grid, single_opts)
                                             : min_output_eigenvalue_over_grid(single, grid, single_opts);
  if (single_report.verdict == PositivityVerdict::kViolationFound) {
    std::ostringstream os;
    os << "breakdown search: gamma_t itself is not positive (eigenvalue "
       << single_report.min_eigenvalue_found << " at t = " << single_report.witness_time << ")";
    throw Error(ErrorCode::kPrecondition, os.str());
  }

  PositivitySearchOptions pair_opts = options;
  pair_opts.local_dimension = n;
  const Lemma1Condition pair = lemma1_condition(g.kossakowski(), g.kossakowski(), options.tolerance);
  bool seeded = false;
  if (!pair.holds && pair.min_eigenvalue < -1e-10) {
    const Lemma1Witness w = lemma1_witness(g, g, options.seed);
    pair_opts.seed_states.push_back(w.psi_vector / w.psi_vector.norm());
    seeded = true;
  }
  PositivityReport r =
      min_output_eigenvalue_over_grid(tensor_sum_generator(g, g), grid, pair_opts);
  if (r.verdict == PositivityVerdict::kPositiveWithinBudget) {
    r.note = "inconclusive: gamma_t is positive but not completely positive, so gamma_t (x) "
             "gamma_t must fail positivity somewhere; the budget was insufficient to find it";
  } else if (seeded) {
    r.note += " (search seeded with the pair-condition witness)";
  }
  return r;
}

}  // namespace gkscp
