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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "gkscp/cp_analysis.hpp"
#include "gkscp/error.hpp"
#include "gkscp/positivity.hpp"
#include "testutil.hpp"

namespace gkscp {
namespace {

using test::diag;
using test::max_abs;

constexpr double kPi = std::numbers::pi;

SuperoperatorMatrix counterexample_generator() {
  return tensor_sum_generator(elementary_generator(ElementaryEvolution::kUniformDamping, 4.0),
                              elementary_generator(ElementaryEvolution::kSigma2Damping, 4.0));
}

PositivitySearchOptions options(std::size_t budget, std::uint64_t seed, Index local = 0) {
  PositivitySearchOptions o;
  o.budget = budget;
  o.refinement_steps = 60;
  o.seed = seed;
  if (local > 0) o.local_dimension = local;
  return o;
}

TEST_CASE("elementary generators match the scaled coefficient matrices") {
  CHECK(elementary_generator(ElementaryEvolution::kUniformDamping, 4.0) == test::scaled_g1());
  CHECK(elementary_generator(ElementaryEvolution::kSigma2Damping, 4.0) == test::scaled_g2());
  CHECK_THROWS_AS(elementary_generator(ElementaryEvolution::kUniformDamping, 0.0), Error);
}

TEST_CASE("Schmidt decomposition round trip") {
  Rng rng(1);
  for (Index n : {2, 3}) {
    for (int k = 0; k < 10; ++k) {
      const ComplexVector psi = random_pure_state(n * n, rng);
      const SchmidtState s = schmidt_decompose(psi, n);
      CHECK(max_abs(s.assemble() - psi) <= 1e-12);
      CHECK(max_abs(s.frame1.adjoint() * s.frame1 - identity(n)) <= 1e-12);
      CHECK(max_abs(s.frame2.adjoint() * s.frame2 - identity(n)) <= 1e-12);
      double total = 0.0;
      for (double w : s.weights) total += w;
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(schmidt_decompose(ComplexVector::Zero(5), 2), Error);
}

TEST_CASE("Schmidt states from angles recover the angles") {
  Rng rng(2);
  const ComplexMatrix frame1 = random_unitary(2, rng);
  for (double mu : {0.0, 0.3, 1.0}) {
    for (double alpha : {0.0, 0.4, kPi / 2, 2.5, kPi}) {
      for (double varphi : {0.0, 1.0, -2.0}) {
        const SchmidtState s = SchmidtState::from_angles(mu, alpha, varphi, frame1);
        CHECK(std::abs(s.assemble().norm() - 1.0) <= 1e-12);
        CHECK(max_abs(s.frame2.adjoint() * s.frame2 - identity(2)) <= 1e-12);
        CHECK(std::abs(s.alpha() - alpha) <= 1e-12);
        if (alpha > 1e-9 && alpha < kPi - 1e-9) {
          CHECK(std::abs(std::remainder(s.varphi() - varphi, 2 * kPi)) <= 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(SchmidtState::from_angles(1.5, 0.0, 0.0, identity(2)), Error);
  CHECK_THROWS_AS(SchmidtState::from_angles(0.5, 0.0, 0.0, 2.0 * identity(2)), Error);
}

TEST_CASE("min output eigenvalue of the identity map is zero") {
  const PositivityReport r = min_output_eigenvalue(SuperoperatorMatrix::identity(3), options(50, 1));
  CHECK(std::abs(r.min_eigenvalue_found) <= 1e-12);
  CHECK(r.verdict == PositivityVerdict::kPositiveWithinBudget);
  CHECK(r.samples_used == 50);
  CHECK_THROWS_AS(min_output_eigenvalue(SuperoperatorMatrix::identity(3), options(0, 1)), Error);
}

TEST_CASE("the factorized counterexample shows no violation") {
  const PositivityReport r =
      min_output_eigenvalue_over_grid(counterexample_generator(), default_time_grid(), options(300, 3, 2));
  CHECK(r.verdict == PositivityVerdict::kPositiveWithinBudget);
  CHECK(r.min_eigenvalue_found >= -1e-10);
  CHECK(r.per_time.size() == default_time_grid().size());
  CHECK(r.note.find("does not prove") != std::string::npos);
}

TEST_CASE("two copies of the non-CP semigroup break positivity at t = 0.5") {
  const SuperoperatorMatrix l = tensor_sum_generator(test::scaled_g2(), test::scaled_g2());
  const PositivityReport r = min_output_eigenvalue_over_grid(l, {0.5}, options(300, 4, 2));
  CHECK(r.verdict == PositivityVerdict::kViolationFound);
  CHECK(r.min_eigenvalue_found < -0.2);
  // Re-evaluating the witness reproduces the reported value.
  const double again = output_min_eigenvalue(evolution_map(l, r.witness_time), r.witness_state);
  CHECK(std::abs(again - r.min_eigenvalue_found) <= 1e-9);
}

TEST_CASE("positivity search is reproducible from its seed") {
  const SuperoperatorMatrix l = tensor_sum_generator(test::scaled_g2(), test::scaled_g2());
  const PositivityReport a = min_output_eigenvalue_over_grid(l, {0.1, 1.0}, options(100, 9, 2));
  const PositivityReport b = min_output_eigenvalue_over_grid(l, {0.1, 1.0}, options(100, 9, 2));
  CHECK(a.witness_state == b.witness_state);
  CHECK(a.min_eigenvalue_found == b.min_eigenvalue_found);
  const PositivityReport c = min_output_eigenvalue_over_grid(l, {0.1, 1.0}, options(100, 10, 2));
  CHECK(c.witness_state != a.witness_state);
}

TEST_CASE("mixed inputs never beat their pure components") {
  Rng rng(5);
  const SuperoperatorMatrix map =
      evolution_map(tensor_sum_generator(test::scaled_g2(), test::scaled_g2()), 0.3);
  for (int k = 0; k < 200; ++k) {
    std::vector<ComplexVector> comps;
    std::vector<double> weights;
    ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double total = 0.0;
    for (int j = 0; j < 3; ++j) {
      comps.push_back(random_pure_state(4, rng));
      weights.push_back(u(rng));
      total += weights.back();
    }
    double pure_min = 1.0;
    for (int j = 0; j < 3; ++j) {
      rho += weights[j] / total * outer(comps[j], comps[j]);
      pure_min = std::min(pure_min, output_min_eigenvalue(map, comps[j]));
    }
    const double mixed = min_eigenvalue(map.apply(rho), 1e-10);
    CHECK(mixed >= pure_min - 1e-10);
  }
}

TEST_CASE("single qubit positivity") {
  const auto grid = default_time_grid();
  for (const GeneratorSpec& g : {test::scaled_g1(), test::scaled_g2()}) {
    const PositivityReport r = single_map_positivity_2d(superoperator_matrix(g), grid, options(200, 6));
    CHECK(r.verdict == PositivityVerdict::kPositiveWithinBudget);
    CHECK(r.analytically_certified);
    REQUIRE(r.min_determinant);
    CHECK(*r.min_determinant >= -1e-12);
  }
  const PositivityReport id =
      single_map_positivity_2d(superoperator_matrix(GeneratorSpec::zero(2)), grid, options(50, 6));
  CHECK(id.analytically_certified);
  CHECK(std::abs(*id.min_determinant) <= 1e-15);
  CHECK_THROWS_AS(single_map_positivity_2d(superoperator_matrix(GeneratorSpec::zero(3)), grid, options(5, 1)), Error);
}

TEST_CASE("Z_t matrix") {
  const ComplexMatrix late = counterexample_zt(0.3, 0.7, 0.2, 50.0, 4.0);
  CHECK(std::abs(late(0, 1)) <= 1e-80);
  CHECK(std::abs(late(0, 0) - 0.5 * std::cos(0.7) * (2 * 0.3 - 1)) <= 1e-15);
  CHECK(std::abs(late(1, 1) - 0.5 * std::cos(0.7) * (2 * 0.3 - 1)) <= 1e-15);
  for (double t : {0.0, 0.2, 1.0}) {
    const ComplexMatrix z = counterexample_zt(0.5, kPi / 2, 1.1, t, 4.0);
    CHECK(std::abs(z(0, 0)) <= 1e-16);
    CHECK(std::abs(z(1, 1)) <= 1e-16);
    CHECK(std::abs(std::abs(z(0, 1)) - std::exp(-4 * t) / 2) <= 1e-15);
  }
  Rng rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix z = counterexample_zt(u(rng), 7 * u(rng), 7 * u(rng), 3 * u(rng), 4.0);
    CHECK(max_asymmetry(z) <= 1e-15);
  }
  CHECK_THROWS_AS(counterexample_zt(-0.1, 0, 0, 1, 4), Error);
  CHECK_THROWS_AS(counterexample_zt(0.5, 0, 0, -1, 4), Error);
}

TEST_CASE("z eigenvalues") {
  const auto z0 = counterexample_eigenvalues(0.3, 1.0, 0.0, 4.0);
  CHECK(z0.z_plus == 0.0);
  CHECK(z0.z_minus == 0.0);
  for (double t : default_time_grid()) {
    const double s = std::exp(-4 * t);
    const auto z = counterexample_eigenvalues(0.5, kPi / 2, t, 4.0);
    CHECK(std::abs(z.z_plus - 0.25 * (1 - s) * (1 + s)) <= 1e-15);
    CHECK(std::abs(z.z_minus - 0.25 * (1 - s) * (1 - s)) <= 1e-15);
  }
  for (double mu : {0.0, 0.2, 0.9}) {
    for (double alpha : {0.3, 2.0, 4.0}) {
      const auto z = counterexample_eigenvalues(mu, alpha, 10.0, 4.0);
      const double a = std::abs(std::sin(alpha)) * std::abs(1 - 2 * mu);
      CHECK(std::abs(z.z_plus - 0.25 * (1 + a)) <= 1e-9);
      CHECK(std::abs(z.z_minus - 0.25 * (1 - a)) <= 1e-9);
    }
  }
  CHECK_THROWS_AS(counterexample_eigenvalues(2.0, 0, 0, 4), Error);
}

TEST_CASE("closed form matches numerical evolution at generic points") {
  const SuperoperatorMatrix l = counterexample_generator();
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const SchmidtState s =
        SchmidtState::from_angles(u(rng), kPi * u(rng), 2 * kPi * u(rng), random_unitary(2, rng));
    const double t = 2 * u(rng);
    const ClosedFormState cf = counterexample_state(s, t, 4.0);
    const ComplexVector psi = s.assemble();
    CHECK(max_abs(cf.total - evolution_map(l, t).apply(outer(psi, psi))) <= 1e-9);
    // Both terms are positive, so their sum is.
    CHECK(min_eigenvalue(cf.first_term, 1e-10) >= -1e-12);
    CHECK(min_eigenvalue(cf.second_term, 1e-10) >= -1e-12);
  }
}

TEST_CASE("full counterexample verification") {
  const CounterexampleReport rep = verify_counterexample(CounterexampleGrid::default_grid(), 4.0);
  CHECK(rep.all_passed);
  CHECK(rep.points.size() == 5 * 3 * 2 * 9);
  CHECK(rep.max_state_residual <= 1e-9);
  CHECK(rep.max_eigenvalue_residual <= 1e-9);
  CHECK(rep.min_z >= -1e-12);
  CHECK(rep.min_state_eigenvalue >= -1e-10);
  CHECK(rep.z_minimum.value >= -1e-12);
  CHECK(rep.z_minimum.grid_points == 10000);
  CHECK(rep.z_minimum.refined_starts == 10);
  for (const auto& p : rep.points) {
    if (p.mu == 0.0 || p.mu == 1.0) CHECK(p.min_state_eigenvalue >= -1e-12);
  }
}

TEST_CASE("z curves") {
  const auto rows = counterexample_curve(0.5, kPi / 2, 0.0, default_time_grid(), 4.0);
  REQUIRE(rows.size() == default_time_grid().size());
  CHECK(rows[0].z_plus == 0.0);
  CHECK(rows[0].z_minus == 0.0);
  for (const auto& r : rows) {
    const double s = std::exp(-4 * r.t);
    CHECK(std::abs(r.z_plus - 0.25 * (1 - s) * (1 + s)) <= 1e-15);
    CHECK(std::abs(r.min_eig_numeric - r.z_minus) <= 1e-9);
  }
  std::ostringstream os;
  write_curve_csv(os, rows);
  CHECK(os.str().rfind("t,z_plus,z_minus,min_eig_numeric\n0,0,0,", 0) == 0);
}

TEST_CASE("breakdown search") {
  const auto grid = default_time_grid();
  SECTION("non-CP qubit semigroup") {
    const PositivityReport r = theorem5_breakdown_search(test::scaled_g2(), grid, options(200, 1));
    CHECK(r.verdict == PositivityVerdict::kViolationFound);
    CHECK(r.min_eigenvalue_found <= -1e-6);
  }
  SECTION("transpose-like semigroup breaks the maximally entangled state") {
    const GeneratorSpec g(ComplexMatrix::Zero(2, 2), KossakowskiMatrix(2.0 * diag({1, 1, -1})));
    const PositivityReport r = theorem5_breakdown_search(g, grid, options(200, 2));
    CHECK(r.verdict == PositivityVerdict::kViolationFound);
    // Brute force over a Schmidt grid: the best point is (numerically) maximally entangled.
    const SuperoperatorMatrix l = tensor_sum_generator(g, g);
    double best = 1.0, best_mu = -1.0;
    for (int i = 0; i <= 20; ++i) {
      const double mu = i / 20.0;
      for (int j = 0; j <= 12; ++j) {
        for (int k = 0; k < 6; ++k) {
          const SchmidtState s = SchmidtState::from_angles(mu, kPi * j / 12, 2 * kPi * k / 6, identity(2));
          const double v = output_min_eigenvalue(evolution_map(l, 10.0), s.assemble());
          if (v < best) best = v, best_mu = mu;
        }
      }
    }
    CHECK(best < -0.1);
    CHECK(best_mu == Catch::Approx(0.5));
    CHECK(r.min_eigenvalue_found <= best + 1e-9);
  }
  SECTION("CP generators are rejected") {
    CHECK_THROWS_AS(theorem5_breakdown_search(test::scaled_g1(), grid, options(10, 1)), Error);
  }
}

}  // namespace
}  // namespace gkscp
