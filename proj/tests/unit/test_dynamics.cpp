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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "gkscp/dynamics.hpp"
#include "gkscp/error.hpp"
#include "testutil.hpp"

namespace gkscp {
namespace {

using test::max_abs;

const std::vector<double> kGrid{0.0, 0.1, 1.0, 10.0};

GeneratorSpec random_cp_generator(Index n, Rng& rng) {
  return GeneratorSpec(random_hermitian(n, rng), test::random_psd_kossakowski(n, rng));
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
  CHECK(DensityMatrix::maximally_mixed(4).purity() == Catch::Approx(0.25));
  CHECK_THROWS_AS(DensityMatrix(identity(2)), Error);
  CHECK_THROWS_AS(DensityMatrix(0.5 * (identity(2) + 2.0 * pauli(3))), Error);
  ComplexMatrix nonherm = 0.5 * identity(2);
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(nonherm), Error);
  ComplexVector psi(2);
  psi << 3.0, Complex(0.0, 4.0);
  CHECK(DensityMatrix::pure(psi).purity() == Catch::Approx(1.0));
}

TEST_CASE("evolution_map") {
  SECTION("zero generator gives the identity") {
    const SuperoperatorMatrix l = superoperator_matrix(GeneratorSpec::zero(2));
    for (double t : {0.0, 1.0, 5.0}) CHECK(max_abs(evolution_map(l, t).matrix() - identity(4)) == 0.0);
  }
  SECTION("t = 0 is exactly the identity for any generator") {
    Rng rng(1);
    const SuperoperatorMatrix l = superoperator_matrix(random_cp_generator(3, rng));
    CHECK(evolution_map(l, 0.0).matrix() == identity(9));
  }
  SECTION("uniform damping multiplies every Pauli component by exp(-4t)") {
    const SuperoperatorMatrix l = superoperator_matrix(test::scaled_g1());
    for (double t : default_time_grid()) {
      const SuperoperatorMatrix g = evolution_map(l, t);
      CHECK(max_abs(g.apply(identity(2)) - identity(2)) <= 1e-12);
      for (int k = 1; k <= 3; ++k) CHECK(max_abs(g.apply(pauli(k)) - std::exp(-4.0 * t) * pauli(k)) <= 1e-12);
    }
  }
  SECTION("semigroup law") {
    Rng rng(2);
    const SuperoperatorMatrix l = superoperator_matrix(random_cp_generator(2, rng));
    const ComplexMatrix lhs = (evolution_map(l, 0.3) * evolution_map(l, 0.7)).matrix();
    CHECK(operator_norm(lhs - evolution_map(l, 1.0).matrix()) <= 1e-10);
  }
  SECTION("negative time") {
    CHECK_THROWS_AS(evolution_map(superoperator_matrix(test::scaled_g1()), -0.1), Error);
  }
}

TEST_CASE("semigroup composition on random generators") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(mix_seed(41, s));
    const SuperoperatorMatrix l = superoperator_matrix(random_cp_generator(s % 2 ? 3 : 2, rng));
    for (double t : {0.1, 0.5, 1.0}) {
      for (double u : {0.1, 1.0}) {
        const ComplexMatrix d =
            (evolution_map(l, t) * evolution_map(l, u)).matrix() - evolution_map(l, t + u).matrix();
        CHECK(operator_norm(d) <= 1e-10);
      }
    }
  }
}

TEST_CASE("evolve_state preserves trace and Hermiticity") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(mix_seed(43, s));
    const Index n = s % 2 ? 3 : 2;
    // Arbitrary Hermitian C: not necessarily CP, still trace and Hermiticity preserving.
    const GeneratorSpec g(random_hermitian(n, rng), KossakowskiMatrix(random_hermitian(n * n - 1, rng)));
    const SuperoperatorMatrix l = superoperator_matrix(g);
    const DensityMatrix rho(test::random_density(n, rng));
    for (double t : kGrid) {
      const EvolvedState e = evolve_state(l, rho, t);
      // A non-positive semigroup can grow exponentially, so rounding is relative to the entries.
      const double scale = std::max(1.0, max_abs(e.matrix));
      CHECK(e.trace_residual <= 1e-12 * scale);
      CHECK(std::abs(e.matrix.trace() - 1.0) <= 1e-12 * scale);
      CHECK(max_asymmetry(e.matrix) <= 1e-12);
    }
  }
}

TEST_CASE("evolve_state examples") {
  Rng rng(4);
  const DensityMatrix rho(test::random_density(2, rng));
  const SuperoperatorMatrix l2 = superoperator_matrix(test::scaled_g2());
  CHECK(evolve_state(l2, rho, 0.0).matrix == rho.matrix());

  const DensityMatrix plus(0.5 * (identity(2) + pauli(1)));
  for (double t : default_time_grid()) {
    CHECK(max_abs(evolve_state(l2, plus, t).matrix - plus.matrix()) <= 1e-12);
  }
  CHECK_THROWS_AS(evolve_state(l2, plus, -1.0), Error);
  CHECK_THROWS_AS(evolve_state(l2, DensityMatrix::maximally_mixed(3), 1.0), Error);
}

TEST_CASE("negative eigenvalues are reported, not clipped") {
  // gamma^(2) (x) gamma^(2) is not positive: it breaks the (|00> + |11>)/sqrt(2) state.
  const SuperoperatorMatrix l = tensor_sum_generator(test::scaled_g2(), test::scaled_g2());
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const EvolvedState e = evolve_state(l, DensityMatrix::pure(bell), 0.5);
  CHECK(e.min_eigenvalue < -0.1);
  CHECK(e.min_eigenvalue == Catch::Approx(min_eigenvalue(e.matrix, 1e-9)).margin(1e-14));
  CHECK_THROWS_AS(e.as_density_matrix(), Error);
}

TEST_CASE("purity under uniform damping decreases monotonically to 1/2") {
  const SuperoperatorMatrix l = superoperator_matrix(test::scaled_g1());
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(mix_seed(44, s));
    const ComplexVector psi = random_pure_state(2, rng);
    const DensityMatrix rho = DensityMatrix::pure(psi);
    double previous = 1.0 + 1e-12;
    for (double t : default_time_grid()) {
      const double purity = evolve_state(l, rho, t).as_density_matrix().purity();
      // Closed form: purity = (1 + e^{-8t}) / 2 for a pure input.
      CHECK(std::abs(purity - 0.5 * (1.0 + std::exp(-8.0 * t))) <= 1e-12);
      CHECK(purity <= previous + 1e-12);
      previous = purity;
    }
    CHECK(previous == Catch::Approx(0.5).margin(1e-8));
  }
}

TEST_CASE("unitary_evolution") {
  const DensityMatrix plus(0.5 * (identity(2) + pauli(1)));
  CHECK(max_abs(unitary_evolution(ComplexMatrix::Zero(2, 2), plus, 3.0).matrix() - plus.matrix()) == 0.0);
  const DensityMatrix flipped = unitary_evolution(pauli(3), plus, std::numbers::pi / 2);
  CHECK(max_abs(flipped.matrix() - 0.5 * (identity(2) - pauli(1))) <= 1e-12);

  Rng rng(5);
  const ComplexMatrix h = random_hermitian(3, rng);
  const DensityMatrix rho(test::random_density(3, rng));
  const RealVector ev0 = hermitian_eigensystem(rho.matrix()).eigenvalues;
  for (double t : {0.3, 1.0, 4.0}) {
    const DensityMatrix r = unitary_evolution(h, rho, t);
    CHECK(std::abs(r.purity() - rho.purity()) <= 1e-12);
    CHECK((hermitian_eigensystem(r.matrix(), 1e-12).eigenvalues - ev0).cwiseAbs().maxCoeff() <= 1e-12);
  }
  ComplexMatrix bad = pauli(1);
  bad(1, 0) = 0.0;
  CHECK_THROWS_AS(unitary_evolution(bad, plus, 1.0), Error);
}

TEST_CASE("coherence vectors") {
  const CoherenceVector mixed = to_coherence_vector(0.5 * identity(2));
  CHECK(mixed.c == std::array<double, 4>{0.5, 0.0, 0.0, 0.0});
  const CoherenceVector up = to_coherence_vector(0.5 * (identity(2) + pauli(3)));
  CHECK(up.c[0] == Catch::Approx(0.5));
  CHECK(up.c[3] == Catch::Approx(0.5));
  CHECK(up.c[1] == 0.0);
  CHECK(up.c[2] == 0.0);
  CHECK_THROWS_AS(to_coherence_vector(identity(3)), Error);

  Rng rng(6);
  for (int k = 0; k < 20; ++k) {
    const ComplexVector psi = random_pure_state(2, rng);
    const ComplexMatrix rho = outer(psi, psi);
    const CoherenceVector v = to_coherence_vector(rho);
    CHECK(std::abs(v.bloch_norm_squared() - 0.25) <= 1e-14);
    CHECK(max_abs(from_coherence_vector(v) - rho) <= 1e-14);
  }
}

TEST_CASE("closed-form elementary evolutions") {
  const CoherenceVector v{{0.5, 0.5, 0.0, 0.0}};
  CHECK(closed_form_elementary(ElementaryEvolution::kUniformDamping, v, 0.0, 4.0).c == v.c);
  const CoherenceVector w = closed_form_elementary(ElementaryEvolution::kUniformDamping, v, 1.0, 4.0);
  CHECK(w.c[0] == 0.5);
  CHECK(std::abs(w.c[1] - std::exp(-4.0) / 2) <= 1e-16);
  CHECK(w.c[2] == 0.0);
  CHECK(w.c[3] == 0.0);

  const SuperoperatorMatrix l1 = superoperator_matrix(test::scaled_g1());
  const SuperoperatorMatrix l2 = superoperator_matrix(test::scaled_g2());
  Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho(test::random_density(2, rng));
    const CoherenceVector v0 = to_coherence_vector(rho);
    for (double t : default_time_grid()) {
      const auto c1 = closed_form_elementary(ElementaryEvolution::kUniformDamping, v0, t, 4.0);
      const auto c2 = closed_form_elementary(ElementaryEvolution::kSigma2Damping, v0, t, 4.0);
      const auto n1 = to_coherence_vector(evolve_state(l1, rho, t).matrix);
      const auto n2 = to_coherence_vector(evolve_state(l2, rho, t).matrix);
      for (int mu = 0; mu < 4; ++mu) {
        CHECK(std::abs(c1.c[mu] - n1.c[mu]) <= 1e-10);
        CHECK(std::abs(c2.c[mu] - n2.c[mu]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("qubit positivity is the determinant condition") {
  Rng rng(8);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int k = 0; k < 200; ++k) {
    const CoherenceVector v{{0.5, u(rng), u(rng), u(rng)}};
    const ComplexMatrix m = from_coherence_vector(v);
    const double det = m.determinant().real();
    const bool positive = min_eigenvalue(m) >= -1e-12;
    CHECK(positive == (det >= -1e-12));
  }
}

TEST_CASE("trajectory export") {
  const SuperoperatorMatrix l = superoperator_matrix(test::scaled_g1());
  const auto points = trajectory(l, DensityMatrix::maximally_mixed(2), {0.0, 1.0});
  REQUIRE(points.size() == 2);
  std::ostringstream os;
  write_trajectory_csv(os, points);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header.rfind("t,", 0) == 0);
  CHECK(header.find("min_eigenvalue,trace_residual") != std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 2);
}

}  // namespace
}  // namespace gkscp
