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

#include <numbers>
#include <string>

#include "gkscp/error.hpp"
#include "gkscp/numerics.hpp"
#include "testutil.hpp"

namespace gkscp {
namespace {

using Catch::Matchers::ContainsSubstring;
using test::diag;
using test::max_abs;

TEST_CASE("hermitian_eigensystem returns ascending eigenvalues") {
  SECTION("identity") {
    const auto es = hermitian_eigensystem(identity(2));
    CHECK(es.eigenvalues(0) == Catch::Approx(1.0));
    CHECK(es.eigenvalues(1) == Catch::Approx(1.0));
  }
  SECTION("sigma_3") {
    const auto es = hermitian_eigensystem(pauli(3));
    CHECK(es.eigenvalues(0) == Catch::Approx(-1.0));
    CHECK(es.eigenvalues(1) == Catch::Approx(1.0));
  }
  SECTION("diag(1, -1, 1)") {
    const auto es = hermitian_eigensystem(diag({1, -1, 1}));
    CHECK(es.eigenvalues(0) == Catch::Approx(-1.0));
    CHECK(es.eigenvalues(1) == Catch::Approx(1.0));
    CHECK(es.eigenvalues(2) == Catch::Approx(1.0));
  }
}

TEST_CASE("hermitian_eigensystem rejects non-Hermitian input with the asymmetry") {
  ComplexMatrix a = pauli(1);
  a(0, 1) = 2.0;
  try {
    hermitian_eigensystem(a);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotHermitian);
    CHECK_THAT(std::string(e.what()), ContainsSubstring("1"));
  }
  ComplexMatrix tiny = pauli(1);
  tiny(0, 1) += 1e-13;
  CHECK_NOTHROW(hermitian_eigensystem(tiny));
}

TEST_CASE("eigensystem reconstruction on random Hermitian matrices") {
  for (int n : {2, 3, 4, 8}) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng(mix_seed(7, static_cast<std::uint64_t>(n), s));
      const ComplexMatrix h = random_hermitian(n, rng);
      const auto es = hermitian_eigensystem(h);
      const ComplexMatrix& v = es.eigenvectors;
      const ComplexMatrix rebuilt = v * es.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
      CHECK(operator_norm(rebuilt - h) <= 1e-10);
      CHECK(operator_norm(v.adjoint() * v - identity(n)) <= 1e-10);
      for (Index i = 1; i < n; ++i) CHECK(es.eigenvalues(i - 1) <= es.eigenvalues(i));
    }
  }
}

TEST_CASE("min_eigenvalue") {
  CHECK(min_eigenvalue(diag({2, 0, 2})) == Catch::Approx(0.0).margin(1e-15));
  CHECK(min_eigenvalue(diag({1, -1, 1})) == Catch::Approx(-1.0));
  Rng rng(3);
  const ComplexVector v = random_pure_state(5, rng);
  CHECK(std::abs(min_eigenvalue(outer(v, v))) <= 1e-14);
}

TEST_CASE("matrix_exponential examples") {
  SECTION("zero generator") {
    for (double t : {0.0, 0.3, 10.0}) CHECK(max_abs(matrix_exponential(ComplexMatrix::Zero(3, 3), t) - identity(3)) == 0.0);
  }
  SECTION("t = 0 is exactly the identity") {
    Rng rng(11);
    const ComplexMatrix a = ComplexMatrix::Random(4, 4);
    CHECK(matrix_exponential(a, 0.0) == identity(4));
  }
  SECTION("diagonal") {
    const ComplexMatrix e = matrix_exponential(diag({-4, 0}), 1.0);
    CHECK(std::abs(e(0, 0) - std::exp(-4.0)) <= 1e-15);
    CHECK(std::abs(e(1, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e(0, 1)) == 0.0);
  }
  SECTION("commutator superoperator of sigma_3 at t = pi") {
    // -i[sigma_3, .] acting on column-stacked 2x2 matrices.
    const ComplexMatrix s3 = pauli(3);
    const ComplexMatrix gen = -kI * (kron(identity(2), s3) - kron(s3.transpose(), identity(2)));
    const double t = std::numbers::pi;
    const ComplexMatrix e = matrix_exponential(gen, t);
    const ComplexMatrix oracle = test::taylor_exp(gen, t);
    CHECK(max_abs(e - oracle) <= 1e-12);
    CHECK(max_abs(e - identity(4)) <= 1e-12);
  }
  SECTION("non-square input") {
    CHECK_THROWS_AS(matrix_exponential(ComplexMatrix::Zero(2, 3), 1.0), Error);
  }
}

TEST_CASE("matrix_exponential agrees with a Taylor oracle on non-normal matrices") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(mix_seed(21, s));
    std::normal_distribution<double> normal;
    ComplexMatrix a(4, 4);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j) a(i, j) = Complex(normal(rng), normal(rng));
    for (double t : {0.1, 0.5, 1.0}) {
      const ComplexMatrix e = matrix_exponential(a, t);
      const ComplexMatrix o = test::taylor_exp(a, t);
      CHECK(max_abs(e - o) <= 1e-10 * std::max(1.0, max_abs(o)));
    }
  }
}

TEST_CASE("matrix_exponential group law for a commuting family") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    Rng rng(mix_seed(5, s));
    const ComplexMatrix a = random_hermitian(3, rng) * kI - 0.5 * identity(3) +
                            0.3 * ComplexMatrix::Random(3, 3);
    for (double t : {0.1, 0.5, 1.0}) {
      for (double u : {0.1, 0.5, 1.0}) {
        const ComplexMatrix lhs = matrix_exponential(a, t + u);
        const ComplexMatrix rhs = matrix_exponential(a, t) * matrix_exponential(a, u);
        CHECK(max_abs(lhs - rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("kron") {
  CHECK(kron(identity(2), identity(2)) == identity(4));
  const ComplexMatrix x = kron(pauli(1), identity(2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.block(0, 2, 2, 2) = identity(2);
  expected.block(2, 0, 2, 2) = identity(2);
  CHECK(x == expected);
  CHECK(kron(pauli(3), pauli(3)) == diag({1, -1, -1, 1}));

  Rng rng(9);
  for (int s = 0; s < 20; ++s) {
    ComplexMatrix m[4];
    for (auto& mm : m) mm = random_hermitian(2, rng) + kI * random_hermitian(2, rng);
    CHECK(max_abs(kron(kron(m[0], m[1]), m[2]) - kron(m[0], kron(m[1], m[2]))) <= 1e-12);
    CHECK(max_abs(kron(m[0], m[1]) * kron(m[2], m[3]) - kron(m[0] * m[2], m[1] * m[3])) <= 1e-12);
  }
}

TEST_CASE("expectation") {
  const ComplexMatrix mixed = 0.5 * identity(2);
  const ComplexMatrix up = 0.5 * (identity(2) + pauli(3));
  CHECK(expectation(identity(2), up) == Catch::Approx(1.0));
  CHECK(expectation(pauli(3), up) == Catch::Approx(1.0));
  CHECK(expectation(pauli(1), mixed) == Catch::Approx(0.0).margin(1e-15));
  try {
    expectation(pauli(1), identity(3));
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("vec and unvec use column stacking") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const ComplexVector v = vec(m);
  CHECK(v(0) == Complex(1.0));
  CHECK(v(1) == Complex(3.0));
  CHECK(v(2) == Complex(2.0));
  CHECK(unvec(v, 2) == m);

  Rng rng(4);
  const ComplexMatrix a = random_hermitian(3, rng), x = random_hermitian(3, rng),
                      b = random_hermitian(3, rng) + kI * random_hermitian(3, rng);
  CHECK(max_abs(vec(a * x * b) - kron(b.transpose(), a) * vec(x)) <= 1e-12);
}

TEST_CASE("random draws are reproducible and well formed") {
  Rng r1(mix_seed(1, 2, 3)), r2(mix_seed(1, 2, 3));
  const ComplexVector a = random_pure_state(6, r1);
  const ComplexVector b = random_pure_state(6, r2);
  CHECK(a == b);
  CHECK(std::abs(a.norm() - 1.0) <= 1e-14);
  CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
  Rng r3(17);
  const ComplexMatrix u = random_unitary(4, r3);
  CHECK(max_abs(u.adjoint() * u - identity(4)) <= 1e-12);
  const ComplexMatrix h = random_hermitian(4, r3);
  CHECK(max_asymmetry(h) == 0.0);
}

}  // namespace
}  // namespace gkscp
