// Copyright 2026 The lindberry Authors
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


#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "lindberry/errors.hpp"
#include "lindberry/quantum_core.hpp"

using namespace lindberry;
using testing::matrix;

TEST_SUITE("quantum_core") {

TEST_CASE("pauli algebra matches hand-computed products") {
  const ComplexMatrix2 sx = pauli::sigma_x(), sy = pauli::sigma_y(), sz = pauli::sigma_z();
  CHECK(max_abs(sx * sy - kI * sz) == 0.0);
  CHECK(max_abs(commutator(sx, sy) - 2.0 * kI * sz) == 0.0);
  CHECK(max_abs(anticommutator(sx, sx) - 2.0 * pauli::identity()) == 0.0);
  CHECK(max_abs(pauli::sigma_plus() - 0.5 * (sx + kI * sy)) == 0.0);
  CHECK(max_abs(pauli::sigma_plus().adjoint() - pauli::sigma_minus()) == 0.0);

  const ComplexMatrix2 a = matrix({1, 2}, {0, -1}, {3, 0}, {0, 1});
  const ComplexMatrix2 b = matrix({2, 0}, {1, 1}, {0, -2}, {4, 0});
  const ComplexMatrix2 ab = matrix({0, 4}, {-1, -1}, {8, 0}, {3, 7});
  CHECK(max_abs(a * b - ab) < 1e-15);
  CHECK(max_abs((a * b).adjoint() - b.adjoint() * a.adjoint()) < 1e-15);
}

TEST_CASE("bloch vector of reference states") {
  const BlochVector mixed = bloch_from_density(DensityMatrix());
  CHECK(mixed.norm() == 0.0);

  const BlochVector up = bloch_from_density(DensityMatrix(matrix(1, 0, 0, 0)));
  CHECK(up.x == 0.0);
  CHECK(up.y == 0.0);
  CHECK(up.z == 1.0);

  const DensityMatrix tilted(0.5 * (pauli::identity() + 0.3 * pauli::sigma_x()));
  const BlochVector s = bloch_from_density(tilted);
  CHECK(s.x == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(std::abs(s.y) < 1e-16);
  CHECK(std::abs(s.z) < 1e-16);
}

TEST_CASE("density from bloch vector") {
  CHECK(max_abs(density_from_bloch({0, 0, 0}).matrix() - 0.5 * pauli::identity()) == 0.0);
  CHECK(max_abs(density_from_bloch({0, 0, -1}).matrix() - matrix(0, 0, 0, 1)) == 0.0);
  const DensityMatrix px = density_from_bloch({1, 0, 0});
  CHECK(max_abs(px.matrix() - 0.5 * (pauli::identity() + pauli::sigma_x())) < 1e-16);
  CHECK(std::abs(linear_entropy(px)) < 1e-15);
}

TEST_CASE("density from an unphysical bloch vector is a domain error") {
  CHECK_THROWS_AS(density_from_bloch({0.8, 0.7, 0.0}), DomainError);
  CHECK_NOTHROW(density_from_bloch({1.0 + 5e-11, 0.0, 0.0}));
}

TEST_CASE("invalid matrices name the broken invariant") {
  auto invariant_of = [](const ComplexMatrix2& m) {
    try {
      DensityMatrix d(m);
    } catch (const ValidationError& e) {
      return e.invariant();
    }
    return std::string("none");
  };
  CHECK(invariant_of(matrix(0.5, 0.1, 0.2, 0.5)) == "hermiticity");
  CHECK(invariant_of(matrix(0.6, 0.0, 0.0, 0.6)) == "trace");
  CHECK(invariant_of(matrix(1.2, 0.0, 0.0, -0.2)) == "positivity");
  CHECK(invariant_of(matrix(0.5, 0.5, 0.5, 0.5)) == "none");

  // Overridable tolerances.
  const ComplexMatrix2 drifted = matrix(0.5 + 1e-11, 0.0, 0.0, 0.5);
  CHECK_THROWS_AS(DensityMatrix{drifted}, ValidationError);
  CHECK_NOTHROW(DensityMatrix(drifted, kIntegratorTolerances));
}

TEST_CASE("linear entropy of reference states") {
  CHECK(std::abs(linear_entropy(DensityMatrix::pure({Complex(0.6, 0.0), Complex(0.0, 0.8)}))) <
        1e-15);
  CHECK(linear_entropy(DensityMatrix()) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(linear_entropy(density_from_bloch({0.0, 0.3, 0.4})) ==
        doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("property: purity identity, round trip and closed-form eigenvalues") {
  for (int i = 0; i < 500; ++i) {
    const DensityMatrix rho = testing::random_state();
    const BlochVector s = bloch_from_density(rho);
    CHECK(std::abs(linear_entropy(rho) - 0.5 * (1.0 - s.norm() * s.norm())) <= 1e-12);
    CHECK(max_abs(density_from_bloch(s).matrix() - rho.matrix()) <= 1e-14);

    const ComplexMatrix2 h = testing::random_hermitian();
    const auto ev = hermitian_eigenvalues(h);
    const double half = 0.5 * h.trace().real();
    const double det = h.determinant().real();
    const double root = std::sqrt(half * half - det);
    CHECK(std::abs(ev[0] - (half - root)) <= 1e-14);
    CHECK(std::abs(ev[1] - (half + root)) <= 1e-14);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix2> solver(h);
    CHECK(std::abs(ev[0] - solver.eigenvalues()(0)) <= 1e-14);
    CHECK(std::abs(ev[1] - solver.eigenvalues()(1)) <= 1e-14);
  }
}

}  // TEST_SUITE
