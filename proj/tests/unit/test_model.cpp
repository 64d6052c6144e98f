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

#include <array>

#include "helpers.hpp"
#include "lindberry/errors.hpp"
#include "lindberry/model.hpp"
#include "reference.hpp"

using namespace lindberry;
using testing::kPi;

namespace {

ModelParams params(double muB, double omega, double theta) {
  ModelParams p;
  p.muB = muB;
  p.omega = omega;
  p.theta = theta;
  return p;
}

constexpr std::array<Frame, 4> kFrames{Frame::Lab, Frame::Rotating, Frame::Diagonal,
                                       Frame::Instantaneous};

}  // namespace

TEST_SUITE("model") {

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.theta = 4.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.theta = 1.0;
  p.k = -1e-3;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.k = 0.0;
  p.muB = 0.0;
  CHECK_THROWS_AS(p.validate(), DomainError);
  p.muB = 1.0;
  p.nbar = -0.5;
  CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("regime flags") {
  ModelParams p = testing::figure_params(1e-2);
  CHECK(p.adiabatic());
  CHECK(p.weak_coupling());
  CHECK_NOTHROW(p.require_analytic_regime());
  p.k = 0.2;
  CHECK_FALSE(p.weak_coupling());
  CHECK_THROWS_AS(p.require_analytic_regime(), RegimeError);
  p.weak_threshold = 0.5;
  CHECK_NOTHROW(p.require_analytic_regime());
  p.omega = 0.05;
  CHECK_THROWS_AS(p.require_analytic_regime(), RegimeError);
}

TEST_CASE("lab hamiltonian") {
  const ModelParams aligned = params(1.7, 0.3, 0.0);
  for (double t : {0.0, 1.0, 42.0}) {
    CHECK(max_abs(hamiltonian_lab(aligned, t) - 1.7 * pauli::sigma_z()) < 1e-15);
  }
  CHECK(max_abs(hamiltonian_lab(params(1.7, 0.3, kPi / 2), 0.0) - 1.7 * pauli::sigma_x()) <
        1e-15);
  for (int i = 0; i < 50; ++i) {
    const ModelParams p = params(testing::uniform(0.5, 2), testing::uniform(0, 1),
                                 testing::uniform(0, kPi));
    const ComplexMatrix2 h = hamiltonian_lab(p, testing::uniform(0, 100));
    CHECK(max_abs(h - h.adjoint()) == 0.0);
    const auto ev = hermitian_eigenvalues(h);
    CHECK(ev[0] == doctest::Approx(-p.muB).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(p.muB).epsilon(1e-14));
  }
}

TEST_CASE("derived parameters") {
  const DerivedParams s = derived(params(1.3, 0.0, 0.7));
  CHECK(s.lambda1 == doctest::Approx(1.3).epsilon(1e-15));
  CHECK(s.Lambda == doctest::Approx(std::cos(0.7)).epsilon(1e-15));

  const DerivedParams d = derived(params(1.0, 1.0, kPi / 2));
  CHECK(std::abs(d.lambda1 - reference::kLambda1) < 1e-14);
  CHECK(std::abs(d.Lambda - reference::kLambda) < 1e-14);
  CHECK(derived(params(1.0, 0.0, kPi / 2)).solid_angle == doctest::Approx(2 * kPi));

  CHECK_THROWS_AS(derived(params(1.0, 2.0, 0.0)), DegeneracyError);

  for (int i = 0; i < 100; ++i) {
    const DerivedParams r = derived(params(testing::uniform(0.5, 2), testing::uniform(-3, 3),
                                           testing::uniform(0, kPi)));
    CHECK(r.lambda1 > 0.0);
    CHECK(std::abs(r.Lambda) <= 1.0);
  }
}

TEST_CASE("diagonalizing matrix") {
  CHECK(max_abs(diagonalizing_matrix(params(1, 0, 0)) - pauli::sigma_z()) < 1e-15);
  CHECK(max_abs(diagonalizing_matrix(params(1, 0, kPi / 2)) -
                (pauli::sigma_x() + pauli::sigma_z()) / std::sqrt(2.0)) < 1e-15);

  const ModelParams p = params(1.0, 1.0, kPi / 2);
  const ComplexMatrix2 d = diagonalizing_matrix(p);
  const ComplexMatrix2 conj =
      d.transpose() * (hamiltonian_rotating(p) - 0.5 * p.omega * pauli::sigma_z()) * d;
  CHECK(std::abs(conj(0, 0) - reference::kLambda1) < 1e-13);
  CHECK(std::abs(conj(1, 1) + reference::kLambda1) < 1e-13);
  CHECK(std::abs(conj(0, 1)) < 1e-13);

  for (int i = 0; i < 100; ++i) {
    const ModelParams q = params(testing::uniform(0.5, 2), testing::uniform(-1, 1),
                                 testing::uniform(0.01, kPi - 0.01));
    const ComplexMatrix2 dq = diagonalizing_matrix(q);
    CHECK(max_abs(dq - dq.transpose()) == 0.0);
    CHECK(max_abs(dq * dq - pauli::identity()) < 1e-14);
    const ComplexMatrix2 c =
        dq.transpose() * (hamiltonian_rotating(q) - 0.5 * q.omega * pauli::sigma_z()) * dq;
    CHECK(std::abs(c(0, 1)) < 1e-13);
    CHECK(std::abs(c(0, 0).real() - derived(q).lambda1) < 1e-13);
  }
}

TEST_CASE("rotating frame removes the drive") {
  const ModelParams p = params(1.2, 0.37, 0.9);
  for (double t : {0.0, 0.7, 13.0}) {
    const ComplexMatrix2 r = rotating_frame_unitary(p, t);
    CHECK(max_abs(r.adjoint() * hamiltonian_lab(p, t) * r - hamiltonian_rotating(p)) < 1e-14);
  }
}

TEST_CASE("instantaneous basis diagonalizes the lab hamiltonian") {
  CHECK(max_abs(instantaneous_basis(params(1, 0.1, 0), 0.0) - pauli::identity()) == 0.0);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = params(testing::uniform(0.5, 2), testing::uniform(-0.5, 0.5),
                                 testing::uniform(0, kPi));
    const double t = testing::uniform(0, 1000);
    const ComplexMatrix2 v = instantaneous_basis(p, t);
    CHECK(max_abs(v.adjoint() * v - pauli::identity()) < 1e-14);
    const ComplexMatrix2 diag = v.adjoint() * hamiltonian_lab(p, t) * v;
    CHECK(std::abs(diag(0, 0) - p.muB) < 1e-13);
    CHECK(std::abs(diag(1, 1) + p.muB) < 1e-13);
    CHECK(std::abs(diag(0, 1)) < 1e-13);

    // The half-phase variant spans the same eigenvectors.
    const ComplexMatrix2 w = half_phase_eigenbasis(p, t);
    const ComplexMatrix2 overlap = v.adjoint() * w;
    CHECK(std::abs(overlap(0, 1)) < 1e-14);
    CHECK(std::abs(std::abs(overlap(0, 0)) - 1.0) < 1e-14);
  }
  // Columns at theta = pi/4 are eigenvectors with eigenvalues +-muB.
  const ModelParams p = params(1.0, 1e-3, kPi / 4);
  const ComplexMatrix2 v = instantaneous_basis(p, 2.5);
  const ComplexMatrix2 h = hamiltonian_lab(p, 2.5);
  CHECK((h * v.col(0) - v.col(0)).norm() < 1e-14);
  CHECK((h * v.col(1) + v.col(1)).norm() < 1e-14);
}

TEST_CASE("sigma_n") {
  CHECK(max_abs(sigma_n(params(1, 0.2, 0), 3.0) - pauli::sigma_z()) < 1e-15);
  CHECK(max_abs(sigma_n(params(1, 0.2, kPi / 2), 0.0) - testing::matrix(0, -1, -1, 0)) < 1e-15);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = params(1, testing::uniform(-1, 1), testing::uniform(0, kPi));
    const double t = testing::uniform(0, 100);
    const ComplexMatrix2 n = sigma_n(p, t);
    CHECK(max_abs(n - n.adjoint()) == 0.0);
    CHECK(std::abs(n.trace()) < 1e-15);
    CHECK(max_abs(n * n - pauli::identity()) < 1e-15);
    const auto ev = hermitian_eigenvalues(n);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
    // Image of sigma_z under the instantaneous basis.
    const ComplexMatrix2 v = instantaneous_basis(p, t);
    CHECK(max_abs(v.adjoint() * pauli::sigma_z() * v - n) < 1e-15);
  }
}

TEST_CASE("instantaneous ladder operators") {
  CHECK(max_abs(sigma_plus_inst(params(1, 0.3, 0), 0.0) - pauli::sigma_plus()) < 1e-15);
  const ModelParams p = params(1.0, 1e-3, kPi / 4);
  const ComplexMatrix2 n = sigma_n(p, 1.0);
  const ComplexMatrix2 sp = sigma_plus_inst(p, 1.0);
  CHECK(max_abs(commutator(n, sp) - 2.0 * sp) < 1e-13);
  for (int i = 0; i < 100; ++i) {
    const ModelParams q = params(1, testing::uniform(-1, 1), testing::uniform(0, kPi));
    const double t = testing::uniform(0, 100);
    const ComplexMatrix2 up = sigma_plus_inst(q, t);
    const ComplexMatrix2 down = sigma_minus_inst(q, t);
    const ComplexMatrix2 nn = sigma_n(q, t);
    CHECK(max_abs(up * up) < 1e-15);
    CHECK(max_abs(commutator(nn, up) - 2.0 * up) < 1e-14);
    CHECK(max_abs(commutator(nn, down) + 2.0 * down) < 1e-14);
    CHECK(max_abs(commutator(up, down) - nn) < 1e-14);
  }
}

TEST_CASE("frame conversion examples") {
  const ModelParams p = params(1.1, 0.02, 0.8);
  const DensityMatrix rho = testing::random_state();
  for (Frame f : kFrames) {
    CHECK(max_abs(convert_state(rho, f, f, p, 3.0).matrix() - rho.matrix()) == 0.0);
    for (Frame g : kFrames) {
      CHECK(max_abs(convert_state(DensityMatrix(), f, g, p, 7.0).matrix() -
                    0.5 * pauli::identity()) < 1e-15);
    }
  }
  CHECK(max_abs(convert_state(rho, Frame::Lab, Frame::Rotating, p, 0.0).matrix() -
                rho.matrix()) == 0.0);
  CHECK_THROWS_AS(convert_state(rho, Frame::Lab, Frame::Diagonal, params(1, 2, 0), 0.0),
                  DegeneracyError);
}

TEST_CASE("the initial state seen in the instantaneous frame") {
  const ModelParams p = testing::figure_params();
  const DensityMatrix rho =
      convert_state(initial_state(p), Frame::Lab, Frame::Instantaneous, p, 0.0);
  CHECK(std::abs(rho(0, 0).real() - reference::kRhoI11AtZero) < 1e-15);
  CHECK(std::abs(rho(0, 1) - reference::kRhoI12AtZero) < 1e-15);
}

TEST_CASE("property: conversions are unitary, invertible and composable") {
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = params(testing::uniform(0.5, 2), testing::uniform(-0.5, 0.5),
                                 testing::uniform(0.05, kPi - 0.05));
    const double t = testing::uniform(0, 500);
    const DensityMatrix rho = testing::random_state();
    const auto ev = hermitian_eigenvalues(rho.matrix());
    for (Frame a : kFrames) {
      for (Frame b : kFrames) {
        const DensityMatrix ab = convert_state(rho, a, b, p, t);
        const auto evb = hermitian_eigenvalues(ab.matrix());
        CHECK(std::abs(ab.matrix().trace() - 1.0) < 1e-13);
        CHECK(max_abs(ab.matrix() - ab.matrix().adjoint()) < 1e-13);
        CHECK(std::abs(evb[0] - ev[0]) < 1e-13);
        CHECK(std::abs(evb[1] - ev[1]) < 1e-13);
        CHECK(std::abs(linear_entropy(ab) - linear_entropy(rho)) < 1e-13);
        CHECK(max_abs(convert_state(ab, b, a, p, t).matrix() - rho.matrix()) < 1e-13);
        for (Frame c : kFrames) {
          CHECK(max_abs(convert_state(ab, b, c, p, t).matrix() -
                        convert_state(rho, a, c, p, t).matrix()) < 1e-13);
        }
      }
    }
  }
}

TEST_CASE("instantaneous and diagonal frames are related by a fixed rotation chain") {
  // rho_I = U^dag rho_D U with U = D R^dag V.
  const ModelParams p = params(1.0, 1e-3, kPi / 4);
  const double t = 12.3;
  const ComplexMatrix2 u =
      diagonalizing_matrix(p) * rotating_frame_unitary(p, t).adjoint() * instantaneous_basis(p, t);
  const DensityMatrix rho = testing::random_state();
  CHECK(max_abs(convert_state(rho, Frame::Diagonal, Frame::Instantaneous, p, t).matrix() -
                u.adjoint() * rho.matrix() * u) < 1e-14);
}

}  // TEST_SUITE
