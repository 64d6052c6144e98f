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

#include <algorithm>

#include "helpers.hpp"
#include "lindberry/errors.hpp"
#include "lindberry/evolution.hpp"
#include "lindberry/oracle.hpp"
#include "reference.hpp"

using namespace lindberry;
using testing::kPi;
using testing::matrix;

namespace {

IntegratorOptions rk4(double h) {
  IntegratorOptions o;
  o.step = h;
  return o;
}

IntegratorOptions rk45(double rtol, double atol) {
  IntegratorOptions o;
  o.method = Method::RK45Adaptive;
  o.rtol = rtol;
  o.atol = atol;
  return o;
}

double max_error_vs_exact(Channel c, const ModelParams& p, const DensityMatrix& rho0,
                          const Trajectory& traj) {
  double worst = 0.0;
  for (const Sample& s : traj.samples) {
    worst = std::max(worst,
                     max_abs(s.rho.matrix() - evolve_exact_diagonal(c, p, rho0, s.t).matrix()));
  }
  return worst;
}

}  // namespace

TEST_SUITE("evolution") {

TEST_CASE("options and grids are validated") {
  IntegratorOptions bad;
  bad.step = -1.0;
  CHECK_THROWS_AS(bad.validate(), IntegrationError);
  bad = IntegratorOptions{};
  bad.rtol = 0.0;
  CHECK_THROWS_AS(bad.validate(), IntegrationError);

  const GeneratorSpec spec{Channel::Thermal, Frame::Diagonal, testing::figure_params()};
  const double backwards[] = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(evolve(spec, DensityMatrix(), backwards), IntegrationError);
  CHECK_THROWS_AS(evolve(spec, DensityMatrix(), std::span<const double>{}), IntegrationError);
  const double early[] = {1.0};
  CHECK_THROWS_AS(evolve(spec, DensityMatrix(), early, {}, 2.0), IntegrationError);
  CHECK_THROWS_AS(uniform_grid(1.0, 1), IntegrationError);
}

TEST_CASE("default step resolves level splitting, drive and decay") {
  ModelParams p = testing::figure_params(1e-2);
  CHECK(default_step(p) == doctest::Approx(kPi / 50.0));
  p.omega = 10.0;
  CHECK(default_step(p) == doctest::Approx(2.0 * kPi / 10.0 / 200.0));
  p.omega = 0.0;
  p.k = 5.0;
  CHECK(default_step(p) == doctest::Approx(1.0 / 50.0));
}

TEST_CASE("samples land exactly on the requested times") {
  const GeneratorSpec spec{Channel::Thermal, Frame::Instantaneous, testing::figure_params()};
  const double grid[] = {0.0, 0.123, 1.0, 7.77};
  for (Method m : {Method::RK4Fixed, Method::RK45Adaptive}) {
    IntegratorOptions o;
    o.method = m;
    const Trajectory traj = evolve(spec, DensityMatrix(), grid, o);
    REQUIRE(traj.samples.size() == 4);
    CHECK(traj.frame == Frame::Instantaneous);
    for (std::size_t i = 0; i < 4; ++i) CHECK(traj.samples[i].t == grid[i]);
  }
}

TEST_CASE("unitary limit keeps a pure state pure") {
  ModelParams p = testing::figure_params(0.0);
  const DensityMatrix psi = DensityMatrix::pure({Complex(0.6, 0.0), Complex(0.0, 0.8)});
  const std::vector<double> grid = uniform_grid(100.0, 201);
  const Trajectory traj =
      evolve({Channel::Thermal, Frame::Diagonal, p}, psi, grid, rk45(1e-12, 1e-14));
  for (const Sample& s : traj.samples) CHECK(std::abs(linear_entropy(s.rho)) <= 1e-10);
}

TEST_CASE("excited population decays at twice the rate at zero temperature") {
  const ModelParams p = testing::figure_params(1e-2);
  const std::vector<double> grid = uniform_grid(300.0, 301);
  const Trajectory traj =
      evolve({Channel::Thermal, Frame::Diagonal, p}, DensityMatrix(matrix(1, 0, 0, 0)), grid);
  double worst = 0.0;
  for (const Sample& s : traj.samples) {
    worst = std::max(worst, std::abs(s.rho(0, 0).real() - std::exp(-2.0 * p.k * s.t)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("coherence envelope in the instantaneous frame over one drive period") {
  const ModelParams p = testing::figure_params(1e-2);
  const double period = 2.0 * kPi / p.omega;
  const std::vector<double> grid = uniform_grid(period, 1001);
  const DensityMatrix rho0 =
      convert_state(initial_state(p), Frame::Lab, Frame::Instantaneous, p, 0.0);
  const Trajectory traj =
      evolve({Channel::Thermal, Frame::Instantaneous, p}, rho0, grid, rk45(1e-10, 1e-12));
  const double amplitude = 0.5 * std::abs(std::sin(2.0 * p.alpha - p.theta));
  double worst = 0.0;
  for (const Sample& s : traj.samples) {
    const double envelope = amplitude * std::exp(-p.k * (2.0 * p.nbar + 1.0) * s.t);
    worst = std::max(worst, std::abs(std::abs(s.rho(0, 1)) - envelope));
  }
  CHECK(worst <= 0.01 * amplitude);
}

TEST_CASE("instantaneous-frame numerics match an independent lab-frame integration") {
  const ModelParams p = testing::figure_params(1e-2);
  const double t_end[] = {4.0 * kPi};
  const DensityMatrix rho0 =
      convert_state(initial_state(p), Frame::Lab, Frame::Instantaneous, p, 0.0);
  const Trajectory traj =
      evolve({Channel::Thermal, Frame::Instantaneous, p}, rho0, t_end, rk45(1e-12, 1e-14));
  const DensityMatrix& rho = traj.samples.back().rho;
  CHECK(std::abs(rho(0, 0).real() - reference::kFig1RhoI11) < 1e-9);
  CHECK(std::abs(std::abs(rho(0, 1)) - reference::kFig1AbsRhoI12) < 1e-9);
}

TEST_CASE("exact diagonal propagation") {
  ModelParams p = testing::random_params();
  const DensityMatrix rho0 = testing::random_state();
  for (Channel c : {Channel::Thermal, Channel::Dephasing}) {
    CHECK(max_abs(evolve_exact_diagonal(c, p, rho0, 0.0).matrix() - rho0.matrix()) == 0.0);
  }
  const DensityMatrix late = evolve_exact_diagonal(Channel::Thermal, p, rho0, 100.0 / p.k);
  CHECK(max_abs(late.matrix() - thermal_fixed_point(p).matrix()) < 1e-15);

  for (const auto& ref : reference::kSuperoperatorCases) {
    ModelParams q;
    q.muB = ref.muB;
    q.omega = ref.omega;
    q.theta = ref.theta;
    q.k = ref.k;
    q.nbar = ref.nbar;
    const DensityMatrix start(matrix(0.7, Complex(0.2, -0.3), Complex(0.2, 0.3), 0.3));
    const DensityMatrix out = evolve_exact_diagonal(
        ref.thermal ? Channel::Thermal : Channel::Dephasing, q, start, ref.t);
    CHECK(std::abs(out(0, 0).real() - ref.rho11) < 1e-12);
    CHECK(std::abs(out(0, 1) - Complex(ref.rho12_re, ref.rho12_im)) < 1e-12);
  }
}

TEST_CASE("property: superoperator exponential reproduces the closed forms") {
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = testing::random_params();
    const Channel c = i % 2 == 0 ? Channel::Thermal : Channel::Dephasing;
    const DensityMatrix rho0 = testing::random_state();
    const double t = testing::uniform(0.0, 5.0 / p.k);
    const ComplexMatrix2 ref =
        oracle::propagate(oracle::diagonal_superoperator(c, p), rho0.matrix(), t);
    CHECK(max_abs(ref - evolve_exact_diagonal(c, p, rho0, t).matrix()) <= 1e-10);
  }
}

TEST_CASE("fine fixed-step integration agrees with the closed form over five decay times") {
  const ModelParams p = testing::figure_params(1e-2, 0.5);
  const DensityMatrix rho0 =
      convert_state(initial_state(p), Frame::Lab, Frame::Diagonal, p, 0.0);
  const double t_end[] = {5.0 / p.k};
  const double h = 1e-3 / derived(p).lambda1;
  for (Channel c : {Channel::Thermal, Channel::Dephasing}) {
    const Trajectory traj = evolve({c, Frame::Diagonal, p}, rho0, t_end, rk4(h));
    CHECK(max_error_vs_exact(c, p, rho0, traj) <= 1e-8);
  }
}

TEST_CASE("property: RK4 global error falls by at least 14x when the step halves") {
  const ModelParams p = testing::figure_params(0.05, 0.3);
  const DensityMatrix rho0 = testing::random_state();
  const std::vector<double> grid = uniform_grid(40.0, 41);
  const GeneratorSpec spec{Channel::Thermal, Frame::Diagonal, p};
  const double e1 = max_error_vs_exact(Channel::Thermal, p, rho0, evolve(spec, rho0, grid, rk4(0.1)));
  const double e2 = max_error_vs_exact(Channel::Thermal, p, rho0, evolve(spec, rho0, grid, rk4(0.05)));
  CHECK(e1 / e2 >= 14.0);
  CHECK(e1 / e2 <= 18.0);
}

TEST_CASE("property: adaptive integration tracks the closed form") {
  for (int i = 0; i < 5; ++i) {
    const ModelParams p = testing::random_params();
    const DensityMatrix rho0 = testing::random_state();
    const std::vector<double> grid = uniform_grid(2.0 / p.k, 201);
    for (Channel c : {Channel::Thermal, Channel::Dephasing}) {
      const Trajectory traj = evolve({c, Frame::Diagonal, p}, rho0, grid, rk45(1e-12, 1e-14));
      CHECK(max_error_vs_exact(c, p, rho0, traj) <= 1e-9);
    }
  }
}

TEST_CASE("property: restarting mid-run changes nothing for a static generator") {
  const ModelParams p = testing::random_params();
  const DensityMatrix rho0 = testing::random_state();
  const GeneratorSpec spec{Channel::Thermal, Frame::Diagonal, p};
  const double t1 = 37.0, t2 = 91.0;
  const double first[] = {t1};
  const double second[] = {t2};
  for (Method m : {Method::RK4Fixed, Method::RK45Adaptive}) {
    IntegratorOptions o;
    o.method = m;
    o.step = 0.01;
    const DensityMatrix mid = evolve(spec, rho0, first, o).samples[0].rho;
    const ComplexMatrix2 split = evolve(spec, mid, second, o, t1).samples[0].rho.matrix();
    const ComplexMatrix2 direct = evolve(spec, rho0, second, o).samples[0].rho.matrix();
    CHECK(max_abs(split - direct) <= 1e-9);
  }
}

TEST_CASE("property: states stay physical along every accepted step") {
  for (int i = 0; i < 10; ++i) {
    ModelParams p = testing::random_params();
    p.omega *= 20.0;
    const std::vector<double> grid = uniform_grid(100.0, 1001);
    for (Channel c : {Channel::Thermal, Channel::Dephasing}) {
      for (Frame f : {Frame::Diagonal, Frame::Instantaneous}) {
        const DensityMatrix rho0 = testing::random_state();
        const Trajectory traj = evolve({c, f, p}, rho0, grid);
        for (const Sample& s : traj.samples) {
          const ComplexMatrix2& m = s.rho.matrix();
          CHECK(std::abs(m.trace() - 1.0) <= 1e-10);
          CHECK(max_abs(m - m.adjoint()) <= 1e-12);
          CHECK(hermitian_eigenvalues(m)[0] >= -1e-8);
        }
      }
    }
  }
}

TEST_CASE("an unstable step size is reported as state corruption with its time") {
  ModelParams p = testing::figure_params(5.0, 0.0);
  p.weak_threshold = 10.0;
  const double grid[] = {10.0};
  try {
    evolve({Channel::Thermal, Frame::Diagonal, p}, DensityMatrix(matrix(1, 0, 0, 0)), grid,
           rk4(1.0));
    FAIL("expected a state corruption error");
  } catch (const StateCorruptionError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= 10.0);
  }
}

TEST_CASE("adaptive step underflow is an integration error") {
  IntegratorOptions o = rk45(1e-14, 1e-16);
  o.min_step = 0.5;
  const double grid[] = {50.0};
  CHECK_THROWS_AS(evolve({Channel::Thermal, Frame::Diagonal, testing::figure_params()},
                         DensityMatrix(matrix(1, 0, 0, 0)), grid, o),
                  IntegrationError);
}

}  // TEST_SUITE
