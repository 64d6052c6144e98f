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

#include "lindberry/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "lindberry/errors.hpp"

namespace lindberry {

namespace {

Complex coherence(const ModelParams& p, double t, double damping_rate) {
  const double phase =
      -2.0 * p.muB * t - p.omega * (1.0 - p.tracer_a * std::cos(p.theta)) * t;
  return 0.5 * std::sin(2.0 * p.alpha - p.theta) *
         std::exp(Complex(-damping_rate * t, phase));
}

DensityMatrix assemble(double r11, Complex r12) {
  ComplexMatrix2 m;
  m << r11, r12, std::conj(r12), 1.0 - r11;
  return DensityMatrix(m);
}

}  // namespace

DensityMatrix adiabatic_thermal_rho_I(const ModelParams& p, double t) {
  p.require_analytic_regime();
  const double g = 2.0 * p.nbar + 1.0;
  const double r11 = p.nbar / g + 0.5 * (1.0 / g + std::cos(p.theta - 2.0 * p.alpha)) *
                                      std::exp(-2.0 * p.k * g * t);
  return assemble(r11, coherence(p, t, p.k * g));
}

DensityMatrix adiabatic_dephasing_rho_I(const ModelParams& p, double t) {
  p.require_analytic_regime();
  const double r11 = 0.5 * (1.0 + std::cos(p.theta - 2.0 * p.alpha));
  return assemble(r11, coherence(p, t, p.k));
}

DensityMatrix adiabatic_rho_I(Channel channel, const ModelParams& p, double t) {
  return channel == Channel::Thermal ? adiabatic_thermal_rho_I(p, t)
                                     : adiabatic_dephasing_rho_I(p, t);
}

PhaseReport phase_report(Channel channel, const ModelParams& p) {
  const double one_minus_cos = 1.0 - std::cos(p.theta);
  return {p.tracer_a * p.omega * one_minus_cos, 2.0 * std::numbers::pi * one_minus_cos,
          channel == Channel::Thermal ? p.k * (1.0 + 2.0 * p.nbar) : p.k, 2.0 * p.muB};
}

AnalyticSpectrumParams analytic_spectrum(const ModelParams& p) {
  p.require_analytic_regime();
  const double g = 2.0 * p.nbar + 1.0;
  const double c = std::cos(p.theta);
  return {2.0 * p.muB - p.tracer_a * p.omega * c, p.k * g, c / g,
          c * (1.0 / g + std::cos(p.theta - 2.0 * p.alpha)),
          0.5 * std::sin(p.theta) * std::sin(p.theta - 2.0 * p.alpha)};
}

std::complex<double> analytic_mz_transform(const ModelParams& p, double w, double mu) {
  const AnalyticSpectrumParams s = analytic_spectrum(p);
  const Complex population = -kI * s.population_weight / Complex(w, 2.0 * s.linewidth);
  const Complex resonant = -kI * s.resonant_weight *
                           (1.0 / Complex(w + s.Gamma, s.linewidth) +
                            1.0 / Complex(w - s.Gamma, s.linewidth));
  return mu / std::sqrt(2.0 * std::numbers::pi) * (population + resonant);
}

std::vector<ConvergenceRow> adiabatic_convergence_probe(Channel channel,
                                                        const ModelParams& base,
                                                        std::span<const double> omegas,
                                                        const ProbeOptions& opts) {
  if (!(base.omega > 0.0)) {
    throw DomainError("convergence probe needs a base omega > 0 to fix k/omega");
  }
  const double ratio = base.k / base.omega;

  auto run = [channel, ratio, &base, &opts](double omega) {
    ModelParams p = base;
    p.omega = omega;
    p.k = ratio * omega;
    p.validate();
    p.require_analytic_regime();

    const double period = 2.0 * std::numbers::pi / omega;
    const double fast = 2.0 * std::numbers::pi / (2.0 * p.muB);
    const auto count = static_cast<std::size_t>(
        std::ceil(period / fast * static_cast<double>(opts.samples_per_fast_period))) + 1;
    const std::vector<double> grid = uniform_grid(period, count);

    const DensityMatrix rho0 =
        convert_state(initial_state(p), Frame::Lab, Frame::Instantaneous, p, 0.0);
    const Trajectory traj =
        evolve({channel, Frame::Instantaneous, p}, rho0, grid, opts.integrator);

    double deviation = 0.0;
    for (const Sample& s : traj.samples) {
      const ComplexMatrix2 closed = adiabatic_rho_I(channel, p, s.t).matrix();
      deviation = std::max(deviation, max_abs(closed - s.rho.matrix()));
    }
    return ConvergenceRow{omega, p.k, deviation};
  };

  std::vector<ConvergenceRow> rows;
  rows.reserve(omegas.size());
  if (opts.parallel) {
    std::vector<std::future<ConvergenceRow>> jobs;
    jobs.reserve(omegas.size());
    for (double w : omegas) jobs.push_back(std::async(std::launch::async, run, w));
    for (auto& job : jobs) rows.push_back(job.get());
  } else {
    for (double w : omegas) rows.push_back(run(w));
  }
  return rows;
}

}  // namespace lindberry
