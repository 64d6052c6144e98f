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

// First-order adiabatic / weak-coupling closed forms in the Instantaneous
// frame, starting from psi(0) = cos(alpha)|+> + sin(alpha)|->.
//
// With g = 2n+1 (thermal) the populations relax at 2kg and the coherence
// carries three factors:
//
//   rho12(t) = sin(2 alpha - theta)/2  e^{-2 i muB t}   dynamic
//                                      e^{-k g t}       imaginary phase chi
//                                      e^{-i w (1 - a cos theta) t}
//
// The last factor is the geometric phase. At a = 1 it is e^{-i w (1-cos) t},
// whose value after a period T = 2 pi/w is e^{-i Omega} with Omega the solid
// angle 2 pi (1 - cos theta). The tracer a multiplies the part that shifts the
// lab-frame resonance, so the magnetization line sits at 2 muB - a w cos(theta)
// and toggling a between 0 and 1 removes exactly e^{-i Omega} at every t = nT.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lindberry/evolution.hpp"
#include "lindberry/generators.hpp"
#include "lindberry/model.hpp"

namespace lindberry {

struct PhaseReport {
  double geometric_rate;       // a w (1 - cos theta)
  double geometric_per_cycle;  // Omega = 2 pi (1 - cos theta)
  double imaginary_chi_rate;   // k (2n+1) thermal, k dephasing
  double dynamic_rate;         // E1 - E2 = 2 muB
};

struct AnalyticSpectrumParams {
  double Gamma;              // 2 muB - a w cos theta
  double linewidth;          // k (2n+1)
  double dc_weight;          // cos theta / (2n+1)
  double population_weight;  // cos theta (1/(2n+1) + cos(theta - 2 alpha))
  double resonant_weight;    // sin theta sin(theta - 2 alpha) / 2
};

/// Throws RegimeError outside the adiabatic / weak-coupling regime.
DensityMatrix adiabatic_thermal_rho_I(const ModelParams& p, double t);
DensityMatrix adiabatic_dephasing_rho_I(const ModelParams& p, double t);
DensityMatrix adiabatic_rho_I(Channel channel, const ModelParams& p, double t);

PhaseReport phase_report(Channel channel, const ModelParams& p);

AnalyticSpectrumParams analytic_spectrum(const ModelParams& p);

/// Regular part of the transform (1/sqrt(2 pi)) int_0^inf <m_z>(t) e^{i w' t} dt
/// of the thermal closed form, with m_z taken as -Tr(rho sigma_z). The DC delta
/// and its principal value are omitted.
std::complex<double> analytic_mz_transform(const ModelParams& p, double omega_prime,
                                           double mu = 1.0);

struct ConvergenceRow {
  double omega;
  double k;
  double deviation;  // max elementwise |rho_closed - rho_numeric| over [0, T]
};

struct ProbeOptions {
  IntegratorOptions integrator{Method::RK45Adaptive, 0.0, 1e-11, 1e-13};
  /// Comparison samples per fast period 2 pi/(2 muB).
  std::size_t samples_per_fast_period = 16;
  bool parallel = true;
};

/// For each w: set k = w (k0/w0), integrate the Instantaneous-frame master
/// equation over one drive period and record the largest elementwise
/// deviation from the closed form. Rows follow the order of `omegas`.
std::vector<ConvergenceRow> adiabatic_convergence_probe(Channel channel,
                                                        const ModelParams& base,
                                                        std::span<const double> omegas,
                                                        const ProbeOptions& opts = {});

}  // namespace lindberry
