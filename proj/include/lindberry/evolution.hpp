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

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "lindberry/generators.hpp"
#include "lindberry/model.hpp"
#include "lindberry/quantum_core.hpp"

namespace lindberry {

enum class Method { RK4Fixed, RK45Adaptive };

std::string_view to_string(Method method);

struct IntegratorOptions {
  Method method = Method::RK4Fixed;
  /// RK4 step; 0 selects default_step() for the model.
  double step = 0.0;
  /// Dormand-Prince error control, per matrix entry in the max norm.
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  /// Adaptive steps below this are reported as an integration failure.
  double min_step = 1e-12;
  /// Every accepted step is checked against these.
  Tolerances validity = kIntegratorTolerances;

  /// Throws IntegrationError for non-positive steps or tolerances.
  void validate() const;
};

/// min(2 pi/(2 muB)/50, 2 pi/w/200, 1/(10 k)), ignoring terms with w = 0 or
/// k = 0: resolves the level splitting, the drive and the decay.
double default_step(const ModelParams& p);

struct Sample {
  double t;
  DensityMatrix rho;
};

struct Trajectory {
  Frame frame = Frame::Lab;
  std::vector<Sample> samples;
};

/// `count` equally spaced times from 0 to `t_end` inclusive.
std::vector<double> uniform_grid(double t_end, std::size_t count);

/// Integrates d(rho)/dt = gen(t, rho) from rho(t0) = rho0 and samples at
/// exactly the times in `t_grid` (strictly increasing, first entry >= t0).
/// Throws IntegrationError when the adaptive step underflows or the grid is
/// malformed, StateCorruptionError at the first accepted step whose state
/// breaks `opts.validity`.
Trajectory evolve(const GeneratorSpec& gen, const DensityMatrix& rho0,
                  std::span<const double> t_grid, const IntegratorOptions& opts = {},
                  double t0 = 0.0);

/// Closed-form propagation of a Diagonal-frame state:
///   thermal    rho11(t) = n/(2n+1) (1 - E) + rho11(0) E,  E = e^{-2k(2n+1)t}
///              rho12(t) = rho12(0) e^{-(2 i l1 + k(2n+1)) t}
///   dephasing  rho11(t) = rho11(0),  rho12(t) = rho12(0) e^{-(2 i l1 + k) t}
DensityMatrix evolve_exact_diagonal(Channel channel, const ModelParams& p,
                                    const DensityMatrix& rho0, double t);

}  // namespace lindberry
