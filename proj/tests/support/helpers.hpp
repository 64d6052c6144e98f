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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "lindberry/model.hpp"
#include "lindberry/quantum_core.hpp"

namespace testing {

using lindberry::BlochVector;
using lindberry::Complex;
using lindberry::ComplexMatrix2;
using lindberry::DensityMatrix;
using lindberry::ModelParams;

inline constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x1B5EEDULL);
  return g;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline DensityMatrix random_state(double max_norm = 1.0) {
  BlochVector s;
  do {
    s = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
  } while (s.norm() > 1.0);
  s = {s.x * max_norm, s.y * max_norm, s.z * max_norm};
  return lindberry::density_from_bloch(s);
}

inline ComplexMatrix2 random_hermitian() {
  ComplexMatrix2 m;
  m << uniform(-1, 1), Complex(uniform(-1, 1), uniform(-1, 1)), 0.0, uniform(-1, 1);
  m(1, 0) = std::conj(m(0, 1));
  return m;
}

/// Regime-valid parameters.
inline ModelParams random_params() {
  ModelParams p;
  p.muB = uniform(0.5, 2.0);
  p.omega = p.muB * std::pow(10.0, uniform(-4.0, -2.0));
  p.theta = uniform(0.1, kPi - 0.1);
  p.k = p.muB * uniform(1e-3, 1e-2);
  p.nbar = uniform(0.0, 2.0);
  p.alpha = uniform(0.0, kPi);
  return p;
}

inline ModelParams figure_params(double k = 1e-2, double nbar = 0.0) {
  ModelParams p;
  p.muB = 1.0;
  p.omega = 1e-3;
  p.theta = kPi / 4.0;
  p.k = k;
  p.nbar = nbar;
  p.alpha = 0.0;
  return p;
}

inline ComplexMatrix2 matrix(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix2 m;
  m << a, b, c, d;
  return m;
}

}  // namespace testing
