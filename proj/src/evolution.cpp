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

#include "lindberry/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lindberry/errors.hpp"

namespace lindberry {

namespace {

void check_step(const ComplexMatrix2& y, double t, const Tolerances& tol) {
  if (auto v = check_density(y, tol)) {
    std::ostringstream os;
    os << "state left the physical set at t = " << t << ": " << v->invariant
       << " (measured " << v->measured << ", tolerance " << v->tolerance << ")";
    throw StateCorruptionError(t, os.str());
  }
}

ComplexMatrix2 rk4_step(const Generator& f, double t, const ComplexMatrix2& y, double h) {
  const ComplexMatrix2 k1 = f(t, y);
  const ComplexMatrix2 k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const ComplexMatrix2 k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const ComplexMatrix2 k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dormand-Prince 5(4) with FSAL.
class DormandPrince {
 public:
  DormandPrince(const Generator& f, const IntegratorOptions& opts, double h0)
      : f_(f), opts_(opts), h_(h0) {}

  // Advances (t, y) to exactly t_end.
  void advance(double& t, ComplexMatrix2& y, double t_end) {
    if (!have_k1_) {
      k1_ = f_(t, y);
      have_k1_ = true;
    }
    while (t < t_end) {
      const double remaining = t_end - t;
      double h = std::min({h_, opts_.max_step, remaining});
      const bool last = h >= remaining;
      if (last) h = remaining;

      const ComplexMatrix2& k1 = k1_;
      const ComplexMatrix2 k2 = f_(t + h / 5.0, y + h * (1.0 / 5.0) * k1);
      const ComplexMatrix2 k3 =
          f_(t + 3.0 * h / 10.0, y + h * ((3.0 / 40.0) * k1 + (9.0 / 40.0) * k2));
      const ComplexMatrix2 k4 =
          f_(t + 4.0 * h / 5.0,
             y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3));
      const ComplexMatrix2 k5 =
          f_(t + 8.0 * h / 9.0, y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2 +
                                         (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4));
      const ComplexMatrix2 k6 =
          f_(t + h, y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2 +
                             (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4 -
                             (5103.0 / 18656.0) * k5));
      const ComplexMatrix2 y5 =
          y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3 + (125.0 / 192.0) * k4 -
                   (2187.0 / 6784.0) * k5 + (11.0 / 84.0) * k6);
      const ComplexMatrix2 k7 = f_(t + h, y5);
      const ComplexMatrix2 err =
          h * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1 +
               (500.0 / 1113.0 - 7571.0 / 16695.0) * k3 + (125.0 / 192.0 - 393.0 / 640.0) * k4 +
               (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5 +
               (11.0 / 84.0 - 187.0 / 2100.0) * k6 - (1.0 / 40.0) * k7);

      double norm = 0.0;
      for (int i = 0; i < 4; ++i) {
        const double scale =
            opts_.atol + opts_.rtol * std::max(std::abs(y(i)), std::abs(y5(i)));
        norm = std::max(norm, std::abs(err(i)) / scale);
      }

      const double factor =
          norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (norm <= 1.0) {
        t = last ? t_end : t + h;
        y = y5;
        k1_ = k7;
        check_step(y, t, opts_.validity);
        // A step shortened only to land on the grid says nothing about h_.
        if (!last || h >= h_) h_ = h * factor;
      } else {
        h_ = h * std::min(1.0, factor);
      }
      if (h_ < opts_.min_step && t < t_end) {
        std::ostringstream os;
        os << "adaptive step underflow at t = " << t << ": step " << h_ << " below minimum "
           << opts_.min_step << " (error norm " << norm << ")";
        throw IntegrationError(os.str());
      }
    }
  }

 private:
  const Generator& f_;
  const IntegratorOptions& opts_;
  double h_;
  ComplexMatrix2 k1_;
  bool have_k1_ = false;
};

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::RK4Fixed ? "rk4" : "rk45";
}

void IntegratorOptions::validate() const {
  std::ostringstream os;
  if (!(step >= 0.0)) {
    os << "step must be > 0 (or 0 for the default), got " << step;
  } else if (!(rtol > 0.0) || !(atol > 0.0)) {
    os << "tolerances must be > 0, got rtol " << rtol << ", atol " << atol;
  } else if (!(max_step > 0.0) || !(min_step > 0.0)) {
    os << "max_step and min_step must be > 0";
  } else {
    return;
  }
  throw IntegrationError(os.str());
}

double default_step(const ModelParams& p) {
  double h = 2.0 * std::numbers::pi / (2.0 * p.muB) / 50.0;
  if (p.omega != 0.0) h = std::min(h, 2.0 * std::numbers::pi / std::abs(p.omega) / 200.0);
  if (p.k > 0.0) h = std::min(h, 1.0 / (10.0 * p.k));
  return h;
}

std::vector<double> uniform_grid(double t_end, std::size_t count) {
  if (count < 2 || !(t_end > 0.0)) {
    throw IntegrationError("uniform grid needs t_end > 0 and at least two points");
  }
  std::vector<double> grid(count);
  const double dt = t_end / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = dt * static_cast<double>(i);
  grid.back() = t_end;
  return grid;
}

Trajectory evolve(const GeneratorSpec& gen, const DensityMatrix& rho0,
                  std::span<const double> t_grid, const IntegratorOptions& opts, double t0) {
  opts.validate();
  if (t_grid.empty()) {
    throw IntegrationError("empty time grid");
  }
  if (!(t_grid.front() >= t0)) {
    throw IntegrationError("time grid starts before the initial time");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      std::ostringstream os;
      os << "time grid not strictly increasing at index " << i;
      throw IntegrationError(os.str());
    }
  }

  const Generator f(gen);
  Trajectory traj;
  traj.frame = gen.frame;
  traj.samples.reserve(t_grid.size());

  double t = t0;
  ComplexMatrix2 y = rho0.matrix();
  const double h_default = opts.step > 0.0 ? opts.step : default_step(gen.params);

  if (opts.method == Method::RK4Fixed) {
    const double h_max = std::min(h_default, opts.max_step);
    for (double target : t_grid) {
      const double span = target - t;
      if (span > 0.0) {
        const auto n = static_cast<long>(std::ceil(span / h_max - 1e-9));
        const double h = span / static_cast<double>(std::max(1L, n));
        for (long i = 0; i < std::max(1L, n); ++i) {
          y = rk4_step(f, t, y, h);
          t = i + 1 == std::max(1L, n) ? target : t + h;
          check_step(y, t, opts.validity);
        }
      }
      traj.samples.push_back({target, DensityMatrix(y, opts.validity)});
    }
  } else {
    DormandPrince dp(f, opts, std::min(std::max(h_default, opts.min_step), opts.max_step));
    for (double target : t_grid) {
      dp.advance(t, y, target);
      traj.samples.push_back({target, DensityMatrix(y, opts.validity)});
    }
  }
  return traj;
}

DensityMatrix evolve_exact_diagonal(Channel channel, const ModelParams& p,
                                    const DensityMatrix& rho0, double t) {
  const double lambda1 = derived(p).lambda1;
  if (t == 0.0) return rho0;
  const ComplexMatrix2& r0 = rho0.matrix();
  const double rate = channel == Channel::Thermal ? p.k * (2.0 * p.nbar + 1.0) : p.k;

  Complex r11 = r0(0, 0);
  if (channel == Channel::Thermal) {
    const double decay = std::exp(-2.0 * rate * t);
    r11 = p.nbar / (2.0 * p.nbar + 1.0) * (1.0 - decay) + r0(0, 0) * decay;
  }
  const Complex r12 = r0(0, 1) * std::exp(Complex(-rate * t, -2.0 * lambda1 * t));

  ComplexMatrix2 m;
  m << r11, r12, std::conj(r12), 1.0 - r11;
  return DensityMatrix(m);
}

}  // namespace lindberry
