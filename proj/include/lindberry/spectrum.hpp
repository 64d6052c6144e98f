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
#include <span>
#include <utility>
#include <vector>

#include "lindberry/errors.hpp"
#include "lindberry/evolution.hpp"
#include "lindberry/model.hpp"
#include "lindberry/quantum_core.hpp"

namespace lindberry {

/// Uniformly sampled signal: values[n] is taken at t0 + n dt.
struct TimeSeries {
  double t0 = 0.0;
  double dt = 1.0;
  std::vector<Complex> values;

  /// Throws DomainError unless dt > 0 and there are at least two samples.
  void validate() const;
  double time(std::size_t n) const { return t0 + dt * static_cast<double>(n); }
};

/// Builds a series from explicit sample times; throws DomainError when the
/// spacing varies by more than 1e-9 relative.
TimeSeries make_series(std::span<const double> times, std::vector<Complex> values);

/// amplitudes[j] sits at omega0 + j domega, in ascending order.
struct Spectrum {
  double omega0 = 0.0;
  double domega = 1.0;
  std::vector<Complex> amplitudes;

  double frequency(std::size_t j) const { return omega0 + domega * static_cast<double>(j); }
};

enum class Window { None, Hann };

struct Magnetization {
  TimeSeries x, y, z;
};

/// <m_i>(t) = mu Tr(rho_lab(t) sigma_i), converting from the trajectory frame.
Magnetization magnetization(const Trajectory& traj, const ModelParams& p, double mu = 1.0);

/// m_x + i m_y, the single-sided resonant combination.
TimeSeries transverse(const Magnetization& m);

/// F(w) = dt/sqrt(2 pi) sum_n x_n e^{i w t_n} on the FFT grid w_j = 2 pi j/(N dt),
/// N = zero_pad * length, reordered from the negative Nyquist edge upwards.
Spectrum dft(const TimeSeries& series, Window window = Window::None,
             std::size_t zero_pad = 1);

/// Same transform summed directly on `count` points spanning [lo, hi], for
/// resolving a narrow line finer than the FFT grid.
Spectrum dft_band(const TimeSeries& series, double lo, double hi, std::size_t count,
                  Window window = Window::None);

struct PeakFit {
  double center = 0.0;
  double hwhm = 0.0;
  Complex amplitude{};  // A in A/(w - c + i hwhm) + B, fitted to the complex data
  double baseline = 0.0;
  double residual = 0.0;  // RMS misfit of |F|^2 over the fit window
  int iterations = 0;
  bool converged = false;
};

class FitError : public Error {
 public:
  FitError(PeakFit best, const std::string& what) : Error(what), best_(best) {}
  const PeakFit& best() const noexcept { return best_; }

 private:
  PeakFit best_;
};

struct FitOptions {
  /// Points with |w - guess_center| <= half_window enter the fit; 0 means 8 guess_hwhm.
  double half_window = 0.0;
  int max_iterations = 400;
};

/// Least-squares fit of P/((w - c)^2 + hwhm^2) + baseline to |F(w)|^2.
/// Throws DomainError when the guess lies outside the spectrum or the window
/// holds fewer than five points, FitError when the solver does not converge.
PeakFit fit_lorentzian(const Spectrum& spec, double guess_center, double guess_hwhm,
                       const FitOptions& opts = {});

std::vector<std::pair<double, BlochVector>> bloch_trajectory(const Trajectory& traj);

}  // namespace lindberry
