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


#include "lindberry/spectrum.hpp"

#include <fftw3.h>

#include <unsupported/Eigen/LevenbergMarquardt>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace lindberry {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// Planner calls into FFTW are not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<Complex> windowed(const TimeSeries& s, Window window) {
  std::vector<Complex> x = s.values;
  if (window == Window::Hann) {
    const double last = static_cast<double>(x.size() - 1);
    for (std::size_t n = 0; n < x.size(); ++n) {
      x[n] *= 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / last));
    }
  }
  return x;
}

// Residuals of the normalized Lorentzian model in the scaled variable
// u = (w - w_ref)/scale; parameters (P, c, hwhm, baseline).
struct LorentzFunctor : Eigen::DenseFunctor<double> {
  LorentzFunctor(Eigen::VectorXd u, Eigen::VectorXd y)
      : Eigen::DenseFunctor<double>(4, static_cast<int>(u.size())),
        u_(std::move(u)),
        y_(std::move(y)) {}

  int operator()(const InputType& x, ValueType& f) const {
    for (Eigen::Index i = 0; i < u_.size(); ++i) {
      const double d = u_(i) - x(1);
      f(i) = x(0) / (d * d + x(2) * x(2)) + x(3) - y_(i);
    }
    return 0;
  }

  int df(const InputType& x, JacobianType& j) const {
    for (Eigen::Index i = 0; i < u_.size(); ++i) {
      const double d = u_(i) - x(1);
      const double q = d * d + x(2) * x(2);
      j(i, 0) = 1.0 / q;
      j(i, 1) = 2.0 * x(0) * d / (q * q);
      j(i, 2) = -2.0 * x(0) * x(2) / (q * q);
      j(i, 3) = 1.0;
    }
    return 0;
  }

  Eigen::VectorXd u_;
  Eigen::VectorXd y_;
};

}  // namespace

void TimeSeries::validate() const {
  if (!(dt > 0.0)) throw DomainError("time series needs dt > 0");
  if (values.size() < 2) throw DomainError("time series needs at least two samples");
}

TimeSeries make_series(std::span<const double> times, std::vector<Complex> values) {
  if (times.size() != values.size()) {
    throw DomainError("time and value counts differ");
  }
  if (times.size() < 2) throw DomainError("time series needs at least two samples");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t n = 1; n < times.size(); ++n) {
    if (std::abs(times[n] - times[n - 1] - dt) > 1e-9 * std::abs(dt)) {
      std::ostringstream os;
      os << "non-uniform time grid at index " << n;
      throw DomainError(os.str());
    }
  }
  TimeSeries s{times.front(), dt, std::move(values)};
  s.validate();
  return s;
}

Magnetization magnetization(const Trajectory& traj, const ModelParams& p, double mu) {
  const std::size_t n = traj.samples.size();
  std::vector<double> times(n);
  std::vector<Complex> x(n), y(n), z(n);
  const ComplexMatrix2 sx = pauli::sigma_x();
  const ComplexMatrix2 sy = pauli::sigma_y();
  const ComplexMatrix2 sz = pauli::sigma_z();
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = traj.samples[i];
    const ComplexMatrix2 lab = convert_matrix(s.rho.matrix(), traj.frame, Frame::Lab, p, s.t);
    times[i] = s.t;
    x[i] = mu * (lab * sx).trace().real();
    y[i] = mu * (lab * sy).trace().real();
    z[i] = mu * (lab * sz).trace().real();
  }
  return {make_series(times, std::move(x)), make_series(times, std::move(y)),
          make_series(times, std::move(z))};
}

TimeSeries transverse(const Magnetization& m) {
  TimeSeries out = m.x;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += kI * m.y.values[i];
  return out;
}

Spectrum dft(const TimeSeries& series, Window window, std::size_t zero_pad) {
  series.validate();
  if (zero_pad == 0) throw DomainError("zero padding factor must be >= 1");
  const std::vector<Complex> x = windowed(series, window);
  const std::size_t n = x.size() * zero_pad;

  std::vector<Complex> in(n, Complex{}), out(n);
  std::copy(x.begin(), x.end(), in.begin());
  auto* pin = reinterpret_cast<fftw_complex*>(in.data());
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), pin, pout, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  // out[j] = sum_m x_m e^{2 pi i j m/n}; bins j >= n - n/2 are negative frequencies.
  const double domega = 2.0 * std::numbers::pi / (static_cast<double>(n) * series.dt);
  const std::size_t negative = n / 2;
  Spectrum spec{-static_cast<double>(negative) * domega, domega, std::vector<Complex>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + n - negative) % n;
    const double w = spec.frequency(i);
    spec.amplitudes[i] = series.dt * kInvSqrt2Pi * std::polar(1.0, w * series.t0) * out[j];
  }
  return spec;
}

Spectrum dft_band(const TimeSeries& series, double lo, double hi, std::size_t count,
                  Window window) {
  series.validate();
  if (count < 2 || !(hi > lo)) throw DomainError("frequency band needs hi > lo and two points");
  const std::vector<Complex> x = windowed(series, window);
  Spectrum spec{lo, (hi - lo) / static_cast<double>(count - 1), std::vector<Complex>(count)};
  for (std::size_t j = 0; j < count; ++j) {
    const double w = spec.frequency(j);
    // Phasor recurrence, renormalized periodically to stop drift.
    const Complex step = std::polar(1.0, w * series.dt);
    Complex phase = std::polar(1.0, w * series.t0);
    Complex sum{};
    for (std::size_t m = 0; m < x.size(); ++m) {
      sum += x[m] * phase;
      phase *= step;
      if ((m & 1023) == 1023) phase = std::polar(1.0, w * series.time(m + 1));
    }
    spec.amplitudes[j] = series.dt * kInvSqrt2Pi * sum;
  }
  return spec;
}

PeakFit fit_lorentzian(const Spectrum& spec, double guess_center, double guess_hwhm,
                       const FitOptions& opts) {
  const std::size_t n = spec.amplitudes.size();
  if (n == 0 || guess_center < spec.frequency(0) || guess_center > spec.frequency(n - 1)) {
    throw DomainError("fit guess lies outside the spectral window");
  }
  if (!(guess_hwhm > 0.0)) throw DomainError("fit guess hwhm must be > 0");
  const double half = opts.half_window > 0.0 ? opts.half_window : 8.0 * guess_hwhm;

  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(spec.frequency(j) - guess_center) <= half) idx.push_back(j);
  }
  if (idx.size() < 5) throw DomainError("fit window holds fewer than five points");

  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::VectorXd u(m), y(m);
  double ymax = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    y(i) = std::norm(spec.amplitudes[idx[i]]);
    ymax = std::max(ymax, y(i));
  }
  if (!(ymax > 0.0)) throw DomainError("spectrum is identically zero in the fit window");
  Eigen::Index peak = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    u(i) = (spec.frequency(idx[i]) - guess_center) / guess_hwhm;
    y(i) /= ymax;
    if (y(i) > y(peak)) peak = i;
  }

  const double base0 = y.minCoeff();
  Eigen::VectorXd x(4);
  x << (1.0 - base0), u(peak), 1.0, base0;

  LorentzFunctor functor(u, y);
  Eigen::LevenbergMarquardt<LorentzFunctor> lm(functor);
  lm.setMaxfev(opts.max_iterations * 10);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  const auto status = lm.minimize(x);

  PeakFit fit;
  fit.center = guess_center + guess_hwhm * x(1);
  fit.hwhm = guess_hwhm * std::abs(x(2));
  fit.baseline = ymax * x(3);
  fit.iterations = static_cast<int>(lm.iterations());

  Eigen::VectorXd r(m);
  functor(x, r);
  fit.residual = ymax * std::sqrt(r.squaredNorm() / static_cast<double>(m));

  // Complex amplitude and offset by linear least squares at the fitted pole.
  Eigen::MatrixX2cd basis(m, 2);
  Eigen::VectorXcd data(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    basis(i, 0) = 1.0 / Complex(spec.frequency(idx[i]) - fit.center, fit.hwhm);
    basis(i, 1) = 1.0;
    data(i) = spec.amplitudes[idx[i]];
  }
  fit.amplitude = basis.colPivHouseholderQr().solve(data)(0);

  using namespace Eigen::LevenbergMarquardtSpace;
  fit.converged = status != ImproperInputParameters && status != TooManyFunctionEvaluation &&
                  status != UserAsked && fit.hwhm > 0.0 && std::isfinite(fit.center);
  if (!fit.converged) {
    std::ostringstream os;
    os << "Lorentzian fit did not converge after " << fit.iterations
       << " iterations (status " << static_cast<int>(status) << ", residual " << fit.residual
       << ")";
    throw FitError(fit, os.str());
  }
  return fit;
}

std::vector<std::pair<double, BlochVector>> bloch_trajectory(const Trajectory& traj) {
  std::vector<std::pair<double, BlochVector>> out;
  out.reserve(traj.samples.size());
  for (const Sample& s : traj.samples) out.emplace_back(s.t, bloch_from_density(s.rho));
  return out;
}

}  // namespace lindberry
