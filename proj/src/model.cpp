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

#include "lindberry/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lindberry/errors.hpp"

namespace lindberry {

void ModelParams::validate() const {
  std::ostringstream os;
  if (!(muB > 0.0)) {
    os << "muB must be > 0 (got " << muB << ")";
  } else if (!(k >= 0.0)) {
    os << "k must be >= 0 (got " << k << ")";
  } else if (!(nbar >= 0.0)) {
    os << "nbar must be >= 0 (got " << nbar << ")";
  } else if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    os << "theta must lie in [0, pi] (got " << theta << ")";
  } else if (!std::isfinite(omega) || !std::isfinite(alpha) || !std::isfinite(tracer_a)) {
    os << "omega, alpha and tracer_a must be finite";
  } else {
    return;
  }
  throw DomainError(os.str());
}

bool ModelParams::adiabatic() const { return std::abs(omega) / muB <= adiabatic_threshold; }

bool ModelParams::weak_coupling() const { return k / muB <= weak_threshold; }

void ModelParams::require_analytic_regime() const {
  if (!adiabatic() || !weak_coupling()) {
    std::ostringstream os;
    os << "closed form outside its regime: omega/muB = " << omega / muB << " (max "
       << adiabatic_threshold << "), k/muB = " << k / muB << " (max " << weak_threshold
       << ")";
    throw RegimeError(os.str());
  }
}

std::string_view to_string(Frame frame) {
  switch (frame) {
    case Frame::Lab:
      return "lab";
    case Frame::Rotating:
      return "rotating";
    case Frame::Diagonal:
      return "diagonal";
    case Frame::Instantaneous:
      return "instantaneous";
  }
  return "?";
}

DerivedParams derived(const ModelParams& p) {
  const double along = p.muB * std::cos(p.theta) - 0.5 * p.omega;
  const double across = p.muB * std::sin(p.theta);
  const double lambda1 = std::hypot(across, along);
  const double scale = std::max(p.muB, std::abs(p.omega));
  if (lambda1 <= 1e-14 * scale) {
    std::ostringstream os;
    os << "lambda1 = " << lambda1
       << ": effective Hamiltonian is degenerate, the diagonal frame is undefined";
    throw DegeneracyError(os.str());
  }
  return {lambda1, std::clamp(along / lambda1, -1.0, 1.0),
          2.0 * std::numbers::pi * (1.0 - std::cos(p.theta))};
}

ComplexMatrix2 hamiltonian_lab(const ModelParams& p, double t) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex phase = std::polar(1.0, p.omega * t);
  ComplexMatrix2 h;
  h << c, s * std::conj(phase), s * phase, -c;
  return p.muB * h;
}

ComplexMatrix2 hamiltonian_rotating(const ModelParams& p) {
  return p.muB * (std::sin(p.theta) * pauli::sigma_x() + std::cos(p.theta) * pauli::sigma_z());
}

ComplexMatrix2 rotating_frame_unitary(const ModelParams& p, double t) {
  const Complex half = std::polar(1.0, -0.5 * p.omega * t);
  ComplexMatrix2 r;
  r << half, 0.0, 0.0, std::conj(half);
  return r;
}

ComplexMatrix2 diagonalizing_matrix(const ModelParams& p) {
  const double lambda = derived(p).Lambda;
  return std::sqrt(0.5 * (1.0 - lambda)) * pauli::sigma_x() +
         std::sqrt(0.5 * (1.0 + lambda)) * pauli::sigma_z();
}

ComplexMatrix2 instantaneous_basis(const ModelParams& p, double t) {
  const double c = std::cos(0.5 * p.theta);
  const double s = std::sin(0.5 * p.theta);
  const Complex phase = std::polar(1.0, p.omega * t);
  ComplexMatrix2 v;
  v << c, -s * std::conj(phase), s * phase, c;
  return v;
}

ComplexMatrix2 half_phase_eigenbasis(const ModelParams& p, double t) {
  const double c = std::cos(0.5 * p.theta);
  const double s = std::sin(0.5 * p.theta);
  const Complex half = std::polar(1.0, 0.5 * p.omega * t);
  ComplexMatrix2 v;
  v << c * std::conj(half), -s * std::conj(half), s * half, c * half;
  return v;
}

ComplexMatrix2 sigma_n(const ModelParams& p, double t) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex phase = std::polar(1.0, p.omega * t);
  ComplexMatrix2 m;
  m << c, -s * std::conj(phase), -s * phase, -c;
  return m;
}

ComplexMatrix2 sigma_plus_inst(const ModelParams& p, double t) {
  const Complex phase = std::polar(1.0, p.omega * t);
  const double ch = std::cos(0.5 * p.theta);
  const double sh = std::sin(0.5 * p.theta);
  return phase * (0.5 * std::sin(p.theta) * pauli::sigma_z() +
                  ch * ch * std::conj(phase) * pauli::sigma_plus() -
                  sh * sh * phase * pauli::sigma_minus());
}

ComplexMatrix2 frame_basis(Frame frame, const ModelParams& p, double t) {
  switch (frame) {
    case Frame::Lab:
      return ComplexMatrix2::Identity();
    case Frame::Rotating:
      return rotating_frame_unitary(p, t);
    case Frame::Diagonal:
      return rotating_frame_unitary(p, t) * diagonalizing_matrix(p);
    case Frame::Instantaneous:
      return instantaneous_basis(p, t);
  }
  return ComplexMatrix2::Identity();
}

ComplexMatrix2 frame_transform(Frame from, Frame to, const ModelParams& p, double t) {
  if (from == to) {
    return ComplexMatrix2::Identity();
  }
  return frame_basis(to, p, t).adjoint() * frame_basis(from, p, t);
}

ComplexMatrix2 convert_matrix(const ComplexMatrix2& rho, Frame from, Frame to,
                              const ModelParams& p, double t) {
  if (from == to) {
    return rho;
  }
  const ComplexMatrix2 m = frame_transform(from, to, p, t);
  return m * rho * m.adjoint();
}

DensityMatrix convert_state(const DensityMatrix& rho, Frame from, Frame to,
                            const ModelParams& p, double t) {
  return DensityMatrix(convert_matrix(rho.matrix(), from, to, p, t));
}

DensityMatrix initial_state(const ModelParams& p) {
  return DensityMatrix::pure(Eigen::Vector2cd(std::cos(p.alpha), std::sin(p.alpha)));
}

}  // namespace lindberry
