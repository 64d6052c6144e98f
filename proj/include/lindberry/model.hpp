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

// Spin-1/2 in a field of constant norm precessing at angle theta about z:
//
//   H(t) = muB [[cos th, sin th e^{-i w t}], [sin th e^{i w t}, -cos th]].
//
// Four representations of the same state are used throughout. Each frame F is
// defined by a basis matrix W_F(t) such that rho_F = W_F^dagger rho_lab W_F:
//
//   Lab            W = 1
//   Rotating       W = R(t) = exp(-i w t sigma_z / 2)
//   Diagonal       W = R(t) D, where D^T (H_R - w/2 sigma_z) D = diag(l1, -l1)
//   Instantaneous  W = V(t), the eigenbasis of H(t) with V(T) = V(0)
//
// In the Diagonal frame the generator is time independent; in the
// Instantaneous frame the Hamiltonian reads
//   (muB + w/2) sigma_z - (w/2) sigma_n(t).

#pragma once

#include <string_view>

#include "lindberry/quantum_core.hpp"

namespace lindberry {

struct ModelParams {
  double muB = 1.0;
  double omega = 0.0;  // precession angular frequency
  double theta = 0.0;  // field angle from the z axis, radians
  double k = 0.0;      // dissipation rate
  double nbar = 0.0;   // thermal occupation
  double alpha = 0.0;  // psi(0) = cos(alpha)|+> + sin(alpha)|->
  double tracer_a = 1.0;

  double adiabatic_threshold = 0.01;  // max omega/muB for closed forms
  double weak_threshold = 0.01;       // max k/muB for closed forms

  /// Throws DomainError unless muB > 0, k >= 0, nbar >= 0, 0 <= theta <= pi.
  void validate() const;

  bool adiabatic() const;
  bool weak_coupling() const;

  /// Throws RegimeError unless both regime flags hold.
  void require_analytic_regime() const;
};

enum class Frame { Lab, Rotating, Diagonal, Instantaneous };

std::string_view to_string(Frame frame);

struct DerivedParams {
  double lambda1;      // half splitting of the effective Hamiltonian
  double Lambda;       // (muB cos th - w/2) / lambda1
  double solid_angle;  // 2 pi (1 - cos th)
};

/// Throws DegeneracyError when lambda1 vanishes.
DerivedParams derived(const ModelParams& p);

ComplexMatrix2 hamiltonian_lab(const ModelParams& p, double t);

/// H_R = muB (sin th sigma_x + cos th sigma_z).
ComplexMatrix2 hamiltonian_rotating(const ModelParams& p);

/// R(t) = exp(-i w t sigma_z / 2).
ComplexMatrix2 rotating_frame_unitary(const ModelParams& p, double t);

/// D = sqrt((1-Lambda)/2) sigma_x + sqrt((1+Lambda)/2) sigma_z; real,
/// symmetric and involutory.
ComplexMatrix2 diagonalizing_matrix(const ModelParams& p);

/// Basis of the Instantaneous frame:
///   [[cos th/2, -sin th/2 e^{-i w t}], [sin th/2 e^{i w t}, cos th/2]].
/// Column 1 has eigenvalue +muB, column 2 has -muB; single valued over a
/// drive period.
ComplexMatrix2 instantaneous_basis(const ModelParams& p, double t);

/// The same eigenvectors with the phases split symmetrically,
///   [[c e^{-iwt/2}, -s e^{-iwt/2}], [s e^{iwt/2}, c e^{iwt/2}]]
/// = instantaneous_basis(t) exp(-i w t sigma_z / 2). Changes sign after a
/// full period.
ComplexMatrix2 half_phase_eigenbasis(const ModelParams& p, double t);

/// Lab sigma_z seen in the Instantaneous frame.
ComplexMatrix2 sigma_n(const ModelParams& p, double t);

/// Lab sigma_+ seen in the Instantaneous frame:
///   e^{iwt} [ sin(th)/2 sigma_z + cos^2(th/2) e^{-iwt} sigma_+
///             - sin^2(th/2) e^{iwt} sigma_- ].
ComplexMatrix2 sigma_plus_inst(const ModelParams& p, double t);

inline ComplexMatrix2 sigma_minus_inst(const ModelParams& p, double t) {
  return sigma_plus_inst(p, t).adjoint();
}

/// Basis matrix W_F(t) of `frame` (see the file comment).
ComplexMatrix2 frame_basis(Frame frame, const ModelParams& p, double t);

/// Matrix M with rho_to = M rho_from M^dagger.
ComplexMatrix2 frame_transform(Frame from, Frame to, const ModelParams& p, double t);

DensityMatrix convert_state(const DensityMatrix& rho, Frame from, Frame to,
                            const ModelParams& p, double t);

/// Raw-matrix variant, used on integrator states.
ComplexMatrix2 convert_matrix(const ComplexMatrix2& rho, Frame from, Frame to,
                              const ModelParams& p, double t);

/// psi(0) = cos(alpha)|+> + sin(alpha)|->, in the lab frame.
DensityMatrix initial_state(const ModelParams& p);

}  // namespace lindberry
