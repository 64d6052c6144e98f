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

// Master-equation right-hand sides d(rho)/dt for the two dissipation channels.
//
// Both channels are defined in the Diagonal frame, where sigma_+- are the
// ladder operators of the sigma_z eigenbasis:
//
//   thermal   -i[l1 sz, rho] + k(n+1)(2 s- rho s+ - {s+ s-, rho})
//                            + k n   (2 s+ rho s- - {s- s+, rho})
//   dephasing -i[l1 sz, rho] + (k/2)(sz rho sz - rho)
//
// The Instantaneous-frame versions are the same equations carried into that
// frame, written out term by term with Lambda, sigma_n(t) and sigma_+-(t).

#pragma once

#include <string_view>

#include "lindberry/model.hpp"
#include "lindberry/quantum_core.hpp"

namespace lindberry {

enum class Channel { Thermal, Dephasing };

std::string_view to_string(Channel channel);

struct GeneratorSpec {
  Channel channel = Channel::Thermal;
  Frame frame = Frame::Diagonal;  // Diagonal or Instantaneous
  ModelParams params;
};

/// Callable RHS for a GeneratorSpec with the derived parameters cached.
class Generator {
 public:
  /// Throws DegeneracyError (lambda1 = 0) or DomainError (unsupported frame).
  explicit Generator(const GeneratorSpec& spec);

  ComplexMatrix2 operator()(double t, const ComplexMatrix2& rho) const;

  const GeneratorSpec& spec() const noexcept { return spec_; }
  bool time_dependent() const noexcept { return spec_.frame == Frame::Instantaneous; }

 private:
  ComplexMatrix2 thermal_diagonal(const ComplexMatrix2& rho) const;
  ComplexMatrix2 dephasing_diagonal(const ComplexMatrix2& rho) const;
  ComplexMatrix2 thermal_instantaneous(double t, const ComplexMatrix2& rho) const;
  ComplexMatrix2 dephasing_instantaneous(double t, const ComplexMatrix2& rho) const;

  GeneratorSpec spec_;
  DerivedParams derived_;
};

ComplexMatrix2 thermal_diagonal(const ModelParams& p, const ComplexMatrix2& rho_d);
ComplexMatrix2 dephasing_diagonal(const ModelParams& p, const ComplexMatrix2& rho_d);
ComplexMatrix2 thermal_instantaneous(const ModelParams& p, double t,
                                     const ComplexMatrix2& rho_i);
ComplexMatrix2 dephasing_instantaneous(const ModelParams& p, double t,
                                       const ComplexMatrix2& rho_i);

/// Dissipative part only, without the k prefactor (the L_I of the
/// Instantaneous-frame master equations).
ComplexMatrix2 thermal_dissipator_instantaneous(const ModelParams& p, double t,
                                                const ComplexMatrix2& rho_i);
ComplexMatrix2 dephasing_dissipator_instantaneous(const ModelParams& p, double t,
                                                  const ComplexMatrix2& rho_i);

/// Gibbs state diag(n/(2n+1), (n+1)/(2n+1)) of the thermal channel, in the
/// Diagonal frame. Throws DomainError when k <= 0.
DensityMatrix thermal_fixed_point(const ModelParams& p);

}  // namespace lindberry
