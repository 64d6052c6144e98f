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

#include "lindberry/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindberry/errors.hpp"

namespace lindberry {

namespace {

// Instantaneous-frame operators evaluated once per time point.
struct InstantaneousOperators {
  ComplexMatrix2 n;   // sigma_n(t)
  ComplexMatrix2 sp;  // sigma_+(t)
  ComplexMatrix2 sm;  // sigma_-(t)
  Complex e;          // e^{i w t}

  InstantaneousOperators(const ModelParams& p, double t)
      : n(sigma_n(p, t)),
        sp(sigma_plus_inst(p, t)),
        sm(sp.adjoint()),
        e(std::polar(1.0, p.omega * t)) {}
};

ComplexMatrix2 thermal_dissipator(const InstantaneousOperators& op, double lambda,
                                  double nbar, const ComplexMatrix2& r) {
  const ComplexMatrix2& n = op.n;
  const ComplexMatrix2& sp = op.sp;
  const ComplexMatrix2& sm = op.sm;
  const Complex e = op.e;
  const Complex e_inv = std::conj(e);
  const double q = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));

  const ComplexMatrix2 sp_r_sm = sp * r * sm;
  const ComplexMatrix2 sm_r_sp = sm * r * sp;

  // Symmetric (2n+1)/2 block.
  ComplexMatrix2 sym = -2.0 * r;
  sym += (1.0 - lambda * lambda) *
         (n * r * n - e_inv * e_inv * (sp * r * sp) - e * e * (sm * r * sm));
  sym += (1.0 + lambda * lambda) * (sp_r_sm + sm_r_sp);
  sym -= lambda * q * (e * (n * r * sm + sm * r * n) + e_inv * (sp * r * n + n * r * sp));

  // Antisymmetric 1/2 block; the anticommutator is with the image of sigma_z^D.
  const ComplexMatrix2 sz_image = lambda * n + q * (e_inv * sp + e * sm);
  ComplexMatrix2 anti = anticommutator(r, sz_image);
  anti += 2.0 * lambda * (sp_r_sm - sm_r_sp);
  anti += q * (e_inv * (n * r * sp - sp * r * n) + e * (sm * r * n - n * r * sm));

  return 0.5 * (2.0 * nbar + 1.0) * sym - 0.5 * anti;
}

ComplexMatrix2 dephasing_dissipator(const InstantaneousOperators& op, double lambda,
                                    const ComplexMatrix2& r) {
  const ComplexMatrix2& n = op.n;
  const ComplexMatrix2& sp = op.sp;
  const ComplexMatrix2& sm = op.sm;
  const Complex e = op.e;
  const Complex e_inv = std::conj(e);
  const double q = std::sqrt(std::max(0.0, 1.0 - lambda * lambda));

  ComplexMatrix2 out = lambda * lambda * (n * r * n);
  out += lambda * q * (e_inv * (n * r * sp + sp * r * n) + e * (n * r * sm + sm * r * n));
  out += (1.0 - lambda * lambda) *
         (e_inv * e_inv * (sp * r * sp) + e * e * (sm * r * sm) + sp * r * sm + sm * r * sp);
  out -= r;
  return out;
}

}  // namespace

std::string_view to_string(Channel channel) {
  return channel == Channel::Thermal ? "thermal" : "dephasing";
}

Generator::Generator(const GeneratorSpec& spec) : spec_(spec), derived_(derived(spec.params)) {
  if (spec.frame != Frame::Diagonal && spec.frame != Frame::Instantaneous) {
    throw DomainError("generators exist only in the diagonal and instantaneous frames, not " +
                      std::string(to_string(spec.frame)));
  }
}

ComplexMatrix2 Generator::operator()(double t, const ComplexMatrix2& rho) const {
  if (spec_.frame == Frame::Diagonal) {
    return spec_.channel == Channel::Thermal ? thermal_diagonal(rho) : dephasing_diagonal(rho);
  }
  return spec_.channel == Channel::Thermal ? thermal_instantaneous(t, rho)
                                           : dephasing_instantaneous(t, rho);
}

ComplexMatrix2 Generator::thermal_diagonal(const ComplexMatrix2& r) const {
  const ModelParams& p = spec_.params;
  const ComplexMatrix2 sz = pauli::sigma_z();
  const ComplexMatrix2 sp = pauli::sigma_plus();
  const ComplexMatrix2 sm = pauli::sigma_minus();
  ComplexMatrix2 out = -kI * commutator(derived_.lambda1 * sz, r);
  out += p.k * (p.nbar + 1.0) * (2.0 * sm * r * sp - anticommutator(sp * sm, r));
  out += p.k * p.nbar * (2.0 * sp * r * sm - anticommutator(sm * sp, r));
  return out;
}

ComplexMatrix2 Generator::dephasing_diagonal(const ComplexMatrix2& r) const {
  const ComplexMatrix2 sz = pauli::sigma_z();
  return -kI * commutator(derived_.lambda1 * sz, r) + 0.5 * spec_.params.k * (sz * r * sz - r);
}

ComplexMatrix2 Generator::thermal_instantaneous(double t, const ComplexMatrix2& r) const {
  const ModelParams& p = spec_.params;
  const InstantaneousOperators op(p, t);
  const ComplexMatrix2 h = (p.muB + 0.5 * p.omega) * pauli::sigma_z() - 0.5 * p.omega * op.n;
  return -kI * commutator(h, r) + p.k * thermal_dissipator(op, derived_.Lambda, p.nbar, r);
}

ComplexMatrix2 Generator::dephasing_instantaneous(double t, const ComplexMatrix2& r) const {
  const ModelParams& p = spec_.params;
  const InstantaneousOperators op(p, t);
  const ComplexMatrix2 h = (p.muB + 0.5 * p.omega) * pauli::sigma_z() - 0.5 * p.omega * op.n;
  return -kI * commutator(h, r) + 0.5 * p.k * dephasing_dissipator(op, derived_.Lambda, r);
}

ComplexMatrix2 thermal_diagonal(const ModelParams& p, const ComplexMatrix2& rho_d) {
  return Generator({Channel::Thermal, Frame::Diagonal, p})(0.0, rho_d);
}

ComplexMatrix2 dephasing_diagonal(const ModelParams& p, const ComplexMatrix2& rho_d) {
  return Generator({Channel::Dephasing, Frame::Diagonal, p})(0.0, rho_d);
}

ComplexMatrix2 thermal_instantaneous(const ModelParams& p, double t,
                                     const ComplexMatrix2& rho_i) {
  return Generator({Channel::Thermal, Frame::Instantaneous, p})(t, rho_i);
}

ComplexMatrix2 dephasing_instantaneous(const ModelParams& p, double t,
                                       const ComplexMatrix2& rho_i) {
  return Generator({Channel::Dephasing, Frame::Instantaneous, p})(t, rho_i);
}

ComplexMatrix2 thermal_dissipator_instantaneous(const ModelParams& p, double t,
                                                const ComplexMatrix2& rho_i) {
  return thermal_dissipator(InstantaneousOperators(p, t), derived(p).Lambda, p.nbar, rho_i);
}

ComplexMatrix2 dephasing_dissipator_instantaneous(const ModelParams& p, double t,
                                                  const ComplexMatrix2& rho_i) {
  return dephasing_dissipator(InstantaneousOperators(p, t), derived(p).Lambda, rho_i);
}

DensityMatrix thermal_fixed_point(const ModelParams& p) {
  if (!(p.k > 0.0)) {
    throw DomainError("thermal fixed point requires k > 0");
  }
  const double upper = p.nbar / (2.0 * p.nbar + 1.0);
  ComplexMatrix2 m;
  m << upper, 0.0, 0.0, 1.0 - upper;
  return DensityMatrix(m);
}

}  // namespace lindberry
