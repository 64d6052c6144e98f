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

#include "lindberry/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lindberry/errors.hpp"

namespace lindberry {

double max_abs(const ComplexMatrix2& m) {
  return std::max({std::abs(m(0, 0)), std::abs(m(0, 1)), std::abs(m(1, 0)),
                   std::abs(m(1, 1))});
}

std::array<double, 2> hermitian_eigenvalues(const ComplexMatrix2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double half_trace = 0.5 * (a + d);
  // (tr/2)^2 - det rewritten as ((a-d)/2)^2 + |b|^2 to avoid cancellation.
  const double radius = std::hypot(0.5 * (a - d), std::abs(b));
  return {half_trace - radius, half_trace + radius};
}

std::optional<Violation> check_density(const ComplexMatrix2& m, const Tolerances& tol) {
  const double herm = max_abs(m - m.adjoint());
  if (!(herm <= tol.hermiticity)) {
    return Violation{"hermiticity", herm, tol.hermiticity};
  }
  const double trace = std::abs(m.trace() - 1.0);
  if (!(trace <= tol.trace)) {
    return Violation{"trace", trace, tol.trace};
  }
  const double min_eig = hermitian_eigenvalues(m)[0];
  if (!(min_eig >= tol.min_eigenvalue)) {
    return Violation{"positivity", min_eig, tol.min_eigenvalue};
  }
  return std::nullopt;
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix::DensityMatrix() : m_(0.5 * ComplexMatrix2::Identity()) {}

DensityMatrix::DensityMatrix(const ComplexMatrix2& m, const Tolerances& tol) : m_(m) {
  if (auto v = check_density(m, tol)) {
    std::ostringstream os;
    os << "invalid density matrix: " << v->invariant << " violated (measured "
       << v->measured << ", tolerance " << v->tolerance << ")";
    throw ValidationError(v->invariant, v->measured, v->tolerance, os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::Vector2cd& psi) {
  const double n = psi.norm();
  if (n == 0.0) {
    throw DomainError("pure state from the zero vector");
  }
  const Eigen::Vector2cd u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  const ComplexMatrix2& m = rho.matrix();
  // Tr(rho sigma_x) = rho_12 + rho_21, Tr(rho sigma_y) = i(rho_12 - rho_21).
  return {(m(0, 1) + m(1, 0)).real(), (kI * (m(0, 1) - m(1, 0))).real(),
          (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix density_from_bloch(const BlochVector& s) {
  if (s.norm() > 1.0 + 1e-10) {
    std::ostringstream os;
    os << "Bloch vector norm " << s.norm() << " exceeds 1 (non-physical state)";
    throw DomainError(os.str());
  }
  ComplexMatrix2 m;
  m << 1.0 + s.z, Complex(s.x, -s.y), Complex(s.x, s.y), 1.0 - s.z;
  return DensityMatrix(0.5 * m);
}

double linear_entropy(const DensityMatrix& rho) {
  return 1.0 - (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace lindberry
