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

// Two-level state algebra: 2x2 complex matrices, the Pauli basis, density
// matrix validation and the Bloch-vector / purity maps.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace lindberry {

using Complex = std::complex<double>;
using ComplexMatrix2 = Eigen::Matrix2cd;

inline constexpr Complex kI{0.0, 1.0};

namespace pauli {

inline ComplexMatrix2 identity() { return ComplexMatrix2::Identity(); }

inline ComplexMatrix2 sigma_x() {
  ComplexMatrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline ComplexMatrix2 sigma_y() {
  ComplexMatrix2 m;
  m << 0.0, -kI, kI, 0.0;
  return m;
}

inline ComplexMatrix2 sigma_z() {
  ComplexMatrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// Raising operator |1><2| in the sigma_z eigenbasis, [[0,1],[0,0]].
inline ComplexMatrix2 sigma_plus() {
  ComplexMatrix2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

inline ComplexMatrix2 sigma_minus() {
  ComplexMatrix2 m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

}  // namespace pauli

inline ComplexMatrix2 commutator(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  return a * b - b * a;
}

inline ComplexMatrix2 anticommutator(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  return a * b + b * a;
}

/// Largest |m_ij| over the four entries.
double max_abs(const ComplexMatrix2& m);

/// Eigenvalues of a Hermitian 2x2 matrix in ascending order, in closed form.
/// Only the Hermitian part of `m` is used.
std::array<double, 2> hermitian_eigenvalues(const ComplexMatrix2& m);

/// Acceptance thresholds for the density-matrix invariants.
struct Tolerances {
  double hermiticity = 1e-12;  // max |rho - rho^dagger|
  double trace = 1e-12;        // |Tr rho - 1|
  double min_eigenvalue = -1e-10;
};

/// Module defaults for states built by hand or by closed forms.
inline constexpr Tolerances kStateTolerances{};
/// Looser yardstick for states produced by numerical integration.
inline constexpr Tolerances kIntegratorTolerances{1e-12, 1e-10, -1e-8};

struct Violation {
  std::string invariant;
  double measured;
  double tolerance;
};

/// First violated invariant of `m`, or nothing when `m` is a valid state.
std::optional<Violation> check_density(const ComplexMatrix2& m,
                                       const Tolerances& tol = kStateTolerances);

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// A validated 2x2 density matrix. Immutable once constructed; invalid input
/// throws ValidationError and is never repaired.
class DensityMatrix {
 public:
  /// Maximally mixed state.
  DensityMatrix();

  explicit DensityMatrix(const ComplexMatrix2& m,
                         const Tolerances& tol = kStateTolerances);

  const ComplexMatrix2& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  static DensityMatrix pure(const Eigen::Vector2cd& psi);

 private:
  ComplexMatrix2 m_;
};

/// S_i = Tr(rho sigma_i).
BlochVector bloch_from_density(const DensityMatrix& rho);

/// rho = (1 + S.sigma)/2. Throws DomainError when |S| > 1 + 1e-10.
DensityMatrix density_from_bloch(const BlochVector& s);

/// delta = 1 - Tr rho^2 (idempotency defect).
double linear_entropy(const DensityMatrix& rho);

}  // namespace lindberry
