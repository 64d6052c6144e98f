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


#include "lindberry/oracle.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <vector>

namespace lindberry::oracle {

Eigen::Vector4cd vec(const ComplexMatrix2& m) {
  return Eigen::Vector4cd(m(0, 0), m(1, 0), m(0, 1), m(1, 1));
}

ComplexMatrix2 unvec(const Eigen::Vector4cd& v) {
  ComplexMatrix2 m;
  m << v(0), v(2), v(1), v(3);
  return m;
}

Superoperator lindblad_superoperator(const ComplexMatrix2& h, std::span<const Jump> jumps) {
  const ComplexMatrix2 one = ComplexMatrix2::Identity();
  Superoperator l = -kI * (Eigen::kroneckerProduct(one, h) -
                           Eigen::kroneckerProduct(h.transpose(), one))
                              .eval();
  for (const Jump& j : jumps) {
    const ComplexMatrix2 ldl = j.op.adjoint() * j.op;
    l += j.rate * (Eigen::kroneckerProduct(j.op.conjugate(), j.op) -
                   0.5 * Eigen::kroneckerProduct(one, ldl) -
                   0.5 * Eigen::kroneckerProduct(ldl.transpose(), one))
                      .eval();
  }
  return l;
}

Superoperator diagonal_superoperator(Channel channel, const ModelParams& p) {
  const double lambda1 =
      std::hypot(p.muB * std::sin(p.theta), p.muB * std::cos(p.theta) - 0.5 * p.omega);
  ComplexMatrix2 h;
  h << lambda1, 0.0, 0.0, -lambda1;
  ComplexMatrix2 lower, raise, z;
  lower << 0.0, 0.0, 1.0, 0.0;
  raise << 0.0, 1.0, 0.0, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  std::vector<Jump> jumps;
  if (channel == Channel::Thermal) {
    jumps = {{2.0 * p.k * (p.nbar + 1.0), lower}, {2.0 * p.k * p.nbar, raise}};
  } else {
    jumps = {{0.5 * p.k, z}};
  }
  return lindblad_superoperator(h, jumps);
}

ComplexMatrix2 propagate(const Superoperator& l, const ComplexMatrix2& rho0, double t) {
  const Superoperator lt = l * t;
  const Superoperator e = lt.exp();
  return unvec(e * vec(rho0));
}

}  // namespace lindberry::oracle
