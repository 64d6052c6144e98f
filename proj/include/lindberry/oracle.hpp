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


// Reference propagation through the 4x4 Lindblad superoperator in the
// column-stacking convention vec(A X B) = (B^T kron A) vec(X). Built from
// H and jump operators only, so it shares no code with the generators.

#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>

#include "lindberry/generators.hpp"
#include "lindberry/model.hpp"
#include "lindberry/quantum_core.hpp"

namespace lindberry::oracle {

using Superoperator = Eigen::Matrix4cd;

struct Jump {
  double rate;
  ComplexMatrix2 op;  // contributes rate (L rho L^dag - {L^dag L, rho}/2)
};

Eigen::Vector4cd vec(const ComplexMatrix2& m);
ComplexMatrix2 unvec(const Eigen::Vector4cd& v);

Superoperator lindblad_superoperator(const ComplexMatrix2& h, std::span<const Jump> jumps);

/// Time-independent Diagonal-frame generator for the given channel.
Superoperator diagonal_superoperator(Channel channel, const ModelParams& p);

/// unvec(exp(L t) vec(rho0)).
ComplexMatrix2 propagate(const Superoperator& l, const ComplexMatrix2& rho0, double t);

}  // namespace lindberry::oracle
