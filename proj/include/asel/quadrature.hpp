// Copyright 2026 The Authors.
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

#ifndef ASEL_QUADRATURE_HPP_
#define ASEL_QUADRATURE_HPP_

#include <vector>

namespace asel {

// Nodes and weights for integrals of (1 - x)^alpha (1 + x)^beta g(x) on [-1, 1].
struct GaussJacobiRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double alpha = 0.0;
  double beta = 0.0;
};

// Golub-Welsch start, then Newton refinement of each node on P_n^{(a,b)}
// with weights from the closed-form Christoffel expression. alpha, beta > -1.
GaussJacobiRule gauss_jacobi(int n, double alpha, double beta);

}  // namespace asel

#endif  // ASEL_QUADRATURE_HPP_
