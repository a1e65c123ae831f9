// Copyright 2026 The Negentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Interior-point solvers for the two conditional-entropy programs. Both work
// on an A-first bipartite matrix rho_AB and optimize over Hermitian sigma_B
// expanded in an orthonormal Hermitian basis.

#include <vector>

#include "negentropy/entropy/entropy.hpp"
#include "negentropy/quantum/state.hpp"

namespace negentropy::entropy::detail {

using quantum::Complex;
using quantum::Matrix;
using quantum::RealVector;

struct BasisEntry {
  int row;
  int col;
  Complex value;
};

/// Orthonormal (Hilbert-Schmidt) basis of d x d Hermitian matrices: the d
/// diagonal units first, then symmetric and antisymmetric off-diagonal pairs.
class HermitianBasis {
 public:
  explicit HermitianBasis(int dim);

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<BasisEntry>& operator[](int k) const {
    return elements_[static_cast<size_t>(k)];
  }

  Matrix assemble(const Eigen::VectorXd& x) const;
  Eigen::VectorXd coordinates(const Matrix& hermitian) const;
  /// tr(G_k) for every k.
  Eigen::VectorXd traces() const;

 private:
  int dim_;
  std::vector<std::vector<BasisEntry>> elements_;
};

struct MinEntropySolution {
  Matrix sigma;          // feasible: id (x) sigma >= rho
  double primal = 0.0;   // tr sigma
  double dual = 0.0;     // certified lower bound on the optimal tr sigma
  double gap_bits = 0.0; // log2(primal / dual)
  int iterations = 0;
};

struct MaxEntropySolution {
  Matrix sigma;           // density operator on B
  double fidelity = 0.0;  // F(rho, id (x) sigma)
  double upper = 0.0;     // certified upper bound on the optimal fidelity
  double gap_bits = 0.0;  // 2 log2(upper / fidelity)
  int iterations = 0;
};

/// min tr sigma s.t. id_A (x) sigma - rho >= 0, by a log-barrier path
/// following method. The gap is certified by a rescaled dual point.
MinEntropySolution solve_min_entropy(const Matrix& rho_ab, int dim_a, int dim_b,
                                     const SolverOptions& options);

/// max F(rho, id_A (x) sigma) over density operators sigma with a log-det
/// barrier on sigma. The gap is certified by the Frank-Wolfe bound of the
/// concave objective.
MaxEntropySolution solve_max_entropy(const Matrix& rho_ab, int dim_a, int dim_b,
                                     const SolverOptions& options);

}  // namespace negentropy::entropy::detail
