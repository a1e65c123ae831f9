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

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace negentropy::quantum {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions. Subsystem 0 is the most significant factor
/// of the Kronecker ordering, i.e. |a b> has flat index a * dim(b) + b.
using Dims = std::vector<int>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenTol = 1e-10;
inline constexpr int kMaxQubits = 10;
inline constexpr int kMaxDimension = 1 << kMaxQubits;

/// Product of the entries of dims (1 for an empty list).
int total_dimension(const Dims& dims);

/// A Hermitian, trace <= 1 operator over a labeled tensor product. Subnormalized
/// states are allowed. The constructor checks the O(d^2) invariants (shape,
/// Hermiticity, trace range) and symmetrizes; positivity is checked by
/// check_invariants() since it needs an eigendecomposition.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, Dims dims);

  static DensityOperator maximally_mixed(const Dims& dims);
  /// |index><index| in the computational basis.
  static DensityOperator basis_state(const Dims& dims, int index);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  int subsystem_count() const { return static_cast<int>(dims_.size()); }
  double trace() const { return matrix_.trace().real(); }

  /// Ascending eigenvalues (unclamped).
  RealVector eigenvalues() const;

 private:
  Matrix matrix_;
  Dims dims_;
};

/// Full validator: the constructor invariants plus eigenvalues >= -1e-10.
/// Throws InvalidArgument naming the violated invariant.
void check_invariants(const DensityOperator& rho);

/// A normalized state vector.
class PureState {
 public:
  PureState(Vector amplitudes, Dims dims);

  /// Product basis state.
  static PureState basis_state(const Dims& dims, int index);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  int dimension() const { return static_cast<int>(amplitudes_.size()); }

  DensityOperator density() const;

 private:
  Vector amplitudes_;
  Dims dims_;
};

/// Named partition of a qubit register into contiguous blocks. Every qubit is
/// one subsystem of dimension 2, so block names resolve to subsystem indices.
class RegisterLayout {
 public:
  struct Block {
    std::string name;
    int qubits = 0;
  };

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  int total_qubits() const { return total_qubits_; }
  bool contains(const std::string& name) const;

  int qubit_count(const std::string& name) const;
  int offset(const std::string& name) const;

  /// Subsystem indices of the named block, ascending.
  std::vector<int> qubits(const std::string& name) const;
  /// Union of the named blocks' indices, ascending.
  std::vector<int> qubits(const std::vector<std::string>& names) const;

  Dims dims() const { return Dims(static_cast<size_t>(total_qubits_), 2); }

  /// Replaces block `name` by consecutive blocks `parts` whose sizes sum to it.
  RegisterLayout split(const std::string& name, const std::vector<Block>& parts) const;

 private:
  std::vector<Block> blocks_;
  int total_qubits_ = 0;
};

/// Schmidt form of a bipartite pure state: psi = sum_i c_i |l_i> |r_i>.
struct SchmidtDecomposition {
  std::vector<double> coefficients;  // nonincreasing, sum of squares = 1
  Matrix left_basis;                 // columns l_i
  Matrix right_basis;                // columns r_i
};

}  // namespace negentropy::quantum
