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

#include "negentropy/quantum/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "negentropy/errors.hpp"

namespace negentropy::quantum {

int total_dimension(const Dims& dims) {
  long long d = 1;
  for (int k : dims) {
    if (k < 1) throw InvalidArgument("subsystem dimension must be positive");
    d *= k;
    if (d > kMaxDimension) {
      std::ostringstream os;
      os << "state dimension exceeds the dense capacity of " << kMaxDimension << " ("
         << kMaxQubits << " qubits)";
      throw CapacityError(os.str());
    }
  }
  return static_cast<int>(d);
}

DensityOperator::DensityOperator(Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  const int d = total_dimension(dims_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InvalidArgument("density matrix shape does not match the product of dims");
  }
  const double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (d > 0 && herm > kHermitianTol) {
    std::ostringstream os;
    os << "density matrix is not Hermitian (max deviation " << herm << ")";
    throw InvalidArgument(os.str());
  }
  matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  const double tr = trace();
  if (tr < -kEigenTol || tr > 1.0 + kEigenTol) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " outside [0, 1]";
    throw InvalidArgument(os.str());
  }
}

DensityOperator DensityOperator::maximally_mixed(const Dims& dims) {
  const int d = total_dimension(dims);
  return DensityOperator(Matrix::Identity(d, d) / static_cast<double>(d), dims);
}

DensityOperator DensityOperator::basis_state(const Dims& dims, int index) {
  const int d = total_dimension(dims);
  if (index < 0 || index >= d) throw InvalidArgument("basis index out of range");
  Matrix m = Matrix::Zero(d, d);
  m(index, index) = 1.0;
  return DensityOperator(std::move(m), dims);
}

RealVector DensityOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void check_invariants(const DensityOperator& rho) {
  const RealVector ev = rho.eigenvalues();
  if (ev.size() > 0 && ev.minCoeff() < -kEigenTol) {
    std::ostringstream os;
    os << "density matrix has negative eigenvalue " << ev.minCoeff();
    throw InvalidArgument(os.str());
  }
}

PureState::PureState(Vector amplitudes, Dims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amplitudes_.size() != total_dimension(dims_)) {
    throw InvalidArgument("amplitude count does not match the product of dims");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kHermitianTol) {
    throw InvalidArgument("pure state is not normalized");
  }
}

PureState PureState::basis_state(const Dims& dims, int index) {
  const int d = total_dimension(dims);
  if (index < 0 || index >= d) throw InvalidArgument("basis index out of range");
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return PureState(std::move(v), dims);
}

DensityOperator PureState::density() const {
  return DensityOperator(amplitudes_ * amplitudes_.adjoint(), dims_);
}

RegisterLayout::RegisterLayout(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  std::unordered_set<std::string> seen;
  for (const auto& b : blocks_) {
    if (b.name.empty()) throw InvalidArgument("register block name must be non-empty");
    if (b.qubits < 0) throw InvalidArgument("register block '" + b.name + "' has negative size");
    if (!seen.insert(b.name).second) {
      throw InvalidArgument("duplicate register block name '" + b.name + "'");
    }
    total_qubits_ += b.qubits;
  }
}

bool RegisterLayout::contains(const std::string& name) const {
  return std::any_of(blocks_.begin(), blocks_.end(),
                     [&](const Block& b) { return b.name == name; });
}

int RegisterLayout::qubit_count(const std::string& name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b.qubits;
  }
  throw AddressingError("unknown register block '" + name + "'");
}

int RegisterLayout::offset(const std::string& name) const {
  int off = 0;
  for (const auto& b : blocks_) {
    if (b.name == name) return off;
    off += b.qubits;
  }
  throw AddressingError("unknown register block '" + name + "'");
}

std::vector<int> RegisterLayout::qubits(const std::string& name) const {
  std::vector<int> out(static_cast<size_t>(qubit_count(name)));
  std::iota(out.begin(), out.end(), offset(name));
  return out;
}

std::vector<int> RegisterLayout::qubits(const std::vector<std::string>& names) const {
  std::vector<int> out;
  for (const auto& n : names) {
    auto q = qubits(n);
    out.insert(out.end(), q.begin(), q.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RegisterLayout RegisterLayout::split(const std::string& name,
                                     const std::vector<Block>& parts) const {
  const int size = qubit_count(name);
  int sum = 0;
  for (const auto& p : parts) sum += p.qubits;
  if (sum != size) throw InvalidArgument("split parts do not cover block '" + name + "'");
  std::vector<Block> out;
  for (const auto& b : blocks_) {
    if (b.name == name) {
      out.insert(out.end(), parts.begin(), parts.end());
    } else {
      out.push_back(b);
    }
  }
  return RegisterLayout(std::move(out));
}

}  // namespace negentropy::quantum
