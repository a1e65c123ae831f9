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

#include "negentropy/quantum/ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "negentropy/errors.hpp"

namespace negentropy::quantum {

namespace {

std::vector<long long> strides(const Dims& dims) {
  std::vector<long long> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    s[static_cast<size_t>(i)] = s[static_cast<size_t>(i) + 1] * dims[static_cast<size_t>(i) + 1];
  }
  return s;
}

void check_order(const Dims& dims, const std::vector<int>& order) {
  if (order.size() != dims.size()) {
    throw AddressingError("permutation length does not match subsystem count");
  }
  std::vector<bool> seen(dims.size(), false);
  for (int k : order) {
    if (k < 0 || k >= static_cast<int>(dims.size()) || seen[static_cast<size_t>(k)]) {
      throw AddressingError("invalid subsystem permutation");
    }
    seen[static_cast<size_t>(k)] = true;
  }
}

/// map[old flat index] = new flat index under the reordering `order`.
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order) {
  check_order(dims, order);
  const int d = total_dimension(dims);
  Dims new_dims(order.size());
  for (size_t i = 0; i < order.size(); ++i) new_dims[i] = dims[static_cast<size_t>(order[i])];
  const auto old_strides = strides(dims);
  const auto new_strides = strides(new_dims);
  std::vector<int> map(static_cast<size_t>(d));
  for (int idx = 0; idx < d; ++idx) {
    long long out = 0;
    for (size_t i = 0; i < order.size(); ++i) {
      const auto k = static_cast<size_t>(order[i]);
      const long long digit = (idx / old_strides[k]) % dims[k];
      out += digit * new_strides[i];
    }
    map[static_cast<size_t>(idx)] = static_cast<int>(out);
  }
  return map;
}

std::vector<int> inverse_order(const std::vector<int>& order) {
  std::vector<int> inv(order.size());
  for (size_t i = 0; i < order.size(); ++i) inv[static_cast<size_t>(order[i])] = static_cast<int>(i);
  return inv;
}

std::vector<int> complement(int count, const std::vector<int>& subset) {
  std::vector<bool> in(static_cast<size_t>(count), false);
  for (int k : subset) {
    if (k < 0 || k >= count) throw AddressingError("subsystem index out of range");
    if (in[static_cast<size_t>(k)]) throw AddressingError("subsystem listed twice");
    in[static_cast<size_t>(k)] = true;
  }
  std::vector<int> out;
  for (int k = 0; k < count; ++k) {
    if (!in[static_cast<size_t>(k)]) out.push_back(k);
  }
  return out;
}

int product_of(const Dims& dims, const std::vector<int>& idx) {
  int d = 1;
  for (int k : idx) d *= dims[static_cast<size_t>(k)];
  return d;
}

Dims select(const Dims& dims, const std::vector<int>& idx) {
  Dims out;
  out.reserve(idx.size());
  for (int k : idx) out.push_back(dims[static_cast<size_t>(k)]);
  return out;
}

void require_psd(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() < -kEigenTol) {
    throw InvalidArgument(std::string(what) + " is not positive semidefinite");
  }
}

std::vector<int> ascending_order(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> order = first;
  order.insert(order.end(), second.begin(), second.end());
  return order;
}

}  // namespace

HermitianEigen eigh(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  return {es.eigenvalues(), es.eigenvectors()};
}

Matrix psd_sqrt(const Matrix& psd) {
  const auto [values, vectors] = eigh(psd);
  RealVector root = values.cwiseMax(0.0).cwiseSqrt();
  return vectors * root.asDiagonal() * vectors.adjoint();
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double shannon_bits(const RealVector& probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  total_dimension(dims);  // capacity check
  const int da = a.dimension();
  const int db = b.dimension();
  Matrix out(da * db, da * db);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
    }
  }
  return DensityOperator(std::move(out), std::move(dims));
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  total_dimension(dims);
  Vector out(a.dimension() * b.dimension());
  for (int i = 0; i < a.dimension(); ++i) {
    out.segment(i * b.dimension(), b.dimension()) = a.amplitudes()(i) * b.amplitudes();
  }
  return PureState(std::move(out), std::move(dims));
}

DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order) {
  const auto map = permutation_map(rho.dims(), order);
  const int d = rho.dimension();
  Matrix out(d, d);
  for (int j = 0; j < d; ++j) {
    const int mj = map[static_cast<size_t>(j)];
    for (int i = 0; i < d; ++i) out(map[static_cast<size_t>(i)], mj) = rho.matrix()(i, j);
  }
  return DensityOperator(std::move(out), select(rho.dims(), order));
}

PureState permute(const PureState& psi, const std::vector<int>& order) {
  const auto map = permutation_map(psi.dims(), order);
  Vector out(psi.dimension());
  for (int i = 0; i < psi.dimension(); ++i) out(map[static_cast<size_t>(i)]) = psi.amplitudes()(i);
  return PureState(std::move(out), select(psi.dims(), order));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  const auto traced = complement(rho.subsystem_count(), kept);
  if (traced.empty()) return rho;
  const int dk = product_of(rho.dims(), kept);
  const int dt = product_of(rho.dims(), traced);
  const DensityOperator p = permute(rho, ascending_order(kept, traced));
  Matrix out = Matrix::Zero(dk, dk);
  for (int b = 0; b < dk; ++b) {
    for (int a = 0; a < dk; ++a) {
      Complex acc = 0.0;
      for (int r = 0; r < dt; ++r) acc += p.matrix()(a * dt + r, b * dt + r);
      out(a, b) = acc;
    }
  }
  return DensityOperator(std::move(out), select(rho.dims(), kept));
}

DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              const std::set<std::string>& keep) {
  if (layout.total_qubits() != rho.subsystem_count()) {
    throw AddressingError("register layout does not match the state's subsystem count");
  }
  return partial_trace(rho, layout.qubits(std::vector<std::string>(keep.begin(), keep.end())));
}

DensityOperator reduced_state(const PureState& psi, const std::vector<int>& keep) {
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  const auto traced = complement(static_cast<int>(psi.dims().size()), kept);
  const int dk = product_of(psi.dims(), kept);
  const int dt = product_of(psi.dims(), traced);
  const PureState p = permute(psi, ascending_order(kept, traced));
  Eigen::Map<const Matrix> m(p.amplitudes().data(), dt, dk);
  Matrix out = m.transpose() * m.conjugate();
  return DensityOperator(std::move(out), select(psi.dims(), kept));
}

PureState purify(const DensityOperator& rho) {
  if (std::abs(rho.trace() - 1.0) > kHermitianTol) {
    throw InvalidArgument("purify requires a normalized state");
  }
  const auto [values, vectors] = eigh(rho.matrix());
  if (values.size() > 0 && values.minCoeff() < -kEigenTol) {
    throw InvalidArgument("purify requires a positive semidefinite state");
  }
  const int d = rho.dimension();
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(values(i), 0.0));
    for (int s = 0; s < d; ++s) psi(s * d + i) = w * vectors(s, i);
  }
  psi.normalize();
  Dims dims = rho.dims();
  dims.insert(dims.end(), rho.dims().begin(), rho.dims().end());
  return PureState(std::move(psi), std::move(dims));
}

double fidelity(const Matrix& r, const Matrix& s) {
  if (r.rows() != s.rows()) throw InvalidArgument("fidelity: dimension mismatch");
  require_psd(r, "fidelity argument");
  require_psd(s, "fidelity argument");
  // F = tr sqrt(B^dag s B) with r = B B^dag restricted to the support of r.
  // Rounding noise in the kernel of r would otherwise enter through its
  // square root at the 1e-8 level.
  const auto er = eigh(r);
  const double top = std::max(er.values.maxCoeff(), 0.0);
  if (top <= 0.0) return 0.0;
  std::vector<int> support;
  for (int i = 0; i < er.values.size(); ++i) {
    if (er.values(i) > 1e-14 * top) support.push_back(i);
  }
  Matrix b(r.rows(), static_cast<int>(support.size()));
  for (size_t c = 0; c < support.size(); ++c) {
    b.col(static_cast<int>(c)) = er.vectors.col(support[c]) * std::sqrt(er.values(support[c]));
  }
  const Matrix m = b.adjoint() * s * b;
  const RealVector ev = eigh(0.5 * (m + m.adjoint())).values;
  return ev.cwiseMax(0.0).cwiseSqrt().sum();
}

double fidelity(const DensityOperator& r, const DensityOperator& s) {
  return fidelity(r.matrix(), s.matrix());
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dimension() != sigma.dimension()) {
    throw InvalidArgument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix() - sigma.matrix(), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double purified_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dimension() != sigma.dimension()) {
    throw InvalidArgument("purified_distance: dimension mismatch");
  }
  const double slack = std::max(0.0, 1.0 - rho.trace()) * std::max(0.0, 1.0 - sigma.trace());
  const double fbar = std::min(1.0, fidelity(rho, sigma) + std::sqrt(slack));
  return std::sqrt(std::max(0.0, 1.0 - fbar * fbar));
}

Matrix haar_unitary(int dimension, std::uint64_t seed) {
  if (dimension < 1) throw InvalidArgument("haar_unitary: dimension must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(dimension, dimension);
  for (int j = 0; j < dimension; ++j) {
    for (int i = 0; i < dimension; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dimension; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    q.col(j) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return q;
}

PureState random_pure_state(const Dims& dims, std::uint64_t seed) {
  const int d = total_dimension(dims);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(normal(rng), normal(rng));
  v.normalize();
  return PureState(std::move(v), dims);
}

DensityOperator random_density(const Dims& dims, int rank, std::uint64_t seed) {
  const int d = total_dimension(dims);
  if (rank < 1 || rank > d) throw InvalidArgument("random_density: rank out of range");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < d; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(std::move(rho), dims);
}

DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u,
                              const std::vector<int>& targets) {
  const int dt = product_of(rho.dims(), targets);
  if (u.rows() != dt || u.cols() != dt) {
    throw InvalidArgument("apply_unitary: unitary dimension does not match the target");
  }
  const auto rest = complement(rho.subsystem_count(), targets);
  const auto order = ascending_order(rest, targets);
  DensityOperator p = permute(rho, order);
  Matrix m = p.matrix();
  const int blocks = p.dimension() / dt;
  for (int b = 0; b < blocks; ++b) m.middleRows(b * dt, dt) = u * m.middleRows(b * dt, dt);
  const Matrix u_dag = u.adjoint();
  for (int b = 0; b < blocks; ++b) m.middleCols(b * dt, dt) = m.middleCols(b * dt, dt) * u_dag;
  return permute(DensityOperator(std::move(m), p.dims()), inverse_order(order));
}

DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u,
                              const RegisterLayout& layout, const std::string& target) {
  if (layout.total_qubits() != rho.subsystem_count()) {
    throw AddressingError("register layout does not match the state's subsystem count");
  }
  return apply_unitary(rho, u, layout.qubits(target));
}

PureState apply_unitary(const PureState& psi, const Matrix& u, const std::vector<int>& targets) {
  const int dt = product_of(psi.dims(), targets);
  if (u.rows() != dt || u.cols() != dt) {
    throw InvalidArgument("apply_unitary: unitary dimension does not match the target");
  }
  const auto rest = complement(static_cast<int>(psi.dims().size()), targets);
  const auto order = ascending_order(rest, targets);
  PureState p = permute(psi, order);
  Vector v = p.amplitudes();
  const int blocks = p.dimension() / dt;
  for (int b = 0; b < blocks; ++b) v.segment(b * dt, dt) = u * v.segment(b * dt, dt);
  v.normalize();
  return permute(PureState(std::move(v), p.dims()), inverse_order(order));
}

DensityOperator replace_subsystems(const DensityOperator& rho, const std::vector<int>& targets,
                                   const DensityOperator& replacement) {
  const auto rest = complement(rho.subsystem_count(), targets);
  const Dims target_dims = select(rho.dims(), targets);
  if (replacement.dimension() != total_dimension(target_dims)) {
    throw InvalidArgument("replace_subsystems: replacement dimension mismatch");
  }
  const DensityOperator reshaped(replacement.matrix(), target_dims);
  const DensityOperator combined = tensor(partial_trace(rho, rest), reshaped);
  return permute(combined, inverse_order(ascending_order(rest, targets)));
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, const std::vector<int>& left) {
  std::vector<int> l = left;
  std::sort(l.begin(), l.end());
  const auto right = complement(static_cast<int>(psi.dims().size()), l);
  const int dl = product_of(psi.dims(), l);
  const int dr = product_of(psi.dims(), right);
  const PureState p = permute(psi, ascending_order(l, right));
  // Column-major map: element (r, a) is amplitude a * dr + r.
  Eigen::Map<const Matrix> m_t(p.amplitudes().data(), dr, dl);
  Eigen::JacobiSVD<Matrix> svd(m_t.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const auto& sv = svd.singularValues();
  out.coefficients.assign(sv.data(), sv.data() + sv.size());
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  return out;
}

SchmidtDecomposition schmidt_decompose(const PureState& psi, const RegisterLayout& layout,
                                       const std::set<std::string>& left_blocks) {
  if (layout.total_qubits() != static_cast<int>(psi.dims().size())) {
    throw AddressingError("register layout does not match the state's subsystem count");
  }
  return schmidt_decompose(
      psi, layout.qubits(std::vector<std::string>(left_blocks.begin(), left_blocks.end())));
}

DensityOperator gibbs_state(const std::vector<double>& level_energies, double beta) {
  if (level_energies.empty()) throw InvalidArgument("gibbs_state: no levels");
  if (beta < 0.0) throw InvalidArgument("gibbs_state: beta must be non-negative");
  const double e_min = *std::min_element(level_energies.begin(), level_energies.end());
  const int n = static_cast<int>(level_energies.size());
  RealVector w(n);
  for (int i = 0; i < n; ++i) {
    const double e = level_energies[static_cast<size_t>(i)];
    if (!std::isfinite(e)) throw InvalidArgument("gibbs_state: energies must be finite");
    w(i) = std::exp(-beta * (e - e_min));
  }
  w /= w.sum();
  Matrix m = Matrix::Zero(n, n);
  m.diagonal() = w.cast<Complex>();
  return DensityOperator(std::move(m), Dims{n});
}

PureState maximally_entangled(int local_dimension) {
  const int d = local_dimension;
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(std::move(v), Dims{d, d});
}

}  // namespace negentropy::quantum
