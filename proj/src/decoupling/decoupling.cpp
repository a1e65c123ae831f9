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

#include "negentropy/decoupling/decoupling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "negentropy/entropy/entropy.hpp"
#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::decoupling {
namespace {

using quantum::Complex;
using quantum::Dims;
using quantum::Vector;

std::vector<int> range(int begin, int count) {
  std::vector<int> out(static_cast<size_t>(count));
  std::iota(out.begin(), out.end(), begin);
  return out;
}

Dims qubit_dims(int count) { return Dims(static_cast<size_t>(count), 2); }

// rho restricted to system (x) environment, system qubits first.
struct SystemEnvironment {
  DensityOperator state;
  int n;
  int g;
};

SystemEnvironment system_environment(const DensityOperator& global, const RegisterLayout& layout,
                                     const std::string& system, const std::string& environment) {
  if (global.subsystem_count() != layout.total_qubits()) {
    throw AddressingError("state and layout disagree on the number of qubits");
  }
  const auto s = layout.qubits(system);
  const auto g = layout.qubits(environment);
  std::vector<int> keep = s;
  keep.insert(keep.end(), g.begin(), g.end());
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw AddressingError("system and environment blocks overlap");
  }
  const DensityOperator reduced = quantum::partial_trace(global, keep);
  std::vector<int> order;
  auto pos = [&](int q) {
    return static_cast<int>(std::lower_bound(keep.begin(), keep.end(), q) - keep.begin());
  };
  for (int q : s) order.push_back(pos(q));
  for (int q : g) order.push_back(pos(q));
  return {quantum::permute(reduced, order), static_cast<int>(s.size()),
          static_cast<int>(g.size())};
}

double distance_after(const SystemEnvironment& se, const Matrix& u, int m,
                      const DensityOperator& target) {
  const DensityOperator rotated = quantum::apply_unitary(se.state, u, range(0, se.n));
  std::vector<int> keep = range(0, m);
  const auto env = range(se.n, se.g);
  keep.insert(keep.end(), env.begin(), env.end());
  return quantum::trace_distance(quantum::partial_trace(rotated, keep), target);
}

DensityOperator decoupled_target(const SystemEnvironment& se, int m) {
  const DensityOperator rho_env = quantum::partial_trace(se.state, range(se.n, se.g));
  return quantum::tensor(DensityOperator::maximally_mixed(qubit_dims(m)), rho_env);
}

void check_unitary(const Matrix& u, int n) {
  const int d = 1 << n;
  if (u.rows() != d || u.cols() != d) {
    throw InvalidArgument("unitary dimension does not match the system block");
  }
}

void check_m(int m, int n) {
  if (m < 0 || m > n) {
    std::ostringstream os;
    os << "decoupled size m = " << m << " outside [0, " << n << "]";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

double decoupled_distance(const DensityOperator& global, const RegisterLayout& layout,
                          const Matrix& u, int m, const std::string& system,
                          const std::string& environment) {
  const auto se = system_environment(global, layout, system, environment);
  check_m(m, se.n);
  check_unitary(u, se.n);
  return distance_after(se, u, m, decoupled_target(se, m));
}

double average_decoupling_bound(int n, int m, double hmin_s_gamma, double epsilon) {
  return std::exp2(-0.5 * (n - 2.0 * m + 2.0) - 0.5 * hmin_s_gamma) + 6.0 * epsilon;
}

int max_decoupled_size(int n, double hmax_s_o, double delta_prime, double epsilon) {
  const double slack = 2.0 * delta_prime - 12.0 * epsilon;
  if (!(slack > 0.0)) {
    throw InvalidArgument("decoupling target infeasible: 2 delta' must exceed 12 epsilon");
  }
  // The small offset keeps exact integers such as (2 + 2)/2 + log2(1) from
  // rounding down.
  const double raw = (n - hmax_s_o) / 2.0 + std::log2(slack);
  const int m = static_cast<int>(std::floor(raw + 1e-9));
  return std::clamp(m, 0, n);
}

DecouplingResult sample_decoupling(const DensityOperator& global, const RegisterLayout& layout,
                                   int m, int samples, std::uint64_t seed,
                                   const std::string& system, const std::string& environment) {
  if (samples < 1) throw InvalidArgument("samples must be at least 1");
  const auto se = system_environment(global, layout, system, environment);
  check_m(m, se.n);
  const DensityOperator target = decoupled_target(se, m);

  DecouplingResult r;
  r.m = m;
  r.samples = samples;
  r.distance = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    d[static_cast<size_t>(k)] = distance_after(se, quantum::haar_unitary(1 << se.n, s), m, target);
    if (d[static_cast<size_t>(k)] < r.distance) {
      r.distance = d[static_cast<size_t>(k)];
      r.unitary_seed = s;
    }
  }
  r.mean_distance = std::accumulate(d.begin(), d.end(), 0.0) / samples;
  if (samples > 1) {
    double var = 0.0;
    for (double v : d) var += (v - r.mean_distance) * (v - r.mean_distance);
    r.standard_error = std::sqrt(var / (samples - 1) / samples);
  }
  const RegisterLayout two({{"S", se.n}, {"Gamma", se.g}});
  r.hmin = entropy::hmin(se.state, two, "S", "Gamma").value;
  r.bound = average_decoupling_bound(se.n, m, r.hmin, 0.0);
  return r;
}

PurifierResult find_purifier(const PureState& global, const RegisterLayout& layout,
                             const std::string& s1,
                             const std::vector<std::string>& purifier_blocks,
                             const std::string& environment) {
  if (global.dims().size() != static_cast<size_t>(layout.total_qubits())) {
    throw AddressingError("state and layout disagree on the number of qubits");
  }
  const auto a = layout.qubits(s1);
  const auto b = layout.qubits(purifier_blocks);
  const auto c = layout.qubits(environment);
  std::vector<int> all = a;
  all.insert(all.end(), b.begin(), b.end());
  all.insert(all.end(), c.begin(), c.end());
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
      static_cast<int>(sorted.size()) != layout.total_qubits()) {
    throw AddressingError("S1, purifier and environment blocks must partition the register");
  }
  const int qa = static_cast<int>(a.size());
  const int qb = static_cast<int>(b.size());
  const int qc = static_cast<int>(c.size());
  if (qb < qa) {
    throw InvalidArgument("purifier blocks are smaller than S1; no purification fits");
  }
  const int da = 1 << qa;
  const int db = 1 << qb;
  const int dc = 1 << qc;
  const int d2 = db / da;

  // Amplitudes indexed (a, b, c), row-major.
  const PureState psi = quantum::permute(global, all);
  Eigen::Map<const Matrix> psi_t(psi.amplitudes().data(), dc, da * db);  // psi_t(c, ab)

  // Purification xi of rho_C on the d2-dimensional remainder of the purifier.
  const Matrix rho_c = psi_t * psi_t.adjoint();
  const auto ec = quantum::eigh(rho_c);
  const int keep = std::min(d2, dc);
  Matrix xi = Matrix::Zero(d2, dc);  // xi(a2, c)
  for (int k = 0; k < keep; ++k) {
    const int col = dc - 1 - k;  // descending eigenvalues
    const double w = std::sqrt(std::max(0.0, ec.values(col)));
    xi.row(k) = w * ec.vectors.col(col).transpose();
  }
  xi /= xi.norm();

  // X(b, b') = sum_{a,c} psi(a,b,c) conj(phi(a,b',c)), phi(a,(p,a2),c) = [a=p] xi(a2,c)/sqrt(da).
  Matrix x = Matrix::Zero(db, db);
  const double norm = 1.0 / std::sqrt(static_cast<double>(da));
  for (int ia = 0; ia < da; ++ia) {
    // psi_a(b, c)
    Matrix psi_a(db, dc);
    for (int ib = 0; ib < db; ++ib) {
      for (int ic = 0; ic < dc; ++ic) psi_a(ib, ic) = psi_t(ic, ia * db + ib);
    }
    // Only the columns b' = (ia, a2) of phi_a are nonzero.
    x.middleCols(ia * d2, d2) += norm * psi_a * xi.adjoint();
  }
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  PurifierResult r;
  r.unitary = svd.matrixV() * svd.matrixU().adjoint();
  r.targets = b;
  r.p_qubits.assign(b.begin(), b.begin() + qa);
  r.fidelity = svd.singularValues().sum();

  // Residual distance of rho_{S1 P} to Phi after applying the unitary.
  const PureState moved = quantum::apply_unitary(psi, r.unitary, range(qa, qb));
  const DensityOperator rho_ap = quantum::reduced_state(moved, range(0, 2 * qa));
  Vector phi = Vector::Zero(static_cast<Eigen::Index>(da) * da);
  for (int k = 0; k < da; ++k) phi(k * da + k) = norm;
  const DensityOperator target(phi * phi.adjoint(), qubit_dims(2 * qa));
  r.residual = quantum::trace_distance(rho_ap, target);
  return r;
}

Matrix disentangling_unitary(int qubits) {
  if (qubits < 0) throw InvalidArgument("qubit count must be nonnegative");
  const int d = 1 << qubits;
  const int dim = d * d;
  Vector phi = Vector::Zero(dim);
  for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  if (d == 1) return Matrix::Identity(1, 1);
  // Householder reflection exchanging Phi and |0>, both real unit vectors.
  Vector v = phi;
  v(0) -= 1.0;
  return Matrix::Identity(dim, dim) - 2.0 * v * v.adjoint() / v.squaredNorm();
}

}  // namespace negentropy::decoupling
