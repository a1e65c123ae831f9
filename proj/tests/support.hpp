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

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include <unsupported/Eigen/KroneckerProduct>

#include "negentropy/quantum/ops.hpp"

namespace negentropy::testing {

using quantum::Complex;
using quantum::Matrix;

/// Qubit density operator (I + x X + y Y + z Z) / 2 in spherical coordinates.
inline Matrix bloch_state(double r, double theta, double phi) {
  const double x = r * std::sin(theta) * std::cos(phi);
  const double y = r * std::sin(theta) * std::sin(phi);
  const double z = r * std::cos(theta);
  Matrix m(2, 2);
  m << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
  return m / 2.0;
}

/// Maximizes f over the Bloch ball: a coarse grid followed by a compass
/// search. The radius stays below 1 - 1e-12 so that inverses exist.
inline double bloch_grid_max(const std::function<double(const Matrix&)>& f) {
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kRmax = 1.0 - 1e-12;
  std::array<double, 3> best{0.0, 0.0, 0.0};
  double best_val = f(bloch_state(0, 0, 0));
  for (int i = 0; i <= 16; ++i) {
    const double r = std::min(kRmax, i / 16.0);
    for (int j = 0; j <= 12; ++j) {
      for (int k = 0; k < 24; ++k) {
        const double th = kPi * j / 12.0, ph = 2 * kPi * k / 24.0;
        const double v = f(bloch_state(r, th, ph));
        if (v > best_val) best_val = v, best = {r, th, ph};
      }
    }
  }
  std::array<double, 3> step{1.0 / 16, kPi / 12, kPi / 12};
  while (step[0] > 1e-13 || step[1] > 1e-10) {
    bool moved = false;
    for (int c = 0; c < 3; ++c) {
      for (double sgn : {1.0, -1.0}) {
        auto cand = best;
        cand[c] += sgn * step[c];
        cand[0] = std::clamp(cand[0], 0.0, kRmax);
        const double v = f(bloch_state(cand[0], cand[1], cand[2]));
        if (v > best_val) best_val = v, best = cand, moved = true;
      }
    }
    if (!moved) for (auto& s : step) s /= 2;
  }
  return best_val;
}

/// H_max(S|O) with one-qubit O by brute force over sigma_O. rho is S-first.
inline double brute_hmax(const Matrix& rho, int dim_s) {
  const Matrix id = Matrix::Identity(dim_s, dim_s);
  return bloch_grid_max([&](const Matrix& sigma) {
    const double f = quantum::fidelity(rho, Matrix(Eigen::kroneckerProduct(id, sigma)));
    return 2.0 * std::log2(f);
  });
}

/// H_min(S|O) with one-qubit O by brute force: for a trace-one tau the least
/// t with t (I x tau) >= rho is lambda_max of (I x tau)^{-1/2} rho (I x tau)^{-1/2}.
inline double brute_hmin(const Matrix& rho, int dim_s) {
  const Matrix id = Matrix::Identity(dim_s, dim_s);
  return bloch_grid_max([&](const Matrix& tau) {
    const auto e = quantum::eigh(tau);
    Matrix inv_sqrt = e.vectors * e.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                      e.vectors.adjoint();
    const Matrix w = Eigen::kroneckerProduct(id, inv_sqrt);
    const double t = quantum::eigh(w * rho * w).values.maxCoeff();
    return -std::log2(t);
  });
}

}  // namespace negentropy::testing
