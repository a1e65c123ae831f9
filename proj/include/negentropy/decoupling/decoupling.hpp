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

#include <cstdint>
#include <string>
#include <vector>

#include "negentropy/quantum/state.hpp"

namespace negentropy::decoupling {

using quantum::DensityOperator;
using quantum::Matrix;
using quantum::PureState;
using quantum::RegisterLayout;

/// Best of a batch of Haar-random unitaries on S. The decoupled block S1 is
/// the first m qubits of S.
struct DecouplingResult {
  int m = 0;
  std::uint64_t unitary_seed = 0;  // haar_unitary(2^|S|, unitary_seed) reproduces the best draw
  double distance = 0.0;           // best trace distance
  double bound = 0.0;              // average_decoupling_bound at epsilon = 0
  int samples = 0;
  double mean_distance = 0.0;
  double standard_error = 0.0;
  double hmin = 0.0;               // H_min(S|Gamma) entering the bound
};

/// Trace distance between the S1 Gamma marginal of (U (x) id) rho (U (x) id)^dag
/// and id/2^m (x) rho_Gamma, with S1 the first m qubits of `system`.
/// `u` acts on the qubits of `system` in layout order.
double decoupled_distance(const DensityOperator& global, const RegisterLayout& layout,
                          const Matrix& u, int m, const std::string& system = "S",
                          const std::string& environment = "Gamma");

/// 2^{-(n - 2m + 2)/2 - hmin/2} + 6 epsilon.
double average_decoupling_bound(int n, int m, double hmin_s_gamma, double epsilon);

/// floor((n - hmax)/2 + log2(2 delta' - 12 epsilon)) clamped to [0, n].
/// Throws InvalidArgument when 2 delta' <= 12 epsilon.
int max_decoupled_size(int n, double hmax_s_o, double delta_prime, double epsilon);

/// Draws `samples` unitaries with seeds seed, seed + 1, ... and keeps the one
/// with the smallest distance (ties go to the lower index).
DecouplingResult sample_decoupling(const DensityOperator& global, const RegisterLayout& layout,
                                   int m, int samples, std::uint64_t seed,
                                   const std::string& system = "S",
                                   const std::string& environment = "Gamma");

/// Unitary on `purifier_blocks` that moves a purification of S1 into the
/// first |S1| of those qubits (the block P).
struct PurifierResult {
  Matrix unitary;                // acts on `targets` in the listed order
  std::vector<int> targets;      // qubits of the purifier blocks, ascending
  std::vector<int> p_qubits;     // the first |S1| entries of `targets`
  double residual = 0.0;         // trace distance of rho_{S1 P} to the maximally entangled state
  double fidelity = 0.0;         // Uhlmann overlap achieved
};

/// Uhlmann construction: the target is Phi_{S1 P} (x) xi, with xi a
/// purification of rho_Gamma on the remaining purifier qubits (truncated to
/// their dimension if needed). Only the purifier blocks are acted upon.
/// Throws InvalidArgument when the purifier blocks are smaller than S1.
PurifierResult find_purifier(const PureState& global, const RegisterLayout& layout,
                             const std::string& s1,
                             const std::vector<std::string>& purifier_blocks,
                             const std::string& environment = "Gamma");

/// Unitary W with W |Phi> = |0...0> for the maximally entangled state of two
/// `qubits`-qubit halves (half A first).
Matrix disentangling_unitary(int qubits);

}  // namespace negentropy::decoupling
