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
#include <set>
#include <string>
#include <vector>

#include "negentropy/quantum/state.hpp"

namespace negentropy::quantum {

// ---------------------------------------------------------------------------
// Linear algebra helpers on Hermitian matrices.

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
struct HermitianEigen {
  RealVector values;
  Matrix vectors;
};
HermitianEigen eigh(const Matrix& hermitian);

/// f applied to the spectrum of a Hermitian PSD matrix, with eigenvalues in
/// [-1e-10, 0) clamped to zero first.
Matrix psd_sqrt(const Matrix& psd);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// -sum p log2 p with 0 log 0 := 0. Entries in [-1e-10, 0) are clamped.
double shannon_bits(const RealVector& probabilities);

// ---------------------------------------------------------------------------
// State algebra.

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PureState tensor(const PureState& a, const PureState& b);

/// Reorders subsystems: subsystem i of the result is subsystem order[i] of rho.
DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order);
PureState permute(const PureState& psi, const std::vector<int>& order);

/// Traces out every subsystem not in `keep`. Kept subsystems stay in
/// ascending index order regardless of the order given.
DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep);
DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              const std::set<std::string>& keep);

/// Reduced state of a pure state on `keep`, computed without forming |psi><psi|.
DensityOperator reduced_state(const PureState& psi, const std::vector<int>& keep);

/// Purification on system (x) ancilla, with the ancilla a copy of rho's dims.
/// Rejects subnormalized input.
PureState purify(const DensityOperator& rho);

/// F(R, S) = || sqrt(R) sqrt(S) ||_1 for PSD operators of equal dimension.
double fidelity(const DensityOperator& r, const DensityOperator& s);
double fidelity(const Matrix& r, const Matrix& s);

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// sqrt(1 - Fbar^2) with the generalized fidelity
/// Fbar = F + sqrt((1 - tr rho)(1 - tr sigma)).
double purified_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Haar-distributed unitary from a complex Ginibre matrix: QR followed by the
/// diagonal phase correction. Deterministic in `seed`.
Matrix haar_unitary(int dimension, std::uint64_t seed);

/// Random pure state with Haar-distributed direction.
PureState random_pure_state(const Dims& dims, std::uint64_t seed);

/// Random density operator of given rank from a Ginibre matrix (G G^dag / tr).
DensityOperator random_density(const Dims& dims, int rank, std::uint64_t seed);

/// (U on targets) rho (U on targets)^dag. `targets` lists subsystem indices in
/// the order U's tensor factors are arranged.
DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u,
                              const std::vector<int>& targets);
DensityOperator apply_unitary(const DensityOperator& rho, const Matrix& u,
                              const RegisterLayout& layout, const std::string& target);
PureState apply_unitary(const PureState& psi, const Matrix& u, const std::vector<int>& targets);

/// tr_targets(rho) with `replacement` inserted on `targets` (in the listed order).
DensityOperator replace_subsystems(const DensityOperator& rho, const std::vector<int>& targets,
                                   const DensityOperator& replacement);

/// Schmidt decomposition across (left | complement). Left and right bases are
/// expressed in the ascending-index order of their subsystems.
SchmidtDecomposition schmidt_decompose(const PureState& psi, const std::vector<int>& left);
SchmidtDecomposition schmidt_decompose(const PureState& psi, const RegisterLayout& layout,
                                       const std::set<std::string>& left_blocks);

/// Diagonal Gibbs state with weights exp(-beta E_i). Energies in units of kT
/// when beta = 1.
DensityOperator gibbs_state(const std::vector<double>& level_energies, double beta);

/// Maximally entangled state sum_k |k>|k> / sqrt(d) on two d-dimensional halves.
PureState maximally_entangled(int local_dimension);

}  // namespace negentropy::quantum
