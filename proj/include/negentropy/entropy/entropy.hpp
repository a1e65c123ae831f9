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

#include <optional>
#include <string>
#include <vector>

#include "negentropy/quantum/state.hpp"

namespace negentropy::entropy {

using quantum::DensityOperator;
using quantum::RegisterLayout;

enum class EntropyKind { VonNeumann, Min, Max };
enum class EntropyMethod { ClosedForm, ConvexSolve, TruncationHeuristic, ClassicalExact };

std::string to_string(EntropyKind kind);
std::string to_string(EntropyMethod method);

/// An entropy value in bits together with how it was obtained.
///
/// For min- and max-entropies from a convex solve, `value` is the objective of
/// a feasible point (so a lower bound on both quantities) and the true optimum
/// lies in [value, value + solver_gap]. `certificate` holds the optimizing
/// sigma on the conditioning system; for max-entropies
/// 2 log2 F(state, id (x) sigma) reproduces `value`, where `state` is
/// `smoothed_state` when present and the input otherwise.
struct EntropyReport {
  double value = 0.0;
  double epsilon = 0.0;
  EntropyKind kind = EntropyKind::VonNeumann;
  EntropyMethod method = EntropyMethod::ClosedForm;
  std::optional<DensityOperator> certificate;
  double solver_gap = 0.0;
  /// Truncated state used for smoothing (subnormalized), and its purified
  /// distance to the input.
  std::optional<DensityOperator> smoothed_state;
  std::optional<double> smoothing_distance;
};

struct SolverOptions {
  /// The solver keeps tightening until the certified gap (bits) is below this.
  double target_gap = 1e-9;
  /// A run that stalls above this gap is reported as a SolverError.
  double max_gap = 1e-6;
  int max_iterations = 100000;
};

/// Probability vector, nonnegative and summing to 1 within 1e-10.
class ClassicalDistribution {
 public:
  explicit ClassicalDistribution(std::vector<double> probabilities);
  static ClassicalDistribution uniform(int size);

  const std::vector<double>& probabilities() const { return p_; }
  int size() const { return static_cast<int>(p_.size()); }

 private:
  std::vector<double> p_;
};

EntropyReport von_neumann(const DensityOperator& rho);

/// H(S|O) = H(SO) - H(O). Blocks other than `system` and `conditioning` are
/// traced out first.
EntropyReport conditional_von_neumann(const DensityOperator& rho, const RegisterLayout& layout,
                                      const std::string& system = "S",
                                      const std::string& conditioning = "O");

/// H_min(S|O) = -log2 min { tr sigma : id (x) sigma >= rho }.
EntropyReport hmin(const DensityOperator& rho, const RegisterLayout& layout,
                   const std::string& system = "S", const std::string& conditioning = "O",
                   const SolverOptions& options = {});

/// H_max(S|O) = log2 sup_sigma F(rho, id (x) sigma)^2 over density operators sigma.
EntropyReport hmax(const DensityOperator& rho, const RegisterLayout& layout,
                   const std::string& system = "S", const std::string& conditioning = "O",
                   const SolverOptions& options = {});

/// Smoothed max-entropy by spectral tail truncation inside the purified-distance
/// ball of radius epsilon, followed by an exact max-entropy solve on the
/// truncated state. The result is an upper bound on the smoothed quantity.
EntropyReport hmax_smooth(const DensityOperator& rho, const RegisterLayout& layout,
                          double epsilon, const std::string& system = "S",
                          const std::string& conditioning = "O",
                          const SolverOptions& options = {});

/// Smoothed min-entropy by the same truncation applied to rho_{S Gamma}. This
/// is a lower bound on the smoothed quantity.
EntropyReport hmin_smooth(const DensityOperator& rho, const RegisterLayout& layout,
                          double epsilon, const std::string& system = "S",
                          const std::string& conditioning = "Gamma",
                          const SolverOptions& options = {});

/// H_min^eps(S|Gamma) of a pure global state through the duality
/// H_min^eps(S|Gamma) = -H_max^eps(S|O). Rejects mixed input.
EntropyReport hmin_smooth_dual(const DensityOperator& global, const RegisterLayout& layout,
                               double epsilon, const std::string& system = "S",
                               const std::string& memory = "O",
                               const SolverOptions& options = {});

/// Spectrum truncation used by the smoothing routines: eigenvalues are grouped
/// into degenerate classes (descending), full classes are kept while the
/// fidelity with the input stays above sqrt(1 - eps^2), and the boundary class
/// is scaled so that the fidelity equals that budget exactly. Returns the kept
/// weight multiplier per input entry.
std::vector<double> truncation_weights(const std::vector<double>& spectrum, double epsilon);

/// 2 log2 sum_i sqrt(p'_i) for the truncated distribution p' (trivial
/// conditioning). Equals H_max^0 at epsilon = 0.
double classical_hmax_smooth(const ClassicalDistribution& p, double epsilon);

/// Smoothed H_max(S^n|O^n)/n for n copies of sigma_SO. Diagonal states use
/// exact type-class enumeration; other states build the n-fold tensor power
/// (total dimension <= 64) and use hmax_smooth.
struct AepResult {
  double rate = 0.0;
  EntropyMethod method = EntropyMethod::ClassicalExact;
  double solver_gap = 0.0;
};
AepResult aep_rate_report(const DensityOperator& sigma, const RegisterLayout& layout, int copies,
                          double epsilon, const std::string& system = "S",
                          const std::string& conditioning = "O");
double aep_rate(const DensityOperator& sigma, const RegisterLayout& layout, int copies,
                double epsilon, const std::string& system = "S",
                const std::string& conditioning = "O");

/// Closed-form H_max(S|O) of a diagonal (classical) state,
/// log2 sum_o (sum_s sqrt p(s,o))^2, with p given row-major as p[s * d_O + o].
double classical_conditional_hmax(const std::vector<double>& joint, int dim_s, int dim_o);

/// log2 F(rho, id (x) sigma)^2 for an S-first bipartite rho.
double max_entropy_objective(const quantum::Matrix& rho_ab, const quantum::Matrix& sigma_b,
                             int dim_a);

}  // namespace negentropy::entropy
