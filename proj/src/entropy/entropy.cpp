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

#include "negentropy/entropy/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "conic.hpp"
#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::entropy {
namespace {

using quantum::Dims;
using quantum::Matrix;
using quantum::RealVector;

// Largest number of joint types enumerated by the classical AEP path.
constexpr double kMaxTypeClasses = 5e6;

// Relative tolerance under which two probabilities count as degenerate.
constexpr double kDegeneracyTol = 1e-10;

// rho restricted to (system, conditioning) with the system factors first.
struct Bipartite {
  DensityOperator state;
  int dim_a;
  int dim_b;
  int qubits_a;
  int qubits_b;
};

Bipartite bipartite(const DensityOperator& rho, const RegisterLayout& layout,
                    const std::string& system, const std::string& conditioning) {
  if (rho.subsystem_count() != layout.total_qubits()) {
    std::ostringstream os;
    os << "state has " << rho.subsystem_count() << " subsystems but layout covers "
       << layout.total_qubits() << " qubits";
    throw AddressingError(os.str());
  }
  const auto a = layout.qubits(system);
  const auto b = layout.qubits(conditioning);
  for (int q : a) {
    if (std::find(b.begin(), b.end(), q) != b.end()) {
      throw AddressingError("blocks '" + system + "' and '" + conditioning + "' overlap");
    }
  }
  std::vector<int> keep = a;
  keep.insert(keep.end(), b.begin(), b.end());
  std::sort(keep.begin(), keep.end());
  const DensityOperator reduced = quantum::partial_trace(rho, keep);

  // Positions of the kept qubits inside `reduced`.
  std::vector<int> order;
  for (int q : a) order.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), q) - keep.begin()));
  for (int q : b) order.push_back(static_cast<int>(std::lower_bound(keep.begin(), keep.end(), q) - keep.begin()));
  const int qa = static_cast<int>(a.size());
  const int qb = static_cast<int>(b.size());
  return {quantum::permute(reduced, order), 1 << qa, 1 << qb, qa, qb};
}

RegisterLayout two_block_layout(const std::string& system, int qa, const std::string& conditioning,
                                int qb) {
  return RegisterLayout({{system, qa}, {conditioning, qb}});
}

void require_nonzero(const DensityOperator& rho) {
  if (!(rho.trace() > 0.0)) throw InvalidArgument("entropy of a zero operator is undefined");
}

void require_normalized(const DensityOperator& rho) {
  if (std::abs(rho.trace() - 1.0) > 1e-10) {
    throw InvalidArgument("operation requires a normalized state");
  }
}

void require_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in [0, 1)");
}

// Fidelity-budget truncation over probability levels given in descending
// order of per-atom probability, with the total mass of each level. The
// truncated operator shares the eigenbasis, so its fidelity with the input is
// sum_level mass * sqrt(w).
std::vector<double> level_weights(const std::vector<double>& level_mass, double epsilon) {
  std::vector<double> w(level_mass.size(), 1.0);
  if (epsilon == 0.0) return w;
  const double budget = std::sqrt(1.0 - epsilon * epsilon);
  double kept = 0.0;
  for (size_t i = 0; i < level_mass.size(); ++i) {
    const double mass = level_mass[i];
    if (kept >= budget || mass <= 0.0) {
      w[i] = 0.0;
    } else if (kept + mass > budget) {
      const double root = (budget - kept) / mass;
      w[i] = root * root;
    }
    kept += std::sqrt(w[i]) * std::max(0.0, mass);
  }
  return w;
}

double log2_multinomial(int n, const std::vector<int>& parts) {
  double acc = std::lgamma(n + 1.0);
  for (int k : parts) acc -= std::lgamma(k + 1.0);
  return acc / std::log(2.0);
}

// All compositions of n into `slots` nonnegative parts, in lexicographic order.
void compositions(int n, int slots, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    current.push_back(n);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int k = n; k >= 0; --k) {
    current.push_back(k);
    compositions(n - k, slots - 1, current, out);
    current.pop_back();
  }
}

double binomial(double n, double k) {
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

// Exact smoothed conditional max-entropy of n copies of a classical joint
// distribution, by enumeration of joint types.
double classical_aep_bits(const std::vector<double>& joint, int dim_s, int dim_o, int copies,
                          double epsilon) {
  // Alphabet of (s, o) pairs with positive probability.
  struct Atom {
    int s;
    int o;
    double log2p;
  };
  std::vector<Atom> atoms;
  for (int s = 0; s < dim_s; ++s) {
    for (int o = 0; o < dim_o; ++o) {
      const double p = joint[static_cast<size_t>(s * dim_o + o)];
      if (p > 0.0) atoms.push_back({s, o, std::log2(p)});
    }
  }
  const int k = static_cast<int>(atoms.size());
  if (binomial(copies + k - 1.0, k - 1.0) > kMaxTypeClasses) {
    throw CapacityError("type-class enumeration too large for the classical AEP path");
  }
  std::vector<std::vector<int>> types;
  std::vector<int> scratch;
  compositions(copies, k, scratch, types);

  // Probability of one string of each type, and the total class weight.
  const size_t count = types.size();
  std::vector<double> log2p(count), log2mult(count);
  for (size_t t = 0; t < count; ++t) {
    double lp = 0.0;
    for (int i = 0; i < k; ++i) lp += types[t][static_cast<size_t>(i)] * atoms[static_cast<size_t>(i)].log2p;
    log2p[t] = lp;
    log2mult[t] = log2_multinomial(copies, types[t]);
  }
  std::vector<size_t> idx(count);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](size_t x, size_t y) { return log2p[x] > log2p[y]; });

  // Degenerate probability levels in descending order, with their total mass.
  std::vector<double> level_mass;
  std::vector<int> level_of(count);
  double last = 0.0;
  for (size_t r = 0; r < count; ++r) {
    const size_t t = idx[r];
    if (level_mass.empty() || std::abs(log2p[t] - last) > kDegeneracyTol * std::max(1.0, std::abs(last))) {
      level_mass.push_back(0.0);
      last = log2p[t];
    }
    level_of[t] = static_cast<int>(level_mass.size()) - 1;
    level_mass.back() += std::exp2(log2mult[t] + log2p[t]);
  }
  const std::vector<double> level_scale = level_weights(level_mass, epsilon);

  // For every o-type m: A(m) = sum over joint types with column sums m of
  // sqrt(scale * p) times the number of s-strings per fixed o-string.
  std::map<std::vector<int>, double> amplitude;
  for (size_t t = 0; t < count; ++t) {
    const double scale = level_scale[static_cast<size_t>(level_of[t])];
    if (scale <= 0.0) continue;
    std::vector<int> m(static_cast<size_t>(dim_o), 0);
    std::vector<std::vector<int>> per_o(static_cast<size_t>(dim_o));
    for (int i = 0; i < k; ++i) {
      const auto& at = atoms[static_cast<size_t>(i)];
      m[static_cast<size_t>(at.o)] += types[t][static_cast<size_t>(i)];
      per_o[static_cast<size_t>(at.o)].push_back(types[t][static_cast<size_t>(i)]);
    }
    double log2count = 0.0;
    for (int o = 0; o < dim_o; ++o) {
      log2count += log2_multinomial(m[static_cast<size_t>(o)], per_o[static_cast<size_t>(o)]);
    }
    amplitude[m] += std::exp2(log2count + 0.5 * log2p[t]) * std::sqrt(scale);
  }
  double total = 0.0;
  for (const auto& [m, a] : amplitude) total += std::exp2(log2_multinomial(copies, m)) * a * a;
  return std::log2(total);
}

bool is_diagonal(const Matrix& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (i != j && std::abs(m(i, j)) > 1e-12) return false;
    }
  }
  return true;
}

// Truncated copy of rho in its eigenbasis.
DensityOperator truncate(const DensityOperator& rho, double epsilon) {
  const auto e = quantum::eigh(rho.matrix());
  std::vector<double> spectrum(static_cast<size_t>(e.values.size()));
  for (int i = 0; i < e.values.size(); ++i) spectrum[static_cast<size_t>(i)] = std::max(0.0, e.values(i));
  const auto w = truncation_weights(spectrum, epsilon);
  RealVector kept(e.values.size());
  for (int i = 0; i < e.values.size(); ++i) kept(i) = spectrum[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
  return DensityOperator(e.vectors * kept.asDiagonal() * e.vectors.adjoint(), rho.dims());
}

}  // namespace

std::string to_string(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::VonNeumann:
      return "vonNeumann";
    case EntropyKind::Min:
      return "min";
    case EntropyKind::Max:
      return "max";
  }
  return "unknown";
}

std::string to_string(EntropyMethod method) {
  switch (method) {
    case EntropyMethod::ClosedForm:
      return "closedForm";
    case EntropyMethod::ConvexSolve:
      return "convexSolve";
    case EntropyMethod::TruncationHeuristic:
      return "truncationHeuristic";
    case EntropyMethod::ClassicalExact:
      return "classicalExact";
  }
  return "unknown";
}

ClassicalDistribution::ClassicalDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
  if (p_.empty()) throw InvalidArgument("distribution must have at least one atom");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v >= 0.0)) throw InvalidArgument("probabilities must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InvalidArgument("probabilities must sum to 1");
}

ClassicalDistribution ClassicalDistribution::uniform(int size) {
  if (size < 1) throw InvalidArgument("distribution must have at least one atom");
  return ClassicalDistribution(std::vector<double>(static_cast<size_t>(size), 1.0 / size));
}

EntropyReport von_neumann(const DensityOperator& rho) {
  require_normalized(rho);
  EntropyReport r;
  r.value = quantum::shannon_bits(rho.eigenvalues());
  return r;
}

EntropyReport conditional_von_neumann(const DensityOperator& rho, const RegisterLayout& layout,
                                      const std::string& system,
                                      const std::string& conditioning) {
  require_normalized(rho);
  const Bipartite bp = bipartite(rho, layout, system, conditioning);
  std::vector<int> cond(static_cast<size_t>(bp.qubits_b));
  std::iota(cond.begin(), cond.end(), bp.qubits_a);
  const DensityOperator rho_o = quantum::partial_trace(bp.state, cond);
  EntropyReport r;
  r.value = quantum::shannon_bits(bp.state.eigenvalues()) - quantum::shannon_bits(rho_o.eigenvalues());
  return r;
}

EntropyReport hmin(const DensityOperator& rho, const RegisterLayout& layout,
                   const std::string& system, const std::string& conditioning,
                   const SolverOptions& options) {
  require_nonzero(rho);
  const Bipartite bp = bipartite(rho, layout, system, conditioning);
  EntropyReport r;
  r.kind = EntropyKind::Min;
  if (bp.dim_b == 1) {
    r.method = EntropyMethod::ClosedForm;
    r.value = -std::log2(bp.state.eigenvalues().maxCoeff());
    r.certificate = DensityOperator(Matrix::Identity(1, 1), {});
    return r;
  }
  const auto sol = detail::solve_min_entropy(bp.state.matrix(), bp.dim_a, bp.dim_b, options);
  r.method = EntropyMethod::ConvexSolve;
  r.value = -std::log2(sol.primal);
  r.solver_gap = sol.gap_bits;
  r.certificate = DensityOperator(sol.sigma / sol.primal, Dims(static_cast<size_t>(bp.qubits_b), 2));
  return r;
}

EntropyReport hmax(const DensityOperator& rho, const RegisterLayout& layout,
                   const std::string& system, const std::string& conditioning,
                   const SolverOptions& options) {
  require_nonzero(rho);
  const Bipartite bp = bipartite(rho, layout, system, conditioning);
  EntropyReport r;
  r.kind = EntropyKind::Max;
  if (bp.dim_b == 1) {
    r.method = EntropyMethod::ClosedForm;
    const RealVector ev = bp.state.eigenvalues();
    r.value = 2.0 * std::log2(ev.cwiseMax(0.0).cwiseSqrt().sum());
    r.certificate = DensityOperator(Matrix::Identity(1, 1), {});
    return r;
  }
  const auto sol = detail::solve_max_entropy(bp.state.matrix(), bp.dim_a, bp.dim_b, options);
  r.method = EntropyMethod::ConvexSolve;
  r.value = 2.0 * std::log2(sol.fidelity);
  r.solver_gap = sol.gap_bits;
  r.certificate = DensityOperator(sol.sigma, Dims(static_cast<size_t>(bp.qubits_b), 2));
  return r;
}

std::vector<double> truncation_weights(const std::vector<double>& spectrum, double epsilon) {
  require_epsilon(epsilon);
  const size_t n = spectrum.size();
  std::vector<double> weights(n, 1.0);
  if (epsilon == 0.0 || n == 0) return weights;

  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return spectrum[a] > spectrum[b]; });

  std::vector<double> level_mass;
  std::vector<std::pair<size_t, size_t>> ranges;
  for (size_t pos = 0; pos < n;) {
    const double level = spectrum[idx[pos]];
    size_t end = pos;
    double mass = 0.0;
    while (end < n && std::abs(spectrum[idx[end]] - level) <= kDegeneracyTol * std::max(level, 1e-300)) {
      mass += std::max(0.0, spectrum[idx[end]]);
      ++end;
    }
    level_mass.push_back(mass);
    ranges.emplace_back(pos, end);
    pos = end;
  }
  const auto w = level_weights(level_mass, epsilon);
  for (size_t l = 0; l < ranges.size(); ++l) {
    for (size_t j = ranges[l].first; j < ranges[l].second; ++j) weights[idx[j]] = w[l];
  }
  return weights;
}

double classical_hmax_smooth(const ClassicalDistribution& p, double epsilon) {
  const auto& probs = p.probabilities();
  const auto w = truncation_weights(probs, epsilon);
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) acc += std::sqrt(probs[i] * w[i]);
  return 2.0 * std::log2(acc);
}

EntropyReport hmax_smooth(const DensityOperator& rho, const RegisterLayout& layout,
                          double epsilon, const std::string& system,
                          const std::string& conditioning, const SolverOptions& options) {
  require_epsilon(epsilon);
  if (epsilon == 0.0) return hmax(rho, layout, system, conditioning, options);
  require_nonzero(rho);
  const Bipartite bp = bipartite(rho, layout, system, conditioning);
  const DensityOperator smoothed = truncate(bp.state, epsilon);
  EntropyReport r = hmax(smoothed, two_block_layout(system, bp.qubits_a, conditioning, bp.qubits_b),
                         system, conditioning, options);
  r.epsilon = epsilon;
  r.method = EntropyMethod::TruncationHeuristic;
  r.smoothing_distance = quantum::purified_distance(smoothed, bp.state);
  r.smoothed_state = smoothed;
  return r;
}

EntropyReport hmin_smooth(const DensityOperator& rho, const RegisterLayout& layout,
                          double epsilon, const std::string& system,
                          const std::string& conditioning, const SolverOptions& options) {
  require_epsilon(epsilon);
  if (epsilon == 0.0) return hmin(rho, layout, system, conditioning, options);
  require_nonzero(rho);
  const Bipartite bp = bipartite(rho, layout, system, conditioning);
  // The truncated operator is dominated by the input, so its min-entropy can
  // only be larger; being inside the ball it is a valid lower bound.
  const DensityOperator smoothed = truncate(bp.state, epsilon);
  EntropyReport r = hmin(smoothed, two_block_layout(system, bp.qubits_a, conditioning, bp.qubits_b),
                         system, conditioning, options);
  r.epsilon = epsilon;
  r.method = EntropyMethod::TruncationHeuristic;
  r.smoothing_distance = quantum::purified_distance(smoothed, bp.state);
  r.smoothed_state = smoothed;
  return r;
}

EntropyReport hmin_smooth_dual(const DensityOperator& global, const RegisterLayout& layout,
                               double epsilon, const std::string& system,
                               const std::string& memory, const SolverOptions& options) {
  require_normalized(global);
  const double purity = (global.matrix() * global.matrix()).trace().real();
  if (std::abs(purity - 1.0) > 1e-8) {
    throw InvalidArgument("duality path requires a pure global state");
  }
  EntropyReport r = hmax_smooth(global, layout, epsilon, system, memory, options);
  r.value = -r.value;
  r.kind = EntropyKind::Min;
  // The certificate of the max-entropy side does not certify the dual value.
  r.certificate.reset();
  return r;
}

double classical_conditional_hmax(const std::vector<double>& joint, int dim_s, int dim_o) {
  if (dim_s < 1 || dim_o < 1 || joint.size() != static_cast<size_t>(dim_s) * dim_o) {
    throw InvalidArgument("joint distribution size does not match dim_s * dim_o");
  }
  double total = 0.0;
  for (int o = 0; o < dim_o; ++o) {
    double col = 0.0;
    for (int s = 0; s < dim_s; ++s) col += std::sqrt(std::max(0.0, joint[static_cast<size_t>(s * dim_o + o)]));
    total += col * col;
  }
  return std::log2(total);
}

double max_entropy_objective(const Matrix& rho_ab, const Matrix& sigma_b, int dim_a) {
  const int db = static_cast<int>(sigma_b.rows());
  Matrix lifted = Matrix::Zero(dim_a * db, dim_a * db);
  for (int a = 0; a < dim_a; ++a) lifted.block(a * db, a * db, db, db) = sigma_b;
  return 2.0 * std::log2(quantum::fidelity(rho_ab, lifted));
}

AepResult aep_rate_report(const DensityOperator& sigma, const RegisterLayout& layout, int copies,
                          double epsilon, const std::string& system,
                          const std::string& conditioning) {
  if (copies < 1) throw InvalidArgument("copies must be at least 1");
  require_epsilon(epsilon);
  require_normalized(sigma);
  const Bipartite bp = bipartite(sigma, layout, system, conditioning);
  AepResult out;
  if (is_diagonal(bp.state.matrix())) {
    std::vector<double> joint(static_cast<size_t>(bp.state.dimension()));
    for (int i = 0; i < bp.state.dimension(); ++i) joint[static_cast<size_t>(i)] = std::max(0.0, bp.state.matrix()(i, i).real());
    out.method = EntropyMethod::ClassicalExact;
    out.rate = classical_aep_bits(joint, bp.dim_a, bp.dim_b, copies, epsilon) / copies;
    return out;
  }

  const int qa = bp.qubits_a * copies;
  const int qb = bp.qubits_b * copies;
  if (qa + qb > 6) {
    throw CapacityError("non-diagonal AEP input exceeds the 64-dimensional quantum path");
  }
  DensityOperator power = bp.state;
  for (int c = 1; c < copies; ++c) power = quantum::tensor(power, bp.state);
  // Gather all system qubits first, then all conditioning qubits.
  std::vector<int> order;
  const int per = bp.qubits_a + bp.qubits_b;
  for (int c = 0; c < copies; ++c) {
    for (int q = 0; q < bp.qubits_a; ++q) order.push_back(c * per + q);
  }
  for (int c = 0; c < copies; ++c) {
    for (int q = 0; q < bp.qubits_b; ++q) order.push_back(c * per + bp.qubits_a + q);
  }
  power = quantum::permute(power, order);
  const EntropyReport r = hmax_smooth(power, two_block_layout("S", qa, "O", qb), epsilon);
  out.method = r.method;
  out.rate = r.value / copies;
  out.solver_gap = r.solver_gap / copies;
  return out;
}

double aep_rate(const DensityOperator& sigma, const RegisterLayout& layout, int copies,
                double epsilon, const std::string& system, const std::string& conditioning) {
  return aep_rate_report(sigma, layout, copies, epsilon, system, conditioning).rate;
}

}  // namespace negentropy::entropy
