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

#include "negentropy/protocol/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "negentropy/decoupling/decoupling.hpp"
#include "negentropy/entropy/entropy.hpp"
#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::protocol {
namespace {

using quantum::Dims;
using quantum::Matrix;
using quantum::PureState;
using quantum::Vector;

Dims qubit_dims(int count) { return Dims(static_cast<size_t>(count), 2); }

RegisterLayout standard_layout(int s, int o, int gamma) {
  return RegisterLayout({{"S", s}, {"O", o}, {"Gamma", gamma}});
}

void validate(const Scenario& scn) {
  const auto& blocks = scn.layout.blocks();
  const std::vector<std::string> expected = {"S", "O", "Gamma"};
  if (blocks.size() != expected.size()) {
    throw InvalidArgument("scenario layout must consist of blocks S, O, Gamma in that order");
  }
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].name != expected[i]) {
      throw InvalidArgument("scenario layout must consist of blocks S, O, Gamma in that order");
    }
  }
  if (scn.layout.qubit_count("S") < 1) throw InvalidArgument("scenario needs at least one S qubit");
  if (scn.global_state.subsystem_count() != scn.layout.total_qubits()) {
    throw AddressingError("scenario state and layout disagree on the number of qubits");
  }
  for (int d : scn.global_state.dims()) {
    if (d != 2) throw InvalidArgument("scenario state must be a qubit register");
  }
  const auto& m = scn.global_state.matrix();
  if (std::abs(scn.global_state.trace() - 1.0) > 1e-9 ||
      std::abs((m * m).trace().real() - 1.0) > 1e-8) {
    throw InvalidArgument("scenario global state must be pure and normalized");
  }
  scn.schedule.validate();
}

// Dominant eigenvector of a pure density operator.
PureState as_pure(const DensityOperator& rho) {
  const auto e = quantum::eigh(rho.matrix());
  const Eigen::Index top = e.values.size() - 1;
  Vector v = e.vectors.col(top);
  // Fix the global phase so that the result is deterministic.
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  v *= std::conj(v(pivot)) / std::abs(v(pivot));
  v.normalize();
  return PureState(std::move(v), rho.dims());
}

// Unitary mapping the unit vector v onto |0...0>: a phase fix followed by a
// Householder reflection.
Matrix rotation_to_zero(const Vector& v) {
  const auto dim = v.size();
  const double a = std::abs(v(0));
  Vector w = a > 0.0 ? Vector(v * (std::conj(v(0)) / a)) : v;
  const Matrix phase = a > 0.0 ? Matrix(Matrix::Identity(dim, dim) * (std::conj(v(0)) / a))
                               : Matrix(Matrix::Identity(dim, dim));
  w(0) -= 1.0;
  if (w.norm() < 1e-14) return phase;
  return (Matrix::Identity(dim, dim) - 2.0 * w * w.adjoint() / w.squaredNorm()) * phase;
}

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

DensityOperator memory_marginal(const DensityOperator& global, const RegisterLayout& layout) {
  return quantum::partial_trace(global, layout.qubits(std::vector<std::string>{"O", "Gamma"}));
}

// Work bound left by the Riemann sums of one quasistatic sweep plus its tail.
double sweep_tolerance(const thermo::ScheduleConfig& schedule, double tail) {
  return schedule.e_max / schedule.steps() / thermo::kLn2 + tail;
}

struct Choice {
  int m = 0;
  std::optional<std::uint64_t> seed;
  double distance = 0.0;
};

// Largest decoupled size whose best sampled distance meets the target; falls
// back to the guaranteed size from the bound.
Choice choose_decoupling(const DensityOperator& global, const RegisterLayout& layout, int m_bound,
                         int m_cap, double target, const RunOptions& options) {
  const int n = layout.qubit_count("S");
  const Matrix identity = Matrix::Identity(1 << n, 1 << n);
  Choice fallback;
  for (int m = m_cap; m >= m_bound; --m) {
    Choice c{m, std::nullopt, decoupling::decoupled_distance(global, layout, identity, m)};
    if (c.distance > target && m > 0) {
      const auto r = decoupling::sample_decoupling(global, layout, m, options.samples, options.seed);
      if (r.distance < c.distance) c = {m, r.unitary_seed, r.distance};
    }
    if (c.distance <= target || m == m_bound) return c;
    fallback = c;
  }
  return fallback;
}

ProtocolTranscript run(const Scenario& scn, const RunOptions& options, bool erase_system) {
  validate(scn);
  if (options.samples < 1) throw InvalidArgument("samples must be at least 1");
  ProtocolTranscript t;
  t.scenario = scn.name;
  const RegisterLayout& layout = scn.layout;
  const int n = layout.qubit_count("S");
  const int o = layout.qubit_count("O");
  t.n = n;
  t.delta_slack = theorem1_failure_budget(scn.delta, scn.epsilon);
  t.decoupling_target = scn.delta * scn.delta / 2.0;
  t.memory_tolerance = options.memory_tolerance_factor * t.decoupling_target;

  const auto hm = entropy::hmax_smooth(scn.global_state, layout, scn.epsilon, "S", "O");
  t.hmax_used = hm.value;
  t.hmax_gap = hm.solver_gap;
  const double hmax_upper = hm.value + hm.solver_gap;

  const DensityOperator memory_before = memory_marginal(scn.global_state, layout);
  DensityOperator global = scn.global_state;
  const auto s_qubits = layout.qubits("S");
  double tolerance = 0.0;

  if (erase_system && scn.tag == "alice") {
    // S is a copy of the classical register O: a controlled NOT from every O
    // qubit onto its S partner resets S without a bath.
    t.unitary_only = true;
    t.ell = n;
    if (o != n) throw InvalidArgument("alice scenario needs one O qubit per S qubit");
    const int ds = 1 << n;
    Matrix cnot = Matrix::Zero(ds * ds, ds * ds);
    for (int s = 0; s < ds; ++s) {
      for (int r = 0; r < ds; ++r) cnot((s ^ r) * ds + r, s * ds + r) = 1.0;
    }
    global = quantum::apply_unitary(global, cnot, concat(s_qubits, layout.qubits("O")));
    for (int q = 0; q < n; ++q) t.compress_ledger.record("cnot", 0.0, 0.0);
  } else if (const DensityOperator rho_s = quantum::partial_trace(global, s_qubits);
             rho_s.eigenvalues().maxCoeff() > 1.0 - 1e-12) {
    // S is in a known pure state: a unitary rotates it to |0...0>. Erasure is
    // then free and extraction draws the full n bits.
    t.unitary_only = true;
    t.ell = n;
    const Matrix u = rotation_to_zero(as_pure(rho_s).amplitudes());
    global = quantum::apply_unitary(global, u, s_qubits);
    t.compress_ledger.record("rotate", 0.0, 0.0);
    if (!erase_system) {
      const DensityOperator rho_x = quantum::partial_trace(global, s_qubits);
      t.extraction_failure_probability =
          thermo::failure_probability(rho_x, PureState::basis_state(rho_x.dims(), 0));
      thermo::Battery battery;
      auto extraction = thermo::extract_work(rho_x, 0, scn.schedule, battery);
      t.extract_ledger = std::move(extraction.ledger);
      global = quantum::replace_subsystems(global, s_qubits, extraction.system.state());
      tolerance += sweep_tolerance(scn.schedule, extraction.tail_bound);
    }
  } else {
    const int m_cap = std::min(n, (n + o) / 2);
    const int m_bound = std::min(
        m_cap, decoupling::max_decoupled_size(n, hmax_upper, t.decoupling_target, scn.epsilon));
    const Choice choice =
        choose_decoupling(global, layout, m_bound, m_cap, t.decoupling_target, options);
    t.m = choice.m;
    t.ell = 2 * choice.m;
    t.unitary_seed = choice.seed;
    t.decoupling_distance = choice.distance;

    // Step 1: compression, unitaries only.
    if (choice.seed) {
      global = quantum::apply_unitary(global, quantum::haar_unitary(1 << n, *choice.seed), s_qubits);
      t.compress_ledger.record("haar", 0.0, 0.0);
    }
    if (t.m > 0) {
      const RegisterLayout split = layout.split("S", {{"S1", t.m}, {"S2", n - t.m}});
      const auto purifier =
          decoupling::find_purifier(as_pure(global), split, "S1", {"S2", "O"}, "Gamma");
      t.purifier_residual = purifier.residual;
      global = quantum::apply_unitary(global, purifier.unitary, purifier.targets);
      t.compress_ledger.record("purifier", 0.0, 0.0);

      const auto x_qubits = concat(split.qubits("S1"), purifier.p_qubits);
      global = quantum::apply_unitary(global, decoupling::disentangling_unitary(t.m), x_qubits);
      t.compress_ledger.record("disentangle", 0.0, 0.0);

      // Step 2: extraction from S1 P, then the purifier unitary is undone so
      // that the memory is handed back unchanged.
      const DensityOperator rho_x = quantum::partial_trace(global, x_qubits);
      t.extraction_failure_probability =
          thermo::failure_probability(rho_x, PureState::basis_state(rho_x.dims(), 0));
      thermo::Battery battery;
      auto extraction = thermo::extract_work(rho_x, 0, scn.schedule, battery);
      t.extract_ledger = std::move(extraction.ledger);
      global = quantum::replace_subsystems(global, x_qubits, extraction.system.state());
      global = quantum::apply_unitary(global, purifier.unitary.adjoint(), purifier.targets);
      tolerance += sweep_tolerance(scn.schedule, extraction.tail_bound);
    }
  }

  // Step 3: erase the whole of S.
  if (erase_system && !t.unitary_only) {
    thermo::Battery battery;
    auto erasure = thermo::erase(quantum::partial_trace(global, s_qubits), scn.schedule, battery);
    t.erase_ledger = std::move(erasure.ledger);
    global = quantum::replace_subsystems(global, s_qubits, erasure.system.state());
    tolerance += sweep_tolerance(scn.schedule, erasure.tail_bound);
  }
  if (erase_system) {
    const DensityOperator rho_s = quantum::partial_trace(global, s_qubits);
    t.final_system_deviation =
        quantum::trace_distance(rho_s, DensityOperator::basis_state(qubit_dims(n), 0));
  }

  t.discretization_tolerance = tolerance;
  t.memory_preserved = verify_memory_preservation(memory_before, memory_marginal(global, layout));
  t.extracted_work = -t.extract_ledger.total();
  t.net_work = t.compress_ledger.total() + t.extract_ledger.total() + t.erase_ledger.total();
  if (erase_system) {
    t.bound = hmax_upper + t.delta_slack;
    t.bound_satisfied = t.net_work <= t.bound + tolerance;
  } else {
    t.bound = n - hmax_upper - t.delta_slack;
    t.bound_satisfied = t.extracted_work >= t.bound - tolerance;
  }
  t.success = t.bound_satisfied && t.memory_preserved <= t.memory_tolerance &&
              t.decoupling_distance <= t.decoupling_target &&
              (!erase_system || t.final_system_deviation <= 1e-9);
  if (scn.temperature_kelvin) t.net_work_joules = thermo::to_joules(t.net_work, *scn.temperature_kelvin);
  return t;
}

}  // namespace

Scenario build_scenario(const std::string& tag, const ScenarioParams& params) {
  const int n = params.qubits;
  if (n < 1) throw InvalidArgument("scenario needs at least one qubit");
  Scenario scn{tag, tag, DensityOperator::maximally_mixed({}), RegisterLayout{}, params.epsilon,
               params.delta, params.schedule, params.temperature_kelvin};
  if (tag == "alice") {
    scn.layout = standard_layout(n, n, 0);
    const Dims dims = qubit_dims(2 * n);
    scn.global_state = DensityOperator::basis_state(dims, quantum::total_dimension(dims) - 1);
  } else if (tag == "bob") {
    scn.layout = standard_layout(n, 0, n);
    const int d = 1 << n;
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int k = 0; k < d; ++k) v(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
    scn.global_state = PureState(std::move(v), qubit_dims(2 * n)).density();
  } else if (tag == "quasimodo") {
    scn.layout = standard_layout(n, 2 * n, n);
    const int d = 1 << n;
    quantum::total_dimension(qubit_dims(4 * n));  // throws CapacityError before allocating
    Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d * d * d);
    for (int s = 0; s < d; ++s) {
      for (int r = 0; r < d; ++r) {
        // |s>_S |s>_Q1 |r>_Q2 |r>_R
        v(((static_cast<Eigen::Index>(s) * d + s) * d + r) * d + r) = 1.0 / d;
      }
    }
    scn.global_state = PureState(std::move(v), qubit_dims(4 * n)).density();
  } else if (tag == "classical") {
    const double p = params.flip_probability;
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("flip probability must lie in [0, 1]");
    scn.layout = standard_layout(1, 1, 2);
    Vector v = Vector::Zero(16);
    for (int s = 0; s < 2; ++s) {
      for (int o = 0; o < 2; ++o) {
        const double w = 0.5 * (s == o ? 1.0 - p : p);
        // |s>_S |o>_O |s o>_Gamma
        v(((s * 2 + o) * 2 + s) * 2 + o) = std::sqrt(w);
      }
    }
    scn.global_state = PureState(std::move(v), qubit_dims(4)).density();
  } else {
    throw InvalidArgument("unknown scenario tag '" + tag + "'");
  }
  validate(scn);
  return scn;
}

Scenario custom_scenario(const std::string& name, const DensityOperator& global,
                         const RegisterLayout& layout, const ScenarioParams& params) {
  Scenario scn{name, "custom", global, layout, params.epsilon, params.delta, params.schedule,
               params.temperature_kelvin};
  validate(scn);
  return scn;
}

ProtocolTranscript run_erasure(const Scenario& scenario, const RunOptions& options) {
  return run(scenario, options, true);
}

ProtocolTranscript run_extraction(const Scenario& scenario, const RunOptions& options) {
  return run(scenario, options, false);
}

double theorem1_failure_budget(double delta, double epsilon) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in [0, 1)");
  const double arg = delta * delta - 12.0 * epsilon;
  if (!(arg > 0.0)) {
    std::ostringstream os;
    os << "infeasible failure budget: delta^2 = " << delta * delta << " <= 12 epsilon = "
       << 12.0 * epsilon;
    throw InvalidArgument(os.str());
  }
  return -2.0 * std::log2(arg);
}

double theorem1_failure_probability(double slack, double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
  return std::sqrt(std::exp2(-slack / 2.0) + 12.0 * epsilon);
}

std::vector<RatePoint> work_cost_rate(const Scenario& single, const std::vector<int>& copies) {
  validate(single);
  const RegisterLayout& layout = single.layout;
  const int qs = layout.qubit_count("S");
  const int qo = layout.qubit_count("O");
  const DensityOperator rho_so =
      quantum::partial_trace(single.global_state, layout.qubits(std::vector<std::string>{"S", "O"}));
  const RegisterLayout so({{"S", qs}, {"O", qo}});

  thermo::Battery battery;
  const double erase_one = thermo::erase_mixed(1, single.schedule, battery).ledger.total();
  const double extract_one = -thermo::extract_work_pure(1, single.schedule, battery).ledger.total();

  double hmax_single = 0.0;
  if (single.epsilon == 0.0) {
    const auto r = entropy::hmax(rho_so, so);
    hmax_single = r.value;
  }
  std::vector<RatePoint> out;
  for (int n : copies) {
    if (n < 1) throw InvalidArgument("copy counts must be positive");
    RatePoint p;
    p.copies = n;
    double hmax_n = 0.0;
    if (single.epsilon == 0.0) {
      // Max-entropy is additive on product states.
      hmax_n = n * hmax_single;
      p.method = "additive";
    } else {
      const auto r = entropy::aep_rate_report(rho_so, so, n, single.epsilon);
      hmax_n = r.rate * n;
      p.method = entropy::to_string(r.method);
    }
    const int ns = n * qs;
    const int no = n * qo;
    int m = static_cast<int>(std::floor((ns - hmax_n) / 2.0 + 1e-9));
    m = std::clamp(m, 0, std::min(ns, (ns + no) / 2));
    p.hmax_rate = hmax_n / n;
    p.ell = 2 * m;
    p.ideal_rate = static_cast<double>(ns - p.ell) / n;
    p.simulated_rate = (ns * erase_one - p.ell * extract_one) / n;
    out.push_back(p);
  }
  return out;
}

double verify_memory_preservation(const DensityOperator& before, const DensityOperator& after) {
  if (before.dims() != after.dims()) {
    throw AddressingError("memory marginals have different layouts");
  }
  return quantum::trace_distance(before, after);
}

}  // namespace negentropy::protocol
