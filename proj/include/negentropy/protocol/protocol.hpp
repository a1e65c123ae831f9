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
#include <optional>
#include <string>
#include <vector>

#include "negentropy/quantum/state.hpp"
#include "negentropy/thermo/thermo.hpp"

namespace negentropy::protocol {

using quantum::DensityOperator;
using quantum::RegisterLayout;

/// A pure global state on S (x) O (x) Gamma with the protocol parameters.
/// The layout has blocks named "S", "O" and "Gamma" (any may be empty except
/// S); other blocks are not allowed.
struct Scenario {
  std::string name;
  std::string tag;  // alice | bob | quasimodo | classical | custom
  DensityOperator global_state;
  RegisterLayout layout;
  double epsilon = 0.0;
  double delta = 0.03;
  thermo::ScheduleConfig schedule;
  std::optional<double> temperature_kelvin;
};

struct ScenarioParams {
  int qubits = 1;
  double flip_probability = 0.11;  // classical tag only
  double epsilon = 0.0;
  double delta = 0.03;
  thermo::ScheduleConfig schedule;
  std::optional<double> temperature_kelvin;
};

/// alice: S and O both |1...1> (O holds a classical description of S).
/// bob: S maximally entangled with Gamma, O empty.
/// quasimodo: O = Q1 Q2 (2n qubits), S maximally entangled with Q1 qubit by
///   qubit, Q2 maximally entangled with R = Gamma.
/// classical: one-qubit S and O, O uniform and S = O flipped with
///   probability p, purified in a two-qubit Gamma.
Scenario build_scenario(const std::string& tag, const ScenarioParams& params);

/// Validates purity and the block structure of a user-supplied state.
Scenario custom_scenario(const std::string& name, const DensityOperator& global,
                         const RegisterLayout& layout, const ScenarioParams& params);

struct RunOptions {
  int samples = 64;           // Haar draws per candidate decoupling size
  std::uint64_t seed = 0;
  double memory_tolerance_factor = 10.0;  // tolerance = factor * delta'
};

/// Full record of one protocol run. Work is in kT ln 2 units and positive
/// values are costs. ell = 2m except on the unitary-only path, where the
/// whole of S is reset by a known permutation.
struct ProtocolTranscript {
  std::string scenario;
  int n = 0;
  int m = 0;
  int ell = 0;
  bool unitary_only = false;
  std::optional<std::uint64_t> unitary_seed;  // empty: identity on S was used
  thermo::WorkLedger compress_ledger;
  thermo::WorkLedger extract_ledger;
  thermo::WorkLedger erase_ledger;
  double net_work = 0.0;
  double extracted_work = 0.0;
  double hmax_used = 0.0;
  double hmax_gap = 0.0;
  double delta_slack = 0.0;  // Delta = -2 log2(delta^2 - 12 epsilon)
  double bound = 0.0;        // hmax + Delta (erasure) or n - hmax - Delta (extraction)
  double discretization_tolerance = 0.0;
  double decoupling_distance = 0.0;
  double decoupling_target = 0.0;  // delta' = delta^2 / 2
  double purifier_residual = 0.0;
  double extraction_failure_probability = 0.0;
  double memory_preserved = 0.0;   // trace distance of rho_{O Gamma} before/after
  double memory_tolerance = 0.0;
  double final_system_deviation = 0.0;  // trace distance of final rho_S to |0...0>
  bool bound_satisfied = false;
  bool success = false;
  std::optional<double> net_work_joules;
};

/// Decouple, extract from S1 (x) P and erase S.
ProtocolTranscript run_erasure(const Scenario& scenario, const RunOptions& options = {});
/// Decouple and extract only.
ProtocolTranscript run_extraction(const Scenario& scenario, const RunOptions& options = {});

/// Delta = -2 log2(delta^2 - 12 epsilon). Throws InvalidArgument when
/// delta^2 <= 12 epsilon or an input lies outside (0, 1) ([0, 1) for epsilon).
double theorem1_failure_budget(double delta, double epsilon);
/// Inverse relation delta = sqrt(2^{-Delta/2} + 12 epsilon).
double theorem1_failure_probability(double slack, double epsilon);

struct RatePoint {
  int copies = 0;
  double hmax_rate = 0.0;       // H_max^eps(S^n|O^n) / n
  int ell = 0;
  double ideal_rate = 0.0;      // (n - ell) / n
  double simulated_rate = 0.0;  // from simulated single-qubit ledgers
  std::string method;           // additive | classicalExact | truncationHeuristic
};

/// Per-copy work of erasing n copies of the scenario's S given O. The number
/// of extractable qubits is ell = 2 floor((n - H_max^eps(S^n|O^n)) / 2)
/// (clamped to the available qubits); the finite-size slack Delta is left
/// out because it vanishes per copy.
std::vector<RatePoint> work_cost_rate(const Scenario& single, const std::vector<int>& copies);

/// Trace distance between two rho_{O Gamma} marginals.
double verify_memory_preservation(const DensityOperator& before, const DensityOperator& after);

}  // namespace negentropy::protocol
