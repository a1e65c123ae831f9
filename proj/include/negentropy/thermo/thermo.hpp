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

namespace negentropy::thermo {

using quantum::DensityOperator;
using quantum::PureState;

inline constexpr double kLn2 = 0.693147180559945309417;
/// Boltzmann constant in J/K (exact SI value).
inline constexpr double kBoltzmann = 1.380649e-23;

/// Quasistatic schedule. Energies are in units of kT when beta = 1.
struct ScheduleConfig {
  double e_max = 30.0;
  double delta = 0.01;
  double beta = 1.0;

  void validate() const;
  /// Number of steps to cover [0, e_max]; the step is e_max / steps().
  int steps() const;
};

/// Work reservoir. Charge is in units of kT ln 2.
struct Battery {
  double charge = 0.0;
};

struct LedgerEntry {
  int step = 0;
  std::string label;
  double delta_e = 0.0;  // work done on the system, kT ln 2
  double occupancy = 0.0;
  double cumulative = 0.0;
};

/// Ordered record of the work done on a system by level shifts. Positive
/// entries are costs drawn from the battery, negative entries are gains.
/// Bath contacts are tracked separately as the energy the bath absorbed.
class WorkLedger {
 public:
  void record(const std::string& label, double delta_e, double occupancy);
  /// Records a thermalization that changed the system's energy by
  /// `system_energy_change` (kT ln 2).
  void record_bath_contact(double system_energy_change);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  double total() const { return total_; }
  /// Energy delivered into the bath over all contacts, kT ln 2.
  double bath_energy() const { return bath_energy_; }

  /// CSV with header step,label,dE_kTln2,occupancy,cumulative_kTln2.
  std::string to_csv() const;

 private:
  std::vector<LedgerEntry> entries_;
  double total_ = 0.0;
  double bath_energy_ = 0.0;
};

/// Levels of a system with a Hamiltonian diagonal in the computational basis.
/// Only the diagonal enters the energetics; coherences of the initial state
/// are dropped at the first bath contact.
class LevelSystem {
 public:
  LevelSystem(std::vector<double> energies, const DensityOperator& state);
  /// All levels at energy 0.
  static LevelSystem degenerate(const DensityOperator& state);

  const std::vector<double>& energies() const { return energies_; }
  const std::vector<double>& populations() const { return populations_; }
  int size() const { return static_cast<int>(energies_.size()); }

  double occupancy(const std::vector<int>& levels) const;
  /// Mean energy in kT ln 2 (energies are read in kT).
  double mean_energy() const;
  /// Current state: the input operator until the first bath contact, then
  /// the diagonal populations.
  DensityOperator state() const;

 private:
  friend double shift_levels(LevelSystem&, const std::vector<int>&, double, Battery&,
                             WorkLedger&, const std::string&);
  friend void thermalize(LevelSystem&, double, WorkLedger*);

  std::vector<double> energies_;
  std::vector<double> populations_;
  quantum::Dims dims_;
  std::optional<DensityOperator> coherent_;
};

/// Shifts the listed levels by `de` (kT). The work done on the system is
/// occupancy * de / ln 2 (kT ln 2); the battery pays it and the ledger
/// records it. Returns that work.
double shift_levels(LevelSystem& system, const std::vector<int>& levels, double de,
                    Battery& battery, WorkLedger& ledger, const std::string& label = "shift");

/// Replaces the state with the Gibbs state of the current levels. The energy
/// change is charged to the bath in `ledger` when given.
void thermalize(LevelSystem& system, double beta, WorkLedger* ledger = nullptr);

/// Outcome of a simulated quasistatic process.
struct ProcessResult {
  LevelSystem system;
  WorkLedger ledger;
  /// Upper bound on the work left out by truncating energies at e_max.
  double tail_bound = 0.0;
};

/// Erasure to level 0 by raising every other level in steps up to e_max with
/// bath contact after each step, then lowering the (empty) levels back.
ProcessResult erase(const DensityOperator& initial, const ScheduleConfig& schedule,
                    Battery& battery);
/// Erasure of `qubits` fully mixed qubits; costs qubits kT ln 2 in the limit.
ProcessResult erase_mixed(int qubits, const ScheduleConfig& schedule, Battery& battery);

/// Work extraction from a state expected in level `expected_level`: the other
/// levels are raised to e_max in one step (free when they are empty), then
/// lowered quasistatically with bath contact after each step.
ProcessResult extract_work(const DensityOperator& initial, int expected_level,
                           const ScheduleConfig& schedule, Battery& battery);
/// `qubits` qubits in |0...0>; gains qubits kT ln 2 in the limit.
ProcessResult extract_work_pure(int qubits, const ScheduleConfig& schedule, Battery& battery);
/// `levels` levels with the system in level 0; gains log2(levels) kT ln 2.
ProcessResult extract_work_levels(int levels, const ScheduleConfig& schedule, Battery& battery);

/// Single stochastic run of the same schedules. At every bath contact the
/// occupied level is resampled from the Gibbs distribution, so each shift
/// costs either the full shift or nothing.
struct Trajectory {
  WorkLedger ledger;
  int initial_level = 0;
  int final_level = 0;
  /// The system was not found in the expected level when the empty levels
  /// were raised.
  bool check_failed = false;
};
Trajectory sample_extraction(const DensityOperator& initial, int expected_level,
                             const ScheduleConfig& schedule, std::uint64_t seed);
Trajectory sample_erasure(const DensityOperator& initial, const ScheduleConfig& schedule,
                          std::uint64_t seed);

/// 1 - <phi|rho|phi>.
double failure_probability(const DensityOperator& rho, const PureState& expected);

/// Optimal probability of telling rho from sigma in one shot: (1 + T) / 2.
double distinguish_probability(const DensityOperator& rho, const DensityOperator& sigma);

/// Converts kT ln 2 units to joules at temperature `kelvin`.
double to_joules(double kt_ln2, double kelvin);

}  // namespace negentropy::thermo
