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

#include "negentropy/thermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::thermo {
namespace {

using quantum::Matrix;

std::vector<int> all_but(int size, int excluded) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    if (i != excluded) out.push_back(i);
  }
  return out;
}

std::vector<double> gibbs_weights(const std::vector<double>& energies, double beta) {
  const double e0 = *std::min_element(energies.begin(), energies.end());
  std::vector<double> w(energies.size());
  double z = 0.0;
  for (size_t i = 0; i < energies.size(); ++i) {
    w[i] = std::exp(-beta * (energies[i] - e0));
    z += w[i];
  }
  for (double& v : w) v /= z;
  return w;
}

// Work omitted by stopping at e_max: the integral of N / (N + e^{beta E})
// beyond e_max, bounded by N e^{-beta e_max} / beta.
double tail_bound(int raised, const ScheduleConfig& schedule) {
  return raised * std::exp(-schedule.beta * schedule.e_max) / (schedule.beta * kLn2);
}

int sample_level(const std::vector<double>& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const double u = uniform(rng);
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(p.size()) - 1;
}

// Stochastic counterpart of shift_levels: the cost is the full shift when the
// occupied level moves.
void shift_trajectory(std::vector<double>& energies, const std::vector<int>& levels, double de,
                      int occupied, WorkLedger& ledger, const std::string& label) {
  bool hit = false;
  for (int l : levels) {
    energies[static_cast<size_t>(l)] += de;
    hit = hit || l == occupied;
  }
  ledger.record(label, hit ? de / kLn2 : 0.0, hit ? 1.0 : 0.0);
}

int thermalize_trajectory(const std::vector<double>& energies, double beta, int occupied,
                          std::mt19937_64& rng, WorkLedger& ledger) {
  const int next = sample_level(gibbs_weights(energies, beta), rng);
  ledger.record_bath_contact((energies[static_cast<size_t>(next)] -
                              energies[static_cast<size_t>(occupied)]) / kLn2);
  return next;
}

}  // namespace

void ScheduleConfig::validate() const {
  if (!(e_max > 0.0) || !std::isfinite(e_max)) throw InvalidArgument("schedule e_max must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidArgument("schedule delta must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("schedule beta must be positive");
  if (e_max / delta > 1e8) throw CapacityError("schedule needs more than 1e8 steps");
}

int ScheduleConfig::steps() const {
  validate();
  return std::max(1, static_cast<int>(std::lround(e_max / delta)));
}

void WorkLedger::record(const std::string& label, double delta_e, double occupancy) {
  total_ += delta_e;
  entries_.push_back({static_cast<int>(entries_.size()), label, delta_e, occupancy, total_});
}

void WorkLedger::record_bath_contact(double system_energy_change) {
  bath_energy_ -= system_energy_change;
}

std::string WorkLedger::to_csv() const {
  std::ostringstream os;
  os << "step,label,dE_kTln2,occupancy,cumulative_kTln2\n";
  os << std::setprecision(17);
  for (const auto& e : entries_) {
    os << e.step << ',' << e.label << ',' << e.delta_e << ',' << e.occupancy << ','
       << e.cumulative << '\n';
  }
  return os.str();
}

LevelSystem::LevelSystem(std::vector<double> energies, const DensityOperator& state)
    : energies_(std::move(energies)), dims_(state.dims()), coherent_(state) {
  if (static_cast<int>(energies_.size()) != state.dimension()) {
    throw InvalidArgument("energy count does not match the state dimension");
  }
  for (double e : energies_) {
    if (!std::isfinite(e)) throw InvalidArgument("level energies must be finite");
  }
  populations_.resize(energies_.size());
  for (int i = 0; i < state.dimension(); ++i) {
    populations_[static_cast<size_t>(i)] = std::max(0.0, state.matrix()(i, i).real());
  }
}

LevelSystem LevelSystem::degenerate(const DensityOperator& state) {
  return LevelSystem(std::vector<double>(static_cast<size_t>(state.dimension()), 0.0), state);
}

double LevelSystem::occupancy(const std::vector<int>& levels) const {
  double acc = 0.0;
  for (int l : levels) {
    if (l < 0 || l >= size()) throw AddressingError("level index out of range");
    acc += populations_[static_cast<size_t>(l)];
  }
  return acc;
}

double LevelSystem::mean_energy() const {
  double acc = 0.0;
  for (size_t i = 0; i < energies_.size(); ++i) acc += populations_[i] * energies_[i];
  return acc / kLn2;
}

DensityOperator LevelSystem::state() const {
  if (coherent_) return *coherent_;
  Matrix m = Matrix::Zero(size(), size());
  for (int i = 0; i < size(); ++i) m(i, i) = populations_[static_cast<size_t>(i)];
  return DensityOperator(std::move(m), dims_);
}

double shift_levels(LevelSystem& system, const std::vector<int>& levels, double de,
                    Battery& battery, WorkLedger& ledger, const std::string& label) {
  const double occ = system.occupancy(levels);
  for (int l : levels) system.energies_[static_cast<size_t>(l)] += de;
  const double work = occ * de / kLn2;
  battery.charge -= work;
  ledger.record(label, work, occ);
  return work;
}

void thermalize(LevelSystem& system, double beta, WorkLedger* ledger) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  const double before = system.mean_energy();
  system.populations_ = gibbs_weights(system.energies_, beta);
  system.coherent_.reset();
  if (ledger != nullptr) ledger->record_bath_contact(system.mean_energy() - before);
}

ProcessResult erase(const DensityOperator& initial, const ScheduleConfig& schedule,
                    Battery& battery) {
  const int steps = schedule.steps();
  const double step = schedule.e_max / steps;
  ProcessResult r{LevelSystem::degenerate(initial), WorkLedger{}, 0.0};
  const auto raised = all_but(r.system.size(), 0);
  thermalize(r.system, schedule.beta, &r.ledger);
  for (int k = 0; k < steps; ++k) {
    shift_levels(r.system, raised, step, battery, r.ledger, "raise");
    thermalize(r.system, schedule.beta, &r.ledger);
  }
  // The raised levels are (up to the e^{-e_max} tail) empty, so restoring the
  // Hamiltonian is free.
  shift_levels(r.system, raised, -schedule.e_max, battery, r.ledger, "restore");
  r.tail_bound = tail_bound(static_cast<int>(raised.size()), schedule);
  return r;
}

ProcessResult erase_mixed(int qubits, const ScheduleConfig& schedule, Battery& battery) {
  if (qubits < 1) throw InvalidArgument("erasure needs at least one qubit");
  return erase(DensityOperator::maximally_mixed(quantum::Dims(static_cast<size_t>(qubits), 2)),
               schedule, battery);
}

ProcessResult extract_work(const DensityOperator& initial, int expected_level,
                           const ScheduleConfig& schedule, Battery& battery) {
  if (expected_level < 0 || expected_level >= initial.dimension()) {
    throw AddressingError("expected level out of range");
  }
  const int steps = schedule.steps();
  const double step = schedule.e_max / steps;
  ProcessResult r{LevelSystem::degenerate(initial), WorkLedger{}, 0.0};
  const auto raised = all_but(r.system.size(), expected_level);
  shift_levels(r.system, raised, schedule.e_max, battery, r.ledger, "raise");
  thermalize(r.system, schedule.beta, &r.ledger);
  for (int k = 0; k < steps; ++k) {
    shift_levels(r.system, raised, -step, battery, r.ledger, "lower");
    thermalize(r.system, schedule.beta, &r.ledger);
  }
  r.tail_bound = tail_bound(static_cast<int>(raised.size()), schedule);
  return r;
}

ProcessResult extract_work_pure(int qubits, const ScheduleConfig& schedule, Battery& battery) {
  if (qubits < 1) throw InvalidArgument("extraction needs at least one qubit");
  const quantum::Dims dims(static_cast<size_t>(qubits), 2);
  return extract_work(DensityOperator::basis_state(dims, 0), 0, schedule, battery);
}

ProcessResult extract_work_levels(int levels, const ScheduleConfig& schedule, Battery& battery) {
  if (levels < 2) throw InvalidArgument("extraction needs at least two levels");
  return extract_work(DensityOperator::basis_state({levels}, 0), 0, schedule, battery);
}

Trajectory sample_extraction(const DensityOperator& initial, int expected_level,
                             const ScheduleConfig& schedule, std::uint64_t seed) {
  if (expected_level < 0 || expected_level >= initial.dimension()) {
    throw AddressingError("expected level out of range");
  }
  const int steps = schedule.steps();
  const double step = schedule.e_max / steps;
  std::mt19937_64 rng(seed);
  const LevelSystem start = LevelSystem::degenerate(initial);
  std::vector<double> energies = start.energies();
  const auto raised = all_but(start.size(), expected_level);

  Trajectory t;
  t.initial_level = sample_level(start.populations(), rng);
  t.check_failed = t.initial_level != expected_level;
  int level = t.initial_level;
  shift_trajectory(energies, raised, schedule.e_max, level, t.ledger, "raise");
  level = thermalize_trajectory(energies, schedule.beta, level, rng, t.ledger);
  for (int k = 0; k < steps; ++k) {
    shift_trajectory(energies, raised, -step, level, t.ledger, "lower");
    level = thermalize_trajectory(energies, schedule.beta, level, rng, t.ledger);
  }
  t.final_level = level;
  return t;
}

Trajectory sample_erasure(const DensityOperator& initial, const ScheduleConfig& schedule,
                          std::uint64_t seed) {
  const int steps = schedule.steps();
  const double step = schedule.e_max / steps;
  std::mt19937_64 rng(seed);
  const LevelSystem start = LevelSystem::degenerate(initial);
  std::vector<double> energies = start.energies();
  const auto raised = all_but(start.size(), 0);

  Trajectory t;
  t.initial_level = sample_level(start.populations(), rng);
  int level = thermalize_trajectory(energies, schedule.beta, t.initial_level, rng, t.ledger);
  for (int k = 0; k < steps; ++k) {
    shift_trajectory(energies, raised, step, level, t.ledger, "raise");
    level = thermalize_trajectory(energies, schedule.beta, level, rng, t.ledger);
  }
  shift_trajectory(energies, raised, -schedule.e_max, level, t.ledger, "restore");
  t.final_level = level;
  t.check_failed = level != 0;
  return t;
}

double failure_probability(const DensityOperator& rho, const PureState& expected) {
  if (rho.dimension() != expected.dimension()) {
    throw InvalidArgument("state and expected pure state differ in dimension");
  }
  const auto& v = expected.amplitudes();
  const double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

double distinguish_probability(const DensityOperator& rho, const DensityOperator& sigma) {
  return 0.5 * (1.0 + quantum::trace_distance(rho, sigma));
}

double to_joules(double kt_ln2, double kelvin) {
  if (!(kelvin > 0.0)) throw InvalidArgument("temperature must be positive");
  return kt_ln2 * kBoltzmann * kelvin * kLn2;
}

}  // namespace negentropy::thermo
