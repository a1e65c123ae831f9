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

// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers
// and the wall time next to its budget. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "negentropy/decoupling/decoupling.hpp"
#include "negentropy/entropy/entropy.hpp"
#include "negentropy/protocol/protocol.hpp"
#include "negentropy/quantum/ops.hpp"
#include "negentropy/thermo/thermo.hpp"
#include "support.hpp"

namespace {

using namespace negentropy;
using quantum::DensityOperator;
using quantum::Matrix;
using quantum::RegisterLayout;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const RegisterLayout kSO({{"S", 1}, {"O", 1}});
const RegisterLayout kSOG({{"S", 1}, {"O", 1}, {"Gamma", 1}});

Outcome entropy_ground_truth() {
  const auto zero = DensityOperator::basis_state({2}, 0);
  const std::vector<std::pair<DensityOperator, double>> cases = {
      {quantum::tensor(zero, zero), 0.0},
      {quantum::tensor(DensityOperator::maximally_mixed({2}), zero), 1.0},
      {quantum::maximally_entangled(2).density(), -1.0},
  };
  Outcome o;
  double worst = 0.0;
  for (const auto& [rho, expected] : cases) {
    const double lo = entropy::hmin(rho, kSO).value;
    const double hi = entropy::hmax(rho, kSO).value;
    const double grid_lo = testing::brute_hmin(rho.matrix(), 2);
    const double grid_hi = testing::brute_hmax(rho.matrix(), 2);
    for (double err : {lo - expected, hi - expected, lo - grid_lo, hi - grid_hi}) {
      worst = std::max(worst, std::abs(err));
    }
  }
  o.pass = worst < 1e-6;
  o.detail = "worst deviation " + fmt("%.2e", worst);
  return o;
}

Outcome duality() {
  double worst = 0.0;
  bool pass = true;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = quantum::random_pure_state({2, 2, 2}, 10000 + s).density();
    const auto lo = entropy::hmin(rho, kSOG, "S", "Gamma");
    const auto hi = entropy::hmax(rho, kSOG);
    const double residual = std::abs(lo.value + hi.value);
    worst = std::max(worst, residual);
    pass = pass && residual < 1e-5 + lo.solver_gap + hi.solver_gap;
  }
  return {pass, "worst |hmin(S|G) + hmax(S|O)| " + fmt("%.2e", worst) + " over 50 states"};
}

Outcome sandwich_and_dpi() {
  double worst = 0.0;  // most negative slack, reported as a violation size
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto rho = quantum::random_density({2, 2}, 1 + static_cast<int>(s % 4), 20000 + s);
    const double lo = entropy::hmin(rho, kSO).value;
    const double h = entropy::conditional_von_neumann(rho, kSO).value;
    const double hi = entropy::hmax(rho, kSO).value;
    worst = std::max({worst, lo - h, h - hi});
  }
  // Channels on O: a random unitary on O and a fresh ancilla, ancilla traced.
  const auto ancilla = DensityOperator::basis_state({2}, 0);
  for (std::uint64_t c = 0; c < 10; ++c) {
    const Matrix u = quantum::haar_unitary(4, 30000 + c);
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto rho = quantum::random_density({2, 2}, 2, 31000 + 10 * c + s);
      const auto out = quantum::partial_trace(
          quantum::apply_unitary(quantum::tensor(rho, ancilla), u, {1, 2}), {0, 1});
      worst = std::max(worst, entropy::hmin(rho, kSO).value - entropy::hmin(out, kSO).value);
      worst = std::max(worst, entropy::hmax(rho, kSO).value - entropy::hmax(out, kSO).value);
    }
  }
  return {worst <= 1e-5, "largest violation " + fmt("%.2e", std::max(worst, 0.0)) +
                             " (100 states, 10 channels x 3 states)"};
}

const double kErasureLimit = (thermo::kLn2 - std::log1p(std::exp(-30.0))) / thermo::kLn2;

Outcome erasure_work() {
  thermo::Battery b1, b2;
  const double coarse = thermo::erase_mixed(1, {30.0, 0.01, 1.0}, b1).ledger.total();
  const double fine = thermo::erase_mixed(1, {30.0, 0.005, 1.0}, b2).ledger.total();
  const double r1 = coarse - kErasureLimit, r2 = fine - kErasureLimit;
  Outcome o;
  o.pass = std::abs(coarse - 1.0) <= 0.01 && r2 <= 0.5 * r1 + std::exp(-30.0);
  o.detail = "W = " + fmt("%.6f", coarse) + ", residual " + fmt("%.3e", r1) + " -> " + fmt("%.3e", r2);
  return o;
}

Outcome extraction_work() {
  Outcome o;
  std::ostringstream d;
  for (int l = 1; l <= 3; ++l) {
    thermo::Battery b;
    const double w = -thermo::extract_work_pure(l, {}, b).ledger.total();
    o.pass = o.pass && std::abs(w - l) <= 0.01 * l;
    d << "l=" << l << ": " << fmt("%.4f", w) << "  ";
  }
  for (int n : {1, 3, 7}) {
    thermo::Battery b;
    const double w = -thermo::extract_work_levels(n + 1, {}, b).ledger.total();
    const double target = std::log2(n + 1.0);
    o.pass = o.pass && std::abs(w - target) <= 0.01 * target;
    d << "N=" << n << ": " << fmt("%.4f", w) << "  ";
  }
  o.detail = d.str();
  return o;
}

Outcome decoupling_bound() {
  struct Member {
    int n, o, g, m;
    std::uint64_t seed;
  };
  const std::vector<Member> ensemble = {
      {1, 1, 1, 0, 1}, {1, 1, 1, 1, 2}, {2, 1, 1, 0, 3}, {2, 1, 1, 1, 4},
      {2, 2, 2, 1, 5}, {3, 1, 2, 1, 6}, {3, 2, 1, 1, 7}, {4, 2, 2, 1, 8},
      {4, 2, 2, 2, 9}, {4, 2, 1, 2, 10},
  };
  Outcome o;
  double worst = -1.0;
  for (const auto& e : ensemble) {
    const RegisterLayout layout({{"S", e.n}, {"O", e.o}, {"Gamma", e.g}});
    const auto rho = quantum::random_pure_state(layout.dims(), 40000 + e.seed).density();
    const auto r = decoupling::sample_decoupling(rho, layout, e.m, 200, 50000 + 1000 * e.seed);
    const double slack = r.mean_distance - (r.bound + 3 * r.standard_error);
    worst = std::max(worst, slack);
    o.pass = o.pass && slack <= 0.0;
  }
  o.detail = "worst mean - (bound + 3 se) = " + fmt("%.3e", worst) + " over " +
             std::to_string(ensemble.size()) + " members, 200 samples each";
  return o;
}

protocol::RunOptions seeded(std::uint64_t seed) {
  protocol::RunOptions o;
  o.seed = seed;
  return o;
}

protocol::Scenario scenario(const std::string& tag, int qubits = 1) {
  protocol::ScenarioParams p;
  p.qubits = qubits;
  return protocol::build_scenario(tag, p);
}

Outcome erasure_end_to_end() {
  Outcome o;
  const auto q = protocol::run_erasure(scenario("quasimodo"), seeded(1));
  const auto b = protocol::run_erasure(scenario("bob"), seeded(2));
  const auto a = protocol::run_erasure(scenario("alice"), seeded(3));
  o.pass = std::abs(q.net_work + 1.0) <= 0.02 && std::abs(b.net_work - 1.0) <= 0.02 && a.net_work == 0.0;
  double memory = 0.0;
  for (const auto* t : {&q, &b, &a}) memory = std::max(memory, t->memory_preserved);
  o.pass = o.pass && memory <= 1e-6;

  // Bound check over the wider ensemble.
  std::vector<protocol::Scenario> runs = {scenario("quasimodo"), scenario("bob"), scenario("alice"),
                                          scenario("quasimodo", 2), scenario("bob", 2), scenario("alice", 2)};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const int n = 1 + static_cast<int>(s % 3);
    const RegisterLayout layout({{"S", n}, {"O", 1 + static_cast<int>(s % 2)}, {"Gamma", 1}});
    runs.push_back(protocol::custom_scenario(
        "random", quantum::random_pure_state(layout.dims(), 60000 + s).density(), layout, {}));
  }
  int violations = 0;
  for (size_t k = 0; k < runs.size(); ++k) {
    const auto t = protocol::run_erasure(runs[k], seeded(70000 + k));
    if (t.net_work > t.bound + t.discretization_tolerance) ++violations;
  }
  o.pass = o.pass && violations == 0;
  o.detail = "quasimodo " + fmt("%+.4f", q.net_work) + ", bob " + fmt("%+.4f", b.net_work) + ", alice " +
             fmt("%+.4f", a.net_work) + ", memory drift " + fmt("%.1e", memory) + ", bound violations " +
             std::to_string(violations) + "/" + std::to_string(runs.size());
  return o;
}

Outcome extraction_end_to_end() {
  const auto t = protocol::run_extraction(scenario("quasimodo"), seeded(4));
  Outcome o;
  o.pass = std::abs(t.extracted_work - 2.0) <= 0.04 && t.extracted_work >= t.bound - t.discretization_tolerance;
  o.detail = "extracted " + fmt("%.4f", t.extracted_work) + " >= n - hmax - Delta = " + fmt("%.3f", t.bound);
  return o;
}

Outcome failure_budget() {
  Outcome o;
  const double slack = protocol::theorem1_failure_budget(0.03125, 1e-12);
  const double delta = protocol::theorem1_failure_probability(20.0, 1e-12);
  o.pass = std::abs(slack - 20.0) < 1e-6 && std::abs(delta - 0.031) < 0.001;
  int violations = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const double d = 0.01 + 0.002 * static_cast<double>(s % 10);
    const auto phi = quantum::random_pure_state({2, 2}, 80000 + s);
    const auto noise = quantum::random_density({2, 2}, 4, 90000 + s);
    const DensityOperator rho((1 - d) * phi.density().matrix() + d * noise.matrix(), {2, 2});
    if (thermo::failure_probability(rho, phi) > quantum::trace_distance(rho, phi.density()) + 1e-12) {
      ++violations;
    }
  }
  o.pass = o.pass && violations == 0;
  o.detail = "Delta(0.03125) = " + fmt("%.6f", slack) + ", delta(20) = " + fmt("%.5f", delta) +
             ", p_fail > T on " + std::to_string(violations) + "/100";
  return o;
}

Outcome aep_rate() {
  Outcome o;
  const double target = -0.11 * std::log2(0.11) - 0.89 * std::log2(0.89);
  protocol::ScenarioParams params;
  params.epsilon = 0.05;
  const auto points = protocol::work_cost_rate(protocol::build_scenario("classical", params), {10, 25, 50});
  const bool window = std::abs(points[2].ideal_rate - target) <= 0.15;
  const bool trend = points[0].ideal_rate >= points[1].ideal_rate && points[1].ideal_rate >= points[2].ideal_rate;
  bool quasimodo = true;
  for (const auto& p : protocol::work_cost_rate(scenario("quasimodo"), {1, 2, 5, 10, 20, 50})) {
    quasimodo = quasimodo && p.ideal_rate == -1.0;
  }
  o.pass = window && trend && quasimodo;
  std::ostringstream d;
  d << "W/n at n=10,25,50: " << fmt("%.4f", points[0].ideal_rate) << ", " << fmt("%.4f", points[1].ideal_rate)
    << ", " << fmt("%.4f", points[2].ideal_rate) << " (Hmax^eps/n at 50: " << fmt("%.4f", points[2].hmax_rate)
    << ", target " << fmt("%.4f", target) << ")" << (window ? "" : " outside the 0.15 window")
    << (trend ? ", non-increasing" : ", not monotone") << (quasimodo ? ", quasimodo -1 exactly" : ", quasimodo off");
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "entropy ground truth", 10, entropy_ground_truth},
      {2, "duality", 60, duality},
      {3, "sandwich and data processing", 120, sandwich_and_dpi},
      {4, "erasure work", 5, erasure_work},
      {5, "extraction work", 10, extraction_work},
      {6, "decoupling bound", 300, decoupling_bound},
      {7, "erasure cost end to end", 60, erasure_end_to_end},
      {8, "extracted work", 30, extraction_end_to_end},
      {9, "failure budget", 10, failure_budget},
      {10, "work cost rate", 120, aep_rate},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool on_time = seconds <= c.budget_seconds;
    const bool pass = o.pass && on_time;
    failures += pass ? 0 : 1;
    std::printf("%s criterion %2d  %-30s %s  [%.2f s / %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title,
                o.detail.c_str(), seconds, c.budget_seconds, on_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
