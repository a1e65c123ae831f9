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

#include <gtest/gtest.h>

#include <cmath>

#include "negentropy/entropy/entropy.hpp"
#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"
#include "support.hpp"

namespace negentropy::entropy {
namespace {

using quantum::Complex;
using quantum::Matrix;
using quantum::PureState;

const RegisterLayout kSO({{"S", 1}, {"O", 1}});
const RegisterLayout kSOG({{"S", 1}, {"O", 1}, {"Gamma", 1}});

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

DensityOperator diagonal(const std::vector<double>& p, const quantum::Dims& dims) {
  Matrix m = Matrix::Zero(static_cast<int>(p.size()), static_cast<int>(p.size()));
  for (size_t i = 0; i < p.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = p[i];
  return DensityOperator(m, dims);
}

/// Joint p(s, o) with o uniform and s = o flipped with probability `flip`.
DensityOperator correlated_bits(double flip) {
  return diagonal({0.5 * (1 - flip), 0.5 * flip, 0.5 * flip, 0.5 * (1 - flip)}, {2, 2});
}

// Three single-qubit reference cases, all with a one-qubit O.
struct GroundTruth {
  const char* name;
  DensityOperator rho;
  double expected;
};

std::vector<GroundTruth> ground_truth_cases() {
  const auto zero = DensityOperator::basis_state({2}, 0);
  return {
      {"pure_uncorrelated", quantum::tensor(zero, zero), 0.0},
      {"mixed_uncorrelated", quantum::tensor(DensityOperator::maximally_mixed({2}), zero), 1.0},
      {"maximally_entangled", quantum::maximally_entangled(2).density(), -1.0},
  };
}

TEST(VonNeumannTest, ReferenceValues) {
  EXPECT_NEAR(von_neumann(DensityOperator::basis_state({2, 2}, 3)).value, 0.0, 1e-12);
  EXPECT_NEAR(von_neumann(DensityOperator::maximally_mixed({2, 2, 2})).value, 3.0, 1e-12);
  EXPECT_NEAR(von_neumann(diagonal({0.11, 0.89}, {2})).value, 0.49991595816452805, 1e-12);
}

TEST(VonNeumannTest, ConditionalReferenceValues) {
  const RegisterLayout two({{"S", 2}, {"O", 2}});
  const auto pairs = quantum::permute(
      quantum::tensor(quantum::maximally_entangled(2), quantum::maximally_entangled(2)).density(),
      {0, 2, 1, 3});
  EXPECT_NEAR(conditional_von_neumann(pairs, two).value, -2.0, 1e-10);
  const auto mixed = quantum::tensor(DensityOperator::maximally_mixed({2, 2}),
                                     quantum::random_density({2, 2}, 3, 1));
  EXPECT_NEAR(conditional_von_neumann(mixed, two).value, 2.0, 1e-10);
  EXPECT_NEAR(conditional_von_neumann(correlated_bits(0.11), kSO).value, binary_entropy(0.11), 1e-12);
}

TEST(MinMaxEntropyTest, GroundTruthAgainstBlochGrid) {
  for (const auto& c : ground_truth_cases()) {
    SCOPED_TRACE(c.name);
    const double lo = hmin(c.rho, kSO).value;
    const double hi = hmax(c.rho, kSO).value;
    EXPECT_NEAR(lo, c.expected, 1e-6);
    EXPECT_NEAR(hi, c.expected, 1e-6);
    EXPECT_NEAR(lo, testing::brute_hmin(c.rho.matrix(), 2), 1e-6);
    EXPECT_NEAR(hi, testing::brute_hmax(c.rho.matrix(), 2), 1e-6);
  }
}

TEST(MinMaxEntropyTest, RandomTwoQubitStatesAgainstBlochGrid) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto rho = quantum::random_density({2, 2}, 2, seed);
    EXPECT_NEAR(hmin(rho, kSO).value, testing::brute_hmin(rho.matrix(), 2), 1e-6) << seed;
    EXPECT_NEAR(hmax(rho, kSO).value, testing::brute_hmax(rho.matrix(), 2), 1e-6) << seed;
  }
}

TEST(MinMaxEntropyTest, ClassicalQubitWithTrivialConditioning) {
  const RegisterLayout s_only({{"S", 1}, {"O", 0}});
  for (double p : {0.5, 0.11, 0.02}) {
    const auto rho = diagonal({p, 1 - p}, {2});
    const double expected = 2 * std::log2(std::sqrt(p) + std::sqrt(1 - p));
    EXPECT_NEAR(hmax(rho, s_only, "S", "O").value, expected, 1e-12);
    EXPECT_NEAR(hmin(rho, s_only, "S", "O").value, -std::log2(std::max(p, 1 - p)), 1e-12);
  }
}

// Independent reference: a conic solver (CLARABEL through cvxpy) on the
// primal SDPs, for pure 2x2x2 states given amplitude by amplitude.
struct SdpReference {
  std::array<double, 8> re, im;
  double hmin_so, hmin_sg;
};

const SdpReference kSdp[] = {
    {{-0.01084452512769184, 0.28431100589196956, 0.29362284647240555, -0.36364049718279956,
      -0.24694522074883826, 0.4747177601383753, -0.38218089706481106, -0.10856268520063789},
     {0.095256063725559087, -0.24187927170112145, -0.26092143343688357, -0.11673349822048541,
      0.012768600240634951, 0.12195311493457844, 0.28721447201794736, 0.097980183614913535},
     -0.5474134720, -0.3305078819},
    {{-0.10844195590679598, 0.38445295139065155, -0.074569719023938857, -0.37946856405435286,
      -0.04117402834541696, -0.028253282067991343, 0.36286397816279697, 0.033436684657468296},
     {-0.33434614851432337, -0.0072915683932240289, 0.060077430859316681, 0.36039797813315055,
      -0.11477981758200362, 0.23648948166800945, 0.3513311057117568, 0.3431117420564419},
     -0.5094203315, -0.4015297854},
    {{-0.16781381063760784, 0.21848824843844647, 0.28552250234837939, 0.032945163625980774,
      -0.32542199035067293, -0.017695399724721748, -0.5057719707821432, -0.29922974734006186},
     {0.16422023765197621, 0.025121582522481287, 0.57081261677760164, 0.0076794504859686889,
      0.019283395568427744, 0.06162538863133632, 0.09704423044426301, 0.15120873545005464},
     -0.3244498835, -0.3887449730},
    {{-0.4631805192256595, 0.081842425126880808, -0.14146930642777197, 0.11412445570050546,
      0.057006247993198693, -0.30504381064135677, 0.074476121080361626, 0.046303695795040109},
     {0.4287425579854594, 0.38978596052569886, -0.31946497239921834, 0.31906945572271106,
      0.0454886780868776, 0.15808413466540033, -0.073729707881542442, 0.26386200735500859},
     -0.0431501063, -0.2615156038},
};

TEST(MinMaxEntropyTest, MatchesConicSolverReference) {
  for (const auto& ref : kSdp) {
    quantum::Vector v(8);
    for (int i = 0; i < 8; ++i) v(i) = Complex(ref.re[static_cast<size_t>(i)], ref.im[static_cast<size_t>(i)]);
    const auto rho = PureState(v, {2, 2, 2}).density();
    EXPECT_NEAR(hmin(rho, kSOG).value, ref.hmin_so, 1e-6);
    EXPECT_NEAR(hmin(rho, kSOG, "S", "Gamma").value, ref.hmin_sg, 1e-6);
    // For a pure state the max-entropy is minus the min-entropy of the complement.
    EXPECT_NEAR(hmax(rho, kSOG).value, -ref.hmin_sg, 1e-6);
    EXPECT_NEAR(hmax(rho, kSOG, "S", "Gamma").value, -ref.hmin_so, 1e-6);
  }
}

TEST(MinMaxEntropyTest, CertificatesReproduceValues) {
  const auto rho = quantum::random_pure_state({2, 2, 2}, 77).density();
  const auto lo = hmin(rho, kSOG);
  ASSERT_TRUE(lo.certificate.has_value());
  EXPECT_NEAR(lo.certificate->trace(), 1.0, 1e-9);
  const auto hi = hmax(rho, kSOG);
  ASSERT_TRUE(hi.certificate.has_value());
  const auto rho_so = quantum::partial_trace(rho, {0, 1});
  EXPECT_NEAR(max_entropy_objective(rho_so.matrix(), hi.certificate->matrix(), 2), hi.value, 1e-12);
  EXPECT_LE(hi.solver_gap, 1e-6);
  EXPECT_EQ(hi.method, EntropyMethod::ConvexSolve);
}

TEST(MinMaxEntropyTest, StalledSolveIsReported) {
  SolverOptions options;
  options.max_iterations = 2;
  const auto rho = quantum::random_pure_state({2, 2, 2}, 78).density();
  EXPECT_THROW(hmin(rho, kSOG, "S", "O", options), SolverError);
}

TEST(PropertyTest, DualitySandwichAndConditioningOnLess) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = quantum::random_pure_state({2, 2, 2}, 1000 + seed).density();
    const auto lo_sg = hmin(rho, kSOG, "S", "Gamma");
    const auto hi_so = hmax(rho, kSOG);
    EXPECT_LE(std::abs(lo_sg.value + hi_so.value), 1e-5 + lo_sg.solver_gap + hi_so.solver_gap);

    const double h = conditional_von_neumann(rho, kSOG).value;
    const double lo = hmin(rho, kSOG).value;
    EXPECT_LE(lo, h + 1e-5);
    EXPECT_LE(h, hi_so.value + 1e-5);

    // Forgetting O entirely can only raise the entropy of S.
    const auto rho_s = quantum::partial_trace(rho, {0});
    const RegisterLayout s_only({{"S", 1}, {"O", 0}});
    EXPECT_LE(lo, hmin(rho_s, s_only, "S", "O").value + 1e-5);
    EXPECT_LE(hi_so.value, hmax(rho_s, s_only, "S", "O").value + 1e-5);
  }
}

TEST(SmoothingTest, ZeroEpsilonIsTheExactValue) {
  const auto rho = quantum::random_pure_state({2, 2, 2}, 31).density();
  EXPECT_NEAR(hmax_smooth(rho, kSOG, 0.0).value, hmax(rho, kSOG).value, 1e-9);
}

TEST(SmoothingTest, EntangledPairWithSmallBall) {
  const auto bell = quantum::maximally_entangled(2).density();
  const auto r = hmax_smooth(bell, kSO, 0.01);
  EXPECT_LE(r.value, -1.0 + 1e-9);
  EXPECT_GE(r.value, -1.2);
}

TEST(SmoothingTest, DiagonalStateMatchesClassicalPath) {
  const std::vector<double> p = {0.5, 0.25, 0.15, 0.1};
  const RegisterLayout s_only({{"S", 2}, {"O", 0}});
  for (double eps : {0.0, 0.05, 0.2}) {
    const auto r = hmax_smooth(diagonal(p, {2, 2}), s_only, eps, "S", "O");
    EXPECT_NEAR(r.value, classical_hmax_smooth(ClassicalDistribution(p), eps), 1e-6) << eps;
    if (eps > 0.0) {
      ASSERT_TRUE(r.smoothing_distance.has_value());
      EXPECT_LE(*r.smoothing_distance, eps + 1e-9);
    }
  }
}

TEST(SmoothingTest, MonotoneInEpsilon) {
  const auto rho = quantum::random_pure_state({2, 2, 2}, 44).density();
  double previous = hmax(rho, kSOG).value;
  for (double eps : {0.01, 0.05, 0.1, 0.2}) {
    const double v = hmax_smooth(rho, kSOG, eps).value;
    EXPECT_LE(v, previous + 1e-9) << eps;
    previous = v;
  }
}

TEST(SmoothingTest, MinEntropySmoothingOfPureUncorrelatedSystem) {
  const RegisterLayout s_only({{"S", 1}, {"Gamma", 0}});
  // The pure state itself has min-entropy 0; the truncated candidate keeps
  // the single atom at weight 1 - eps^2, which lifts the bound slightly.
  EXPECT_NEAR(hmin(DensityOperator::basis_state({2}, 0), s_only, "S", "Gamma").value, 0.0, 1e-12);
  const auto r = hmin_smooth(DensityOperator::basis_state({2}, 0), s_only, 0.1);
  EXPECT_NEAR(r.value, -std::log2(0.99), 1e-9);
}

TEST(SmoothingTest, DualSmoothingNegatesMaxEntropy) {
  const auto rho = quantum::random_pure_state({2, 2, 2}, 45).density();
  EXPECT_NEAR(hmin_smooth_dual(rho, kSOG, 0.05).value, -hmax_smooth(rho, kSOG, 0.05).value, 1e-12);
  EXPECT_THROW(hmin_smooth_dual(DensityOperator::maximally_mixed({2, 2, 2}), kSOG, 0.05),
               InvalidArgument);
}

TEST(ClassicalSmoothingTest, ReferenceCases) {
  EXPECT_NEAR(classical_hmax_smooth(ClassicalDistribution::uniform(16), 0.0), 4.0, 1e-12);
  // A ball that covers everything but the largest atom collapses to one atom,
  // which is then shrunk until the fidelity budget is used up.
  EXPECT_NEAR(classical_hmax_smooth(ClassicalDistribution({0.97, 0.01, 0.01, 0.01}), 0.5),
              std::log2(0.75 / 0.97), 1e-12);
  EXPECT_NEAR(classical_hmax_smooth(ClassicalDistribution({1.0}), 0.1), std::log2(0.99), 1e-12);
}

TEST(ClassicalSmoothingTest, TruncationMeetsTheFidelityBudgetExactly) {
  const std::vector<double> p = {0.4, 0.3, 0.2, 0.1};
  const auto w = truncation_weights(p, 0.3);
  double f = 0.0;
  for (size_t i = 0; i < p.size(); ++i) f += p[i] * std::sqrt(w[i]);
  EXPECT_NEAR(f, std::sqrt(1 - 0.09), 1e-12);
}

// Exact values from a multiprecision evaluation of the smoothed Renyi-1/2
// sum over binomial weight classes, Bernoulli(0.11), eps = 0.05.
TEST(AepTest, BernoulliRatesMatchMultiprecisionReference) {
  const std::vector<std::pair<int, double>> reference = {
      {1, 0.6925848422}, {10, 0.6853189891}, {20, 0.6793995815},
      {25, 0.6763468285}, {50, 0.6649714516}, {100, 0.6459365821}};
  const auto sigma = correlated_bits(0.11);
  for (const auto& [n, rate] : reference) {
    EXPECT_NEAR(aep_rate(sigma, kSO, n, 0.05), rate, 1e-9) << n;
  }
  std::vector<double> bern(1u << 20);
  for (size_t x = 0; x < bern.size(); ++x) {
    const int ones = __builtin_popcount(static_cast<unsigned>(x));
    bern[x] = std::pow(0.11, ones) * std::pow(0.89, 20 - ones);
  }
  EXPECT_NEAR(classical_hmax_smooth(ClassicalDistribution(bern), 0.05) / 20, 0.6793995815, 1e-9);
}

TEST(AepTest, RateApproachesTheConditionalEntropy) {
  const auto sigma = correlated_bits(0.11);
  const double target = binary_entropy(0.11);
  EXPECT_LT(std::abs(aep_rate(sigma, kSO, 100, 0.05) - target),
            std::abs(aep_rate(sigma, kSO, 10, 0.05) - target));
}

TEST(AepTest, TrivialSources) {
  const auto product = DensityOperator::basis_state({2, 2}, 0);
  const auto fair = correlated_bits(0.5);
  for (int n : {1, 10, 50}) {
    // Both sources are single type classes, so smoothing only rescales them
    // and the rate moves by log2(1 - eps^2) / n.
    EXPECT_NEAR(aep_rate(product, kSO, n, 0.05), std::log2(1 - 0.05 * 0.05) / n, 1e-12) << n;
    EXPECT_NEAR(aep_rate(fair, kSO, n, 0.05), 1.0 + std::log2(1 - 0.05 * 0.05) / n, 1e-9) << n;
  }
}

TEST(AepTest, QuantumPathAndCapacity) {
  const auto bell = quantum::maximally_entangled(2).density();
  const auto r = aep_rate_report(bell, kSO, 2, 0.0);
  EXPECT_NEAR(r.rate, -1.0, 1e-6);
  EXPECT_THROW(aep_rate(quantum::random_density({2, 2}, 2, 3), kSO, 8, 0.05), CapacityError);
}

TEST(ClassicalConditionalTest, ClosedForm) {
  const std::vector<double> joint = {0.445, 0.055, 0.055, 0.445};
  const double expected = std::log2(2 * std::pow(std::sqrt(0.445) + std::sqrt(0.055), 2));
  EXPECT_NEAR(classical_conditional_hmax(joint, 2, 2), expected, 1e-12);
  EXPECT_NEAR(hmax(correlated_bits(0.11), kSO).value, expected, 1e-6);
}

}  // namespace
}  // namespace negentropy::entropy
