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

#include "negentropy/errors.hpp"
#include "negentropy/quantum/ops.hpp"

namespace negentropy::quantum {
namespace {

constexpr double kTol = 1e-10;

DensityOperator qubit(int bit) { return DensityOperator::basis_state({2}, bit); }

Matrix pauli_x() {
  Matrix x = Matrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

TEST(DensityOperatorTest, RejectsNonHermitianAndBadTrace) {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  m(0, 1) = Complex(0.3, 0.0);
  EXPECT_THROW(DensityOperator(m, {2}), InvalidArgument);
  EXPECT_THROW(DensityOperator(Matrix::Identity(2, 2), {2}), InvalidArgument);
  EXPECT_THROW(DensityOperator(Matrix::Identity(2, 2) / 2.0, {3}), InvalidArgument);
}

TEST(DensityOperatorTest, PositivityIsCheckedSeparately) {
  Matrix m(2, 2);
  m << 1.2, 0.0, 0.0, -0.2;
  DensityOperator rho(m, {2});
  EXPECT_THROW(check_invariants(rho), InvalidArgument);
  EXPECT_NO_THROW(check_invariants(DensityOperator::maximally_mixed({2, 2})));
}

TEST(TensorTest, MixedTimesMixedIsMixed) {
  const auto t = tensor(DensityOperator::maximally_mixed({2}), DensityOperator::maximally_mixed({2}));
  EXPECT_EQ(t.dims(), (Dims{2, 2}));
  EXPECT_TRUE(t.matrix().isApprox(Matrix::Identity(4, 4) / 4.0, kTol));
}

TEST(TensorTest, BasisStatesFollowKroneckerOrder) {
  const auto t = tensor(qubit(0), qubit(1));
  EXPECT_TRUE(t.matrix().isApprox(DensityOperator::basis_state({2, 2}, 1).matrix(), kTol));
}

TEST(PartialTraceTest, BellMarginalIsMixed) {
  const auto bell = maximally_entangled(2).density();
  const RegisterLayout layout({{"A", 1}, {"B", 1}});
  const auto a = partial_trace(bell, layout, {"A"});
  EXPECT_TRUE(a.matrix().isApprox(Matrix::Identity(2, 2) / 2.0, kTol));
}

TEST(PartialTraceTest, ProductRecoversFactor) {
  const auto rho = random_density({2}, 2, 11);
  const auto sigma = random_density({2, 2}, 3, 12);
  const auto r = partial_trace(tensor(rho, sigma), {0});
  EXPECT_TRUE(r.matrix().isApprox(rho.matrix(), 1e-12));
  const auto s = partial_trace(tensor(rho, sigma), {1, 2});
  EXPECT_TRUE(s.matrix().isApprox(sigma.matrix(), 1e-12));
}

TEST(PartialTraceTest, ReducedStateAgreesWithDensityPath) {
  const auto psi = random_pure_state({2, 2, 2, 2}, 5);
  for (const std::vector<int>& keep : {std::vector<int>{0}, {1, 3}, {0, 2, 3}}) {
    EXPECT_TRUE(reduced_state(psi, keep).matrix().isApprox(partial_trace(psi.density(), keep).matrix(),
                                                           1e-12));
  }
}

TEST(PartialTraceTest, UnknownBlockIsAnAddressingError) {
  const RegisterLayout layout({{"S", 1}, {"O", 1}});
  EXPECT_THROW(layout.qubits("Gamma"), AddressingError);
  EXPECT_THROW(partial_trace(DensityOperator::maximally_mixed({2, 2}), layout, {"X"}), AddressingError);
}

TEST(PurifyTest, MarginalIsRecovered) {
  const auto pure = purify(qubit(0));
  EXPECT_TRUE(partial_trace(pure.density(), {0}).matrix().isApprox(qubit(0).matrix(), kTol));
  const auto mixed = purify(DensityOperator::maximally_mixed({2}));
  EXPECT_TRUE(partial_trace(mixed.density(), {0}).matrix().isApprox(Matrix::Identity(2, 2) / 2.0, kTol));
  EXPECT_NEAR(schmidt_decompose(mixed, {0}).coefficients[1], std::sqrt(0.5), kTol);
}

TEST(PurifyTest, RejectsSubnormalizedInput) {
  EXPECT_THROW(purify(DensityOperator(Matrix::Identity(2, 2) / 4.0, {2})), InvalidArgument);
}

TEST(DistanceTest, FidelityAndTraceDistanceBasics) {
  const auto rho = random_density({2, 2}, 2, 3);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  EXPECT_NEAR(trace_distance(qubit(0), qubit(1)), 1.0, kTol);
  EXPECT_NEAR(fidelity(qubit(0), qubit(1)), 0.0, 1e-9);
  EXPECT_NEAR(trace_distance(qubit(0), DensityOperator::maximally_mixed({2})), 0.5, kTol);
}

TEST(DistanceTest, PurifiedDistanceBoundsTraceDistance) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_density({2, 2}, 1 + static_cast<int>(s % 4), 100 + s);
    const auto b = random_density({2, 2}, 1 + static_cast<int>((s + 1) % 4), 200 + s);
    EXPECT_LE(trace_distance(a, b), purified_distance(a, b) + 1e-9);
  }
  // Subnormalized: the generalized fidelity counts the missing weight.
  const DensityOperator half(qubit(0).matrix() / 2.0, {2});
  EXPECT_NEAR(purified_distance(half, half), 0.0, 1e-7);
}

TEST(HaarTest, DimensionOneIsAPhase) {
  const auto u = haar_unitary(1, 4);
  ASSERT_EQ(u.rows(), 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, kTol);
}

TEST(HaarTest, DeterministicAndUnitary) {
  const auto u = haar_unitary(8, 42);
  EXPECT_EQ(u, haar_unitary(8, 42));
  EXPECT_FALSE(u.isApprox(haar_unitary(8, 43)));
  EXPECT_TRUE((u.adjoint() * u).isApprox(Matrix::Identity(8, 8), 1e-12));
}

TEST(HaarTest, FirstMomentMatchesUniformMeasure) {
  const int samples = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double v = std::norm(haar_unitary(4, static_cast<std::uint64_t>(k))(0, 0));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  EXPECT_NEAR(mean, 0.25, 3 * se);
}

TEST(ApplyUnitaryTest, NotFlipsAndIdentityPreserves) {
  const RegisterLayout layout({{"S", 1}, {"O", 1}});
  const auto rho = tensor(qubit(1), qubit(1));
  const auto flipped = apply_unitary(rho, pauli_x(), layout, "S");
  EXPECT_TRUE(flipped.matrix().isApprox(tensor(qubit(0), qubit(1)).matrix(), kTol));
  const auto same = apply_unitary(rho, Matrix::Identity(2, 2), layout, "O");
  EXPECT_TRUE(same.matrix().isApprox(rho.matrix(), kTol));
}

TEST(ApplyUnitaryTest, PureAndMixedPathsAgree) {
  const auto psi = random_pure_state({2, 2, 2}, 9);
  const auto u = haar_unitary(4, 10);
  const auto a = apply_unitary(psi, u, {2, 0}).density();
  const auto b = apply_unitary(psi.density(), u, {2, 0});
  EXPECT_TRUE(a.matrix().isApprox(b.matrix(), 1e-12));
}

TEST(ReplaceTest, InsertsReplacementOnTargets) {
  const auto bell = maximally_entangled(2).density();
  const auto out = replace_subsystems(bell, {0}, qubit(0));
  EXPECT_TRUE(out.matrix().isApprox(tensor(qubit(0), DensityOperator::maximally_mixed({2})).matrix(), kTol));
}

TEST(SchmidtTest, BellAndProduct) {
  const auto bell = schmidt_decompose(maximally_entangled(2), {0});
  ASSERT_GE(bell.coefficients.size(), 2u);
  EXPECT_NEAR(bell.coefficients[0], std::sqrt(0.5), kTol);
  EXPECT_NEAR(bell.coefficients[1], std::sqrt(0.5), kTol);
  const auto product = schmidt_decompose(PureState::basis_state({2, 2}, 2), {0});
  EXPECT_NEAR(product.coefficients[0], 1.0, kTol);
  for (size_t i = 1; i < product.coefficients.size(); ++i) EXPECT_NEAR(product.coefficients[i], 0.0, kTol);
}

TEST(GibbsTest, InfiniteAndZeroTemperature) {
  const auto hot = gibbs_state({0.0, 1.0, 3.0}, 0.0);
  EXPECT_TRUE(hot.matrix().isApprox(Matrix::Identity(3, 3) / 3.0, kTol));
  const auto cold = gibbs_state({0.0, 1.0, 3.0}, 200.0);
  EXPECT_NEAR(cold.matrix()(0, 0).real(), 1.0, 1e-12);
  const auto two = gibbs_state({0.0, 1.0}, 1.0);
  EXPECT_NEAR(two.matrix()(1, 1).real(), 1.0 / (1.0 + std::exp(1.0)), 1e-14);
}

}  // namespace
}  // namespace negentropy::quantum
