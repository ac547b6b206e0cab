// Copyright 2026 The qfgr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

namespace qfgr {
namespace {

using testing::golden_system;
using testing::hermitian_2x2;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<SystemSpec> small_fixtures() {
  std::vector<SystemSpec> specs;
  for (KernelMode mode : {KernelMode::kGaussian, KernelMode::kSharp}) {
    specs.push_back(golden_system(mode));
    specs.push_back(testing::two_level(0.0, 1.0, hermitian_2x2(0.2, {0.1, 0.05}, -0.1),
                                       DeltaKernel{mode, 0.05}));
    specs.push_back(testing::two_level(0.3, 0.32, hermitian_2x2(0.05, {0.2, -0.1}, 0.1),
                                       DeltaKernel{mode, 0.05}));
    for (std::uint64_t seed = 100; seed < 106; ++seed) {
      specs.push_back(random_system(seed, 2 + static_cast<int>(seed % 3), 0.3, 0.2, DeltaKernel{mode, 0.1}));
    }
  }
  return specs;
}

TEST(DeltaKernel, ClosedForms) {
  const DeltaKernel gaussian{KernelMode::kGaussian, 0.05};
  const double peak = 1.0 / (std::sqrt(kTwoPi) * 0.05);
  EXPECT_NEAR(delta_kernel(0.0, gaussian), 7.9788456080286538, 1e-12);
  EXPECT_NEAR(delta_kernel(0.05, gaussian), std::exp(-0.5) * peak, 1e-12);
  EXPECT_EQ(delta_kernel(0.1, DeltaKernel{KernelMode::kSharp, 0.05}), 0.0);
  EXPECT_EQ(delta_kernel(0.05, DeltaKernel{KernelMode::kSharp, 0.05}), peak);
  EXPECT_EQ(delta_kernel(-0.03, DeltaKernel{KernelMode::kSharp, 0.05}), peak);
}

TEST(ConventionalRates, ZeroInteraction) {
  const SystemSpec spec({0.0, 0.4, 1.0}, Matrix::Zero(3, 3), DeltaKernel{});
  for (const Complex& p : conventional_rates(spec).entries()) EXPECT_EQ(p, Complex(0.0, 0.0));
  for (const Complex& p : symmetrized_rates(spec).entries()) EXPECT_EQ(p, Complex(0.0, 0.0));
}

TEST(ConventionalRates, GoldenEntryByHand) {
  const SystemSpec spec = golden_system();
  const Complex h01 = spec.interaction()(0, 1);
  const double expected_delta =
      std::exp(-0.5 * std::pow((spec.energy(0) - spec.energy(1)) / 0.05, 2)) / (std::sqrt(kTwoPi) * 0.05);
  const Complex expected = kTwoPi * h01 * std::conj(h01) * expected_delta;
  EXPECT_NEAR(std::abs(conventional_rates(spec)(0, 0, 1, 1) - expected), 0.0, 1e-15);
}

TEST(SymmetrizedRates, GoldenEntryByHand) {
  const SystemSpec spec = golden_system();
  const Matrix& h = spec.interaction();
  // (l1, l2, m1, m2) = (0, 1, 1, 0): average energies (e0 + e1)/2 on both sides.
  const double argument = (spec.energy(0) + spec.energy(1)) / 2 - (spec.energy(1) + spec.energy(0)) / 2;
  const Complex expected = kTwoPi * h(0, 1) * std::conj(h(1, 0)) *
                           (std::exp(-0.5 * argument * argument / 0.0025) / (std::sqrt(kTwoPi) * 0.05));
  EXPECT_NEAR(std::abs(symmetrized_rates(spec)(0, 1, 1, 0) - expected), 0.0, 1e-14);
}

TEST(SymmetrizedRates, DiagonalSliceIsGoldenRule) {
  for (const SystemSpec& spec : small_fixtures()) {
    const RealMatrix fgr = fgr_rates(spec);
    const RateTensor conventional = conventional_rates(spec);
    const RateTensor symmetrized = symmetrized_rates(spec);
    for (int l = 0; l < spec.dimension(); ++l) {
      for (int m = 0; m < spec.dimension(); ++m) {
        EXPECT_EQ(symmetrized(l, l, m, m), Complex(fgr(l, m), 0.0));
        EXPECT_EQ(conventional(l, l, m, m), Complex(fgr(l, m), 0.0));
        EXPECT_GE(fgr(l, m), 0.0);
      }
    }
  }
}

TEST(SymmetrizedRates, ConjugationSymmetry) {
  for (const SystemSpec& spec : small_fixtures()) {
    const RateTensor p = symmetrized_rates(spec);
    const int n = spec.dimension();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            ASSERT_LE(std::abs(p(a, b, c, d) - std::conj(p(b, a, d, c))), 1e-12);
          }
  }
}

TEST(Rates, DegenerateSpectrumCollapses) {
  const SystemSpec spec = random_system(8, 4, 1.0, 0.2, DeltaKernel{});
  const SystemSpec flat(std::vector<double>(4, 0.7), spec.interaction(), spec.kernel());
  const RateTensor conventional = conventional_rates(flat);
  const RateTensor symmetrized = symmetrized_rates(flat);
  EXPECT_EQ(conventional.entries(), symmetrized.entries());
  const double peak = delta_kernel(0.0, flat.kernel());
  const Matrix& h = flat.interaction();
  EXPECT_NEAR(std::abs(conventional(1, 2, 3, 0) - kTwoPi * h(1, 3) * std::conj(h(2, 0)) * peak), 0.0, 1e-15);
}

TEST(RatesToSuperoperator, ZeroRatesGiveZero) {
  const RateTensor zero(RateFlavor::kConventional, 3);
  EXPECT_EQ(max_abs(rates_to_superoperator(zero).matrix()), 0.0);
}

TEST(RatesToSuperoperator, MatchesDirectSummation) {
  for (const SystemSpec& spec : small_fixtures()) {
    for (const RateTensor& rates : {conventional_rates(spec), symmetrized_rates(spec)}) {
      const Superoperator s = rates_to_superoperator(rates);
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Matrix rho = random_density(seed, spec.dimension()).data();
        EXPECT_LT(max_abs(s.apply(rho) - testing::direct_rate_sum(rates, rho)), 1e-13);
      }
      // Non-Hermitian operand: linearity of the H.c. convention.
      const Matrix x = testing::unit(spec.dimension(), 0, 1);
      EXPECT_LT(max_abs(s.apply(x) - testing::direct_rate_sum(rates, x)), 1e-13);
    }
  }
}

TEST(RatesToSuperoperator, MatchesOperatorDoubleCommutators) {
  for (const SystemSpec& spec : small_fixtures()) {
    const Superoperator conventional = rates_to_superoperator(conventional_rates(spec));
    const Superoperator symmetrized = rates_to_superoperator(symmetrized_rates(spec));
    for (std::uint64_t seed : {4u, 5u}) {
      const Matrix rho = random_density(seed, spec.dimension()).data();
      EXPECT_LT(max_abs(conventional.apply(rho) - testing::conventional_double_commutator(spec, rho)), 1e-13);
      EXPECT_LT(max_abs(symmetrized.apply(rho) - testing::symmetrized_double_commutator(spec, rho)), 1e-13);
    }
  }
}

TEST(Superoperator, TraceAndHermiticityPreservedForAllGenerators) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const DeltaKernel kernel{seed % 2 ? KernelMode::kSharp : KernelMode::kGaussian, 0.05};
    const SystemSpec spec = random_system(seed, 2 + static_cast<int>(seed % 5), 1.0, 0.2, kernel);
    for (GeneratorKind kind : {GeneratorKind::kExact, GeneratorKind::kConventional,
                               GeneratorKind::kQfgrRates, GeneratorKind::kQfgrLindblad}) {
      for (bool coherent : {false, true}) {
        const Superoperator s = build_generator(spec, kind, coherent);
        ASSERT_LT(s.trace_defect(), 1e-12) << to_string(kind) << " seed " << seed;
        ASSERT_LT(s.hermiticity_defect(), 1e-12) << to_string(kind) << " seed " << seed;
      }
    }
  }
}

TEST(Superoperator, ZeroInteractionDissipatorsVanish) {
  const SystemSpec spec({0.0, 0.5, 0.9}, Matrix::Zero(3, 3), DeltaKernel{KernelMode::kSharp, 0.05});
  for (GeneratorKind kind : {GeneratorKind::kConventional, GeneratorKind::kQfgrRates,
                             GeneratorKind::kQfgrLindblad}) {
    EXPECT_EQ(max_abs(build_generator(spec, kind, false).matrix()), 0.0) << to_string(kind);
  }
  EXPECT_THROW(build_generator(spec, GeneratorKind::kBoltzmann, false), ParameterError);
}

TEST(LindbladFamily, TwoLevelNondegenerateSharpClasses) {
  const SystemSpec spec = testing::two_level(0.0, 1.0, hermitian_2x2(0.2, {0.1, 0.05}, -0.1),
                                             DeltaKernel{KernelMode::kSharp, 0.05});
  const LindbladFamily family = lindblad_family(spec);
  ASSERT_EQ(family.terms.size(), 3u);
  EXPECT_TRUE(family.exact);
  // Half differences -1/2, 0, +1/2.
  using Pairs = std::vector<std::pair<int, int>>;
  EXPECT_EQ(family.classes[0], (Pairs{{0, 1}}));
  EXPECT_EQ(family.classes[1], (Pairs{{0, 0}, {1, 1}}));
  EXPECT_EQ(family.classes[2], (Pairs{{1, 0}}));
  EXPECT_DOUBLE_EQ(family.terms[0].omega, 0.5);
  EXPECT_DOUBLE_EQ(family.terms[2].omega, -0.5);
}

TEST(LindbladFamily, DegenerateSpectrumIsSingleClassProportionalToInteraction) {
  const SystemSpec base = random_system(21, 3, 1.0, 0.2, DeltaKernel{KernelMode::kSharp, 0.05});
  const SystemSpec spec(std::vector<double>(3, 0.25), base.interaction(), base.kernel());
  const LindbladFamily family = lindblad_family(spec);
  ASSERT_EQ(family.terms.size(), 1u);
  EXPECT_EQ(family.classes[0].size(), 9u);
  const double amplitude = std::sqrt(kTwoPi * delta_kernel(0.0, spec.kernel()));
  EXPECT_LT(max_abs(family.terms[0].op - amplitude * spec.interaction()), 1e-15);
}

TEST(LindbladFamily, AdjointPairsOppositeFrequencies) {
  const LindbladFamily family = lindblad_family(golden_system(KernelMode::kSharp));
  for (const LindbladTerm& term : family.terms) {
    const auto partner = std::find_if(family.terms.begin(), family.terms.end(), [&](const LindbladTerm& t) {
      return std::abs(t.omega + term.omega) < 1e-12;
    });
    ASSERT_NE(partner, family.terms.end());
    EXPECT_LT(max_abs(partner->op - term.op.adjoint()), 1e-15);
  }
}

TEST(LindbladFamily, GoldenSharpOverlapIsFlagged) {
  // Levels 2 and 3 sit 0.094 apart, so with eta = 0.05 the zero-frequency
  // class chains into its neighbours.
  EXPECT_FALSE(lindblad_family(golden_system(KernelMode::kSharp)).exact);
  EXPECT_FALSE(lindblad_family(golden_system(KernelMode::kGaussian)).exact);
}

TEST(LindbladFamily, SharpFamilyEqualsSymmetrizedRateGenerator) {
  const SystemSpec golden = golden_system();
  std::vector<SystemSpec> specs = {
      SystemSpec(golden.energies(), golden.interaction(), DeltaKernel{KernelMode::kSharp, 0.02}),
      testing::two_level(0.0, 1.0, hermitian_2x2(0.2, {0.1, 0.05}, -0.1), DeltaKernel{KernelMode::kSharp, 0.05}),
      SystemSpec(std::vector<double>(3, 0.1), random_system(4, 3, 1.0, 0.2, DeltaKernel{}).interaction(),
                 DeltaKernel{KernelMode::kSharp, 0.05}),
  };
  for (const SystemSpec& spec : specs) {
    const LindbladFamily family = lindblad_family(spec);
    ASSERT_TRUE(family.exact);
    const Matrix difference = lindblad_superoperator(family, spec.dimension()).matrix() -
                              rates_to_superoperator(symmetrized_rates(spec)).matrix();
    EXPECT_LT(max_abs(difference), 1e-12);
  }
}

TEST(LindbladSuperoperator, EmptyFamilyIsZero) {
  EXPECT_EQ(max_abs(lindblad_superoperator(LindbladFamily{}, 3).matrix()), 0.0);
}

TEST(LindbladSuperoperator, SingleHermitianOperatorExpansion) {
  const Matrix l = hermitian_2x2(0.7, {0.3, -0.2}, -0.4);
  LindbladFamily family;
  family.terms.push_back({0.0, l});
  const Superoperator s = lindblad_superoperator(family, 2);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Matrix rho = random_density(seed, 2).data();
    const Matrix expected = -0.5 * (l * l * rho - 2.0 * l * rho * l + rho * l * l);
    EXPECT_LT(max_abs(s.apply(rho) - expected), 1e-15);
  }
}

TEST(CoherentLiouvillian, CommutingStatesAreStationary) {
  const SystemSpec spec({0.0, 0.4, 1.3}, Matrix::Zero(3, 3), DeltaKernel{});
  const Matrix rho = Matrix(RealVector(RealVector::LinSpaced(3, 0.2, 0.5)).cast<Complex>().asDiagonal());
  EXPECT_EQ(max_abs(coherent_liouvillian(spec, false).apply(rho)), 0.0);
}

TEST(CoherentLiouvillian, FreePrecessionOfTwoLevelCoherence) {
  const SystemSpec spec({0.0, 1.0}, Matrix::Zero(2, 2), DeltaKernel{}, 2.0);
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const Matrix rate = coherent_liouvillian(spec, false).apply(plus);
  // d rho01/dt = -(i/hbar)(e0 - e1) rho01
  EXPECT_NEAR(std::abs(rate(0, 1) - Complex(0.0, 0.5) * 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rate(0, 0)), 0.0, 1e-15);
  // |rho01| stays constant: the rate is orthogonal to rho01.
  EXPECT_NEAR((std::conj(plus(0, 1)) * rate(0, 1)).real(), 0.0, 1e-15);
}

TEST(CoherentLiouvillian, GoldenSpectrumIsImaginary) {
  const Superoperator s = coherent_liouvillian(golden_system(), true);
  Eigen::ComplexEigenSolver<Matrix> solver(s.matrix(), false);
  EXPECT_LT(solver.eigenvalues().real().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FgrRates, SymmetricAndZeroForZeroCoupling) {
  const RealMatrix p = fgr_rates(golden_system());
  EXPECT_LT((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-15);
  const SystemSpec zero({0.0, 1.0}, Matrix::Zero(2, 2), DeltaKernel{});
  EXPECT_EQ(fgr_rates(zero).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BoltzmannRhs, UniformDistributionIsStationary) {
  const RealMatrix p = fgr_rates(golden_system());
  EXPECT_LT(boltzmann_rhs(p, RealVector::Constant(4, 0.25)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BoltzmannRhs, SingleSourceFlow) {
  RealMatrix p(2, 2);
  p << 0.0, 0.3, 0.3, 0.0;
  const RealVector rate = boltzmann_rhs(p, RealVector::Unit(2, 0));
  EXPECT_DOUBLE_EQ(rate(0), -0.3);
  EXPECT_DOUBLE_EQ(rate(1), 0.3);
}

TEST(BoltzmannRhs, GoldenMatchesBruteForce) {
  const RealMatrix p = fgr_rates(golden_system());
  const RealVector f = random_density(17, 4).data().diagonal().real();
  const RealVector rate = boltzmann_rhs(p, f);
  EXPECT_LT((rate - testing::brute_boltzmann(p, f)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT(std::abs(rate.sum()), 1e-13);
  EXPECT_THROW(boltzmann_rhs(p, RealVector::Zero(3)), DimensionError);
}

TEST(GeneratorKind, NamesRoundTrip) {
  for (const char* name : {"exact", "conventional", "qfgr-rates", "qfgr-lindblad", "boltzmann"}) {
    EXPECT_EQ(to_string(generator_kind_from_string(name)), name);
  }
  EXPECT_THROW(generator_kind_from_string("redfield"), ParameterError);
}

}  // namespace
}  // namespace qfgr
