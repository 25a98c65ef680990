#include <gtest/gtest.h>

#include <random>

#include "pearl/complexes.hpp"
#include "support/oracles.hpp"

using namespace pearl;

namespace {

PearlComplex circle(RingMode mode) {
  GradedBasis basis({{"x1", 1}, {"x0", 0}}, 1, true);
  return PearlComplex::from_terms(basis, 1, 2, mode, {{1, 0, 1}});
}

PearlComplex rpn_wide(int n, RingMode mode) {
  std::vector<Generator> gens;
  for (int i = n; i >= 0; --i) gens.push_back({"x" + std::to_string(i), i});
  return PearlComplex(GradedBasis(gens, n, true), n, n + 1, mode);
}

}  // namespace

TEST(CheckDifferential, CircleIsValid) {
  auto rep = check_differential(circle(RingMode::LambdaPlus));
  EXPECT_TRUE(rep.ok()) << rep.to_text();
}

TEST(CheckDifferential, ZeroDifferentialIsValid) {
  EXPECT_TRUE(check_differential(rpn_wide(3, RingMode::Lambda)).ok());
}

TEST(CheckDifferential, DegreeZeroEntryRejected) {
  GradedBasis basis({{"x1", 0}, {"x0", 0}});
  auto c = PearlComplex::from_terms(basis, 1, 2, RingMode::Lambda, {{1, 0, 0}});
  auto rep = check_differential(c);
  EXPECT_FALSE(rep.passed("homogeneity"));
  EXPECT_EQ(rep.status(), Outcome::Fail);
}

TEST(CheckDifferential, NonMonomialEntryRejected) {
  GradedBasis basis({{"a", 1}, {"b", 0}});
  auto diff = zero_laurent_matrix(2, 2, 2);
  diff[0][1] = GradedLaurent::parse("t + t^2", 2);
  PearlComplex c(basis, 1, 2, RingMode::LambdaPlus, diff);
  EXPECT_FALSE(check_differential(c).passed("homogeneity"));
}

TEST(CheckDifferential, DSquaredNonzeroDetected) {
  GradedBasis basis({{"a", 2}, {"b", 1}, {"c", 0}});
  auto c = PearlComplex::from_terms(basis, 2, 2, RingMode::Lambda, {{0, 1, 0}, {1, 2, 0}});
  auto rep = check_differential(c);
  EXPECT_FALSE(rep.passed("d_squared"));
  EXPECT_FALSE(rep.passed("split_identities"));
}

TEST(CheckDifferential, NegativeExponentInLambdaPlus) {
  GradedBasis basis({{"a", 0}, {"b", 1}});
  auto c = PearlComplex::from_terms(basis, 1, 2, RingMode::LambdaPlus, {{1, 0, -1}});
  EXPECT_FALSE(check_differential(c).passed("positivity"));
}

TEST(CheckDifferential, ShapeAndRingErrors) {
  GradedBasis basis({{"a", 0}});
  EXPECT_THROW(PearlComplex(basis, 1, 2, RingMode::Lambda, zero_laurent_matrix(2, 2, 2)), PreconditionError);
  EXPECT_THROW(PearlComplex(basis, 1, 2, RingMode::Lambda, zero_laurent_matrix(1, 1, 3)), IncompatibleRingError);
  EXPECT_THROW(PearlComplex(basis, 1, 1, RingMode::Lambda), PreconditionError);
  EXPECT_THROW(GradedBasis({{"a", 0}, {"a", 1}}), PreconditionError);
}

TEST(SplitDifferential, Circle) {
  auto parts = split_differential(circle(RingMode::LambdaPlus));
  ASSERT_EQ(parts.size(), 2U);
  EXPECT_TRUE(parts[0].is_zero());
  EXPECT_TRUE(parts[1].get(0, 1));
  EXPECT_EQ(rank(parts[1]), 1U);
}

TEST(SplitDifferential, MorseOnly) {
  GradedBasis basis({{"a", 1}, {"b", 0}});
  auto c = PearlComplex::from_terms(basis, 1, 2, RingMode::LambdaPlus, {{0, 1, 0}});
  auto parts = split_differential(c);
  ASSERT_EQ(parts.size(), 1U);
  EXPECT_EQ(reassemble(parts, 2), c.diff());
}

TEST(SplitDifferential, HigherTerm) {
  GradedBasis basis({{"x", 0}, {"y", 3}});
  auto c = PearlComplex::from_terms(basis, 3, 2, RingMode::LambdaPlus, {{0, 1, 2}});
  auto parts = split_differential(c);
  ASSERT_EQ(parts.size(), 3U);
  EXPECT_TRUE(parts[0].is_zero());
  EXPECT_TRUE(parts[1].is_zero());
  EXPECT_TRUE(parts[2].get(1, 0));
  EXPECT_EQ(reassemble(parts, 2), c.diff());
}

TEST(SplitDifferential, NegativeExponentUndefined) {
  GradedBasis basis({{"a", 0}, {"b", 1}});
  auto c = PearlComplex::from_terms(basis, 1, 2, RingMode::Lambda, {{1, 0, -1}});
  EXPECT_THROW(split_differential(c), SplitUndefinedError);
}

TEST(HomologyLambda, CircleVanishes) {
  auto h = homology_over_Lambda(circle(RingMode::Lambda));
  EXPECT_TRUE(h.is_zero());
  for (int i = -5; i <= 5; ++i) EXPECT_EQ(h.rank(i), 0);
}

TEST(HomologyLambda, RpnWide) {
  for (int n = 1; n <= 6; ++n) {
    auto h = homology_over_Lambda(rpn_wide(n, RingMode::Lambda));
    for (int i = -2 * n; i <= 2 * n; ++i) EXPECT_EQ(h.rank(i), 1) << "n=" << n << " i=" << i;
  }
}

TEST(HomologyLambda, SingleGeneratorPeriodic) {
  PearlComplex c(GradedBasis({{"x", 1}}), 1, 2, RingMode::Lambda);
  auto h = homology_over_Lambda(c);
  for (int i = -4; i <= 4; ++i) EXPECT_EQ(h.rank(i), (i % 2 != 0) ? 1 : 0);
}

TEST(HomologyLambda, PeriodicAcrossWindows) {
  std::mt19937 rng(21);
  oracle::RandomComplexOptions opt;
  opt.mode = RingMode::Lambda;
  for (int trial = 0; trial < 50; ++trial) {
    auto c = oracle::random_valid_complex(rng, opt);
    auto h = homology_over_Lambda(c);
    // Compare the window against direct slice ranks in the next window.
    for (int i = 0; i < c.min_maslov(); ++i) {
      std::int64_t j = i + c.min_maslov();
      auto direct = static_cast<std::int64_t>(c.degree_slice(j).size()) -
                    static_cast<std::int64_t>(rank(c.slice_differential(j))) -
                    static_cast<std::int64_t>(rank(c.slice_differential(j + 1)));
      EXPECT_EQ(direct, h.rank(i));
    }
  }
}

TEST(HomologyLambdaPlus, CircleTorsion) {
  auto h = homology_over_Lambda_plus(circle(RingMode::LambdaPlus));
  EXPECT_EQ(h.total_rank(), 0);
  ASSERT_EQ(h.torsion.size(), 1U);
  EXPECT_EQ(h.torsion[0], (TorsionSummand{1, 1}));
  EXPECT_EQ(h.z2_dimension(1), 1);
  for (int i = -6; i <= 0; ++i) EXPECT_EQ(h.z2_dimension(i), 0);
}

TEST(HomologyLambdaPlus, ZeroDifferentialIsFree) {
  auto h = homology_over_Lambda_plus(rpn_wide(4, RingMode::LambdaPlus));
  EXPECT_TRUE(h.torsion.empty());
  for (int i = 0; i <= 4; ++i) EXPECT_EQ(h.rank(i), 1);
}

TEST(HomologyLambdaPlus, PivotValuationTwo) {
  GradedBasis basis({{"x", 3}, {"y", 0}});
  auto c = PearlComplex::from_terms(basis, 3, 2, RingMode::LambdaPlus, {{1, 0, 2}});
  auto h = homology_over_Lambda_plus(c);
  ASSERT_EQ(h.torsion.size(), 1U);
  EXPECT_EQ(h.torsion[0], (TorsionSummand{3, 2}));
  EXPECT_EQ(h.total_rank(), 0);
}

TEST(HomologyLambdaPlus, MatchesSliceOracle) {
  std::mt19937 rng(2024);
  oracle::RandomComplexOptions opt;
  int with_torsion = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = oracle::random_valid_complex(rng, opt);
    auto h = homology_over_Lambda_plus(c);
    with_torsion += !h.torsion.empty();
    oracle::SliceOracle slices(c);
    const std::int64_t lo = c.basis().min_degree() - 8 * c.min_maslov();
    for (std::int64_t i = lo; i <= c.basis().max_degree() + 1; ++i) {
      ASSERT_EQ(h.z2_dimension(i), slices.dimension(i)) << "trial " << trial << " degree " << i;
      for (std::int64_t k = 1; k <= 4; ++k) {
        ASSERT_EQ(oracle::predicted_t_power_rank(h, i, k), slices.t_power_rank(i, k))
            << "trial " << trial << " degree " << i << " k " << k;
      }
    }
  }
  EXPECT_GT(with_torsion, 20);
}

TEST(HomologyLambdaPlus, RequiresValidComplex) {
  GradedBasis basis({{"a", 2}, {"b", 1}, {"c", 0}});
  auto c = PearlComplex::from_terms(basis, 2, 2, RingMode::LambdaPlus, {{0, 1, 0}, {1, 2, 0}});
  EXPECT_THROW(homology_over_Lambda_plus(c), PreconditionError);
  EXPECT_THROW(homology_over_Lambda(circle(RingMode::LambdaPlus)), PreconditionError);
}

TEST(FundamentalClass, Survives) {
  EXPECT_TRUE(fundamental_class_survives(circle(RingMode::LambdaPlus)));
  EXPECT_TRUE(fundamental_class_survives(rpn_wide(3, RingMode::LambdaPlus)));
  GradedBasis two_max({{"a", 2}, {"b", 2}, {"c", 0}}, 2, false);
  EXPECT_THROW(fundamental_class_survives(PearlComplex(two_max, 2, 2, RingMode::LambdaPlus)), PreconditionError);
  EXPECT_THROW(GradedBasis({{"a", 2}, {"b", 2}}, 2, true), PreconditionError);
}

TEST(VirtualDimension, Formulas) {
  EXPECT_EQ(virtual_dimension({DimensionFlavor::Prl, 1, 0, 0, 0, 1, 2}), 0);
  EXPECT_EQ(virtual_dimension({DimensionFlavor::Prl, 0, 1, 0, 2, 1, 2}), 0);
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(virtual_dimension({DimensionFlavor::Mod, n, n, 2 * n, 0, n, 2}), 0);
  EXPECT_EQ(virtual_dimension({DimensionFlavor::Prod, 2, 2, 2, 0, 2, 2}), 0);
  EXPECT_EQ(virtual_dimension({DimensionFlavor::Inc, 1, 0, 3, 2, 2, 2}), 0);
  EXPECT_THROW(virtual_dimension({DimensionFlavor::Prl, 0, 1, 0, 3, 1, 2}), InvalidClassError);
  EXPECT_THROW(virtual_dimension({DimensionFlavor::Prl, 0, 1, 0, -2, 1, 2}), InvalidClassError);
}

TEST(ChainMap, IdentityAndRenaming) {
  auto c = circle(RingMode::LambdaPlus);
  auto id = zero_laurent_matrix(2, 2, 2);
  id[0][0] = GradedLaurent::one(2);
  id[1][1] = GradedLaurent::one(2);
  EXPECT_TRUE(verify_chain_map(c, c, id).ok());
  EXPECT_FALSE(verify_chain_map(c, c, c.diff()).passed("degree"));

  GradedBasis swapped({{"y0", 0}, {"y1", 1}}, 1, true);
  auto renamed = PearlComplex::from_terms(swapped, 1, 2, RingMode::LambdaPlus, {{0, 1, 1}});
  auto perm = zero_laurent_matrix(2, 2, 2);
  perm[1][0] = GradedLaurent::one(2);
  perm[0][1] = GradedLaurent::one(2);
  EXPECT_TRUE(verify_chain_map(c, renamed, perm).ok());
}

TEST(ChainMap, NonCommutingDetected) {
  auto c = circle(RingMode::LambdaPlus);
  auto m = zero_laurent_matrix(2, 2, 2);
  m[1][1] = GradedLaurent::one(2);  // keeps x0, kills x1
  auto rep = verify_chain_map(c, c, m);
  EXPECT_TRUE(rep.passed("degree"));
  EXPECT_FALSE(rep.passed("commutes"));
}

TEST(Specialization, CircleAndRandom) {
  auto rep = specialization_check(circle(RingMode::LambdaPlus));
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_EQ(rep.data()["sigma_homology_rank"]["1"], 1);
  std::mt19937 rng(3);
  oracle::RandomComplexOptions opt;
  for (int trial = 0; trial < 50; ++trial) {
    EXPECT_TRUE(specialization_check(oracle::random_valid_complex(rng, opt)).ok());
  }
}

TEST(SpectralSequence, Circle) {
  auto c = circle(RingMode::LambdaPlus);
  auto ss = spectral_sequence(c, 3);
  // E⁰: Morse complex of S¹ in filtration 0.
  EXPECT_EQ(ss.pages[0].dimension(0, 1), 1U);
  EXPECT_EQ(ss.pages[0].dimension(0, 0), 1U);
  EXPECT_EQ(ss.pages[1].dimension(0, 0), 1U);
  EXPECT_EQ(ss.pages[2].dimension(0, 0), 0U);
  EXPECT_EQ(ss.pages[2].dimension(0, 1), 1U);
  ASSERT_TRUE(ss.collapse_page.has_value());
  EXPECT_EQ(*ss.collapse_page, 2);
  EXPECT_EQ(ss.infinity.total(), 1U);
  auto rep = check_spectral_sequence(c, ss);
  EXPECT_TRUE(rep.ok()) << rep.to_text();
}

TEST(SpectralSequence, WideRpnCollapsesAtZero) {
  auto c = rpn_wide(3, RingMode::LambdaPlus);
  auto ss = spectral_sequence(c, 2);
  ASSERT_TRUE(ss.collapse_page.has_value());
  EXPECT_EQ(*ss.collapse_page, 0);
  EXPECT_TRUE(check_spectral_sequence(c, ss).ok());
}

TEST(SpectralSequence, MorseOnlyCollapsesByPageOne) {
  GradedBasis basis({{"a", 2}, {"b", 1}, {"c", 1}, {"d", 0}}, 2, true);
  auto c = PearlComplex::from_terms(basis, 2, 2, RingMode::LambdaPlus, {{1, 3, 0}, {2, 3, 0}});
  auto ss = spectral_sequence(c, 2);
  ASSERT_TRUE(ss.collapse_page.has_value());
  EXPECT_LE(*ss.collapse_page, 1);
  EXPECT_TRUE(check_spectral_sequence(c, ss).ok());
}

TEST(SpectralSequence, RandomComplexesConsistent) {
  std::mt19937 rng(555);
  oracle::RandomComplexOptions opt;
  opt.max_generators = 5;
  for (int trial = 0; trial < 40; ++trial) {
    auto c = oracle::random_valid_complex(rng, opt);
    auto ss = spectral_sequence(c, 4);
    auto rep = check_spectral_sequence(c, ss);
    EXPECT_TRUE(rep.ok()) << "trial " << trial << "\n" << rep.to_text();
  }
}

TEST(CheckDifferential, SquareZeroIffSplitIdentities) {
  std::mt19937 rng(909);
  oracle::RandomComplexOptions opt;
  opt.density = 0.5;
  int valid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto c = oracle::random_graded_complex(rng, opt);
    auto rep = check_differential(c);
    bool naive = oracle::d_squared_zero_naive(c);
    EXPECT_EQ(rep.passed("d_squared"), naive);
    EXPECT_EQ(rep.passed("split_identities"), naive);
    valid += naive;
  }
  EXPECT_GT(valid, 0);
  EXPECT_LT(valid, 300);
}

TEST(SpectralSequence, MorseDifferentialReachingBottomOfWindow) {
  // g4·t² sits in the lowest computed degree and maps below the window.
  GradedBasis basis({{"g0", 0}, {"g1", 2}, {"g2", 3}, {"g3", 0}, {"g4", 4}}, 4);
  auto c = PearlComplex::from_terms(basis, 4, 4, RingMode::LambdaPlus, {{4, 2, 0}});
  auto rep = check_spectral_sequence(c, spectral_sequence(c, 2));
  EXPECT_TRUE(rep.ok()) << rep.to_text();
}
