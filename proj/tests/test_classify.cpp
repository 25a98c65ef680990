#include <gtest/gtest.h>

#include <algorithm>

#include "pearl/classify.hpp"
#include "pearl/rings.hpp"
#include "support/oracles.hpp"

using namespace pearl;
using namespace pearl::classify;

namespace {

ClassificationProblem plain(std::vector<int> betti, int N) {
  ClassificationProblem p;
  p.name = "test";
  p.n = static_cast<int>(betti.size()) - 1;
  p.betti = std::move(betti);
  p.candidate_N = {N};
  return p;
}

std::vector<std::array<std::int64_t, 3>> entries_of(const DifferentialProfile& prof) {
  std::vector<std::array<std::int64_t, 3>> out;
  for (const auto& s : prof.entries) {
    out.push_back({static_cast<std::int64_t>(s.from), static_cast<std::int64_t>(s.to), s.j});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::int64_t> ranks_of(const DifferentialProfile& prof) {
  std::vector<std::int64_t> r;
  for (std::int64_t i = 0; i < prof.N; ++i) r.push_back(prof.qh.rank(i));
  return r;
}

}  // namespace

TEST(Problem, ValidateRejectsBadInput) {
  auto p = plain({1, 1}, 2);
  EXPECT_NO_THROW(p.validate());
  auto q = p;
  q.betti = {0, 1};
  EXPECT_THROW(q.validate(), PreconditionError);
  q = p;
  q.betti = {1, -1};
  EXPECT_THROW(q.validate(), PreconditionError);
  q = p;
  q.betti = {1, 1, 1};
  EXPECT_THROW(q.validate(), PreconditionError);
  q = p;
  q.candidate_N = {1};
  EXPECT_THROW(q.validate(), PreconditionError);
  q = p;
  q.candidate_N.clear();
  EXPECT_THROW(q.validate(), PreconditionError);
}

TEST(BettiBasis, NamesAndOrder) {
  auto b = betti_basis({1, 2, 0, 1}, 3);
  ASSERT_EQ(b.size(), 4U);
  EXPECT_EQ(b.name(0), "x3");
  EXPECT_EQ(b.name(1), "x1_1");
  EXPECT_EQ(b.name(2), "x1_2");
  EXPECT_EQ(b.name(3), "x0");
  EXPECT_TRUE(b.top_generator().has_value());
}

TEST(Enumerate, RpnWithDoubledMaslovOnlyZero) {
  for (int n = 2; n <= 6; ++n) {
    auto profs = enumerate_differentials(rpn_problem(n), 2 * n + 2);
    ASSERT_EQ(profs.size(), 1U) << "n=" << n;
    EXPECT_TRUE(profs[0].is_zero());
  }
}

TEST(Enumerate, RpnWithMinimalMaslovTwoProfiles) {
  for (int n = 2; n <= 6; ++n) {
    auto profs = enumerate_differentials(rpn_problem(n), n + 1);
    ASSERT_EQ(profs.size(), 2U) << "n=" << n;
    EXPECT_TRUE(profs[0].is_zero());
    ASSERT_EQ(profs[1].entries.size(), 1U);
    const auto& basis = profs[1].complex.basis();
    EXPECT_EQ(basis.name(profs[1].entries[0].from), "x0");
    EXPECT_EQ(basis.name(profs[1].entries[0].to), "x" + std::to_string(n));
    EXPECT_EQ(profs[1].entries[0].j, 1);
    EXPECT_TRUE(profs[1].unit_killed);
    EXPECT_EQ(profs[1].tag, ProfileTag::Narrow);
    EXPECT_TRUE(profs[1].qh.is_zero());
    EXPECT_EQ(profs[0].tag, ProfileTag::Wide);
  }
}

TEST(Enumerate, SphereProfileSlots) {
  // The circle: ∂₁(x0) = x1 t is admissible.
  auto circle = enumerate_differentials(plain({1, 1}, 2), 2);
  EXPECT_EQ(circle.size(), 2U);
  // For n ≥ 2 and N = 2n, x0 ↦ xn would need n = 2n - 1.
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> b(n + 1, 0);
    b[0] = b[n] = 1;
    auto profs = enumerate_differentials(plain(b, 2 * n), 2 * n);
    ASSERT_EQ(profs.size(), 1U) << "n=" << n;
    EXPECT_TRUE(profs[0].is_zero());
  }
}

TEST(Enumerate, EveryProfileHasSquareZero) {
  for (auto betti : std::vector<std::vector<int>>{{1, 2, 2, 1}, {1, 1, 1, 1}, {2, 1, 1}, {1, 3, 1}}) {
    for (int N : {2, 3, 4}) {
      for (const auto& prof : enumerate_differentials(plain(betti, N), N)) {
        EXPECT_TRUE(check_differential(prof.complex).ok());
        EXPECT_TRUE(oracle::d_squared_zero_naive(prof.complex));
      }
    }
  }
}

TEST(Enumerate, MatchesNaiveReEnumeration) {
  const std::vector<std::vector<int>> cases{{1, 1}, {1, 1, 1}, {1, 1, 1, 1}, {1, 2, 2, 1}, {2, 1, 1},
                                            {1, 0, 1},  {1, 2, 1},    {1, 1, 1, 1, 1}, {1, 0, 2, 0, 1}};
  for (const auto& betti : cases) {
    const int n = static_cast<int>(betti.size()) - 1;
    for (int N = 2; N <= 2 * n + 2; ++N) {
      auto p = plain(betti, N);
      auto slots = admissible_slots(betti_basis(betti, n), n, N);
      if (slots.size() > 12) continue;
      auto fast = enumerate_differentials(p, N);
      auto naive = oracle::naive_classify(betti, n, N);
      ASSERT_EQ(fast.size(), naive.size()) << "N=" << N;
      std::vector<std::vector<std::array<std::int64_t, 3>>> a, b;
      for (const auto& f : fast) a.push_back(entries_of(f));
      for (auto nv : naive) {
        std::sort(nv.entries.begin(), nv.entries.end());
        b.push_back(nv.entries);
      }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      EXPECT_EQ(a, b) << "N=" << N;
      for (const auto& f : fast) {
        if (f.unit_killed) continue;
        auto e = entries_of(f);
        auto it = std::find_if(naive.begin(), naive.end(), [&](auto nv) {
          std::sort(nv.entries.begin(), nv.entries.end());
          return nv.entries == e;
        });
        ASSERT_NE(it, naive.end());
        EXPECT_EQ(ranks_of(f), it->ranks) << f.describe();
      }
    }
  }
}

TEST(Enumerate, CapRaisesTooLarge) {
  auto p = plain({1, 3, 3, 1}, 2);
  p.max_bits = 8;
  try {
    enumerate_differentials(p, 2);
    FAIL() << "expected TooLargeError";
  } catch (const TooLargeError& e) {
    EXPECT_NE(std::string(e.what()).find("16 bits"), std::string::npos) << e.what();
  }
}

TEST(Enumerate, ThreadCountDoesNotChangeOutput) {
  auto p = plain({1, 3, 3, 1}, 2);
  auto serial = enumerate_differentials(p, 2, 1);
  auto parallel = enumerate_differentials(p, 2, 8);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i].describe(), parallel[i].describe());
}

TEST(Periodicity, RpnDoubledMaslovRemoved) {
  for (int n = 2; n <= 6; ++n) {
    auto profs = enumerate_differentials(rpn_problem(n), 2 * n + 2);
    EXPECT_TRUE(filter_by_periodicity(profs, {-2}).empty()) << "n=" << n;
    EXPECT_TRUE(filter_by_periodicity(profs, {2}).empty()) << "n=" << n;
  }
}

TEST(Periodicity, NarrowProfileIsTriviallyPeriodic) {
  auto profs = enumerate_differentials(rpn_problem(3), 4);
  auto kept = filter_by_periodicity(profs, {-2});
  EXPECT_EQ(kept.size(), 2U);
}

TEST(Periodicity, ZeroShiftKeepsAll) {
  auto profs = enumerate_differentials(plain({1, 2, 2, 1}, 2), 2);
  EXPECT_EQ(filter_by_periodicity(profs, {0}).size(), profs.size());
  EXPECT_EQ(filter_by_periodicity(profs, {}).size(), profs.size());
}

TEST(Nonvanishing, FlagDisabledIsIdentity) {
  auto p = rpn_problem(3);
  auto profs = enumerate_differentials(p, 4);
  p.flags.clear();
  EXPECT_EQ(apply_nonvanishing_flag(profs, p).size(), profs.size());
}

TEST(Nonvanishing, RemovesNarrowWithWrongMaslov) {
  auto p = rpn_problem(3);
  auto profs = enumerate_differentials(p, 4);
  Report trace("t");
  auto kept = apply_nonvanishing_flag(profs, p, &trace);
  ASSERT_EQ(kept.size(), 1U);
  EXPECT_TRUE(kept[0].is_zero());
  EXPECT_FALSE(trace.trace_lines().empty());
}

TEST(Classify, RpnUniqueWideSurvivor) {
  for (int n = 2; n <= 6; ++n) {
    auto out = classify::classify(rpn_problem(n));
    ASSERT_EQ(out.survivors.size(), 1U) << out.report.to_text();
    const auto& s = out.survivors[0];
    EXPECT_EQ(s.N, n + 1);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s.tag, ProfileTag::Wide);
    for (std::int64_t i = -3; i < 2 * n + 2; ++i) EXPECT_EQ(s.qh.rank(i), 1) << "degree " << i;
    EXPECT_FALSE(out.inconclusive);
    EXPECT_TRUE(out.report.ok());
    EXPECT_EQ(out.report.trace_lines().back(), "N_L=n+1, d=∂₀, wide");
  }
}

TEST(Classify, RpnIsDeterministic) {
  auto a = classify::classify(rpn_problem(4), 1);
  auto b = classify::classify(rpn_problem(4), 4);
  EXPECT_EQ(a.report.trace_lines(), b.report.trace_lines());
}

TEST(Classify, QuadricEvenLeavesSphereProfile) {
  for (int n : {2, 4, 6}) {
    auto out = classify_family("quadric", quadric_problems(n));
    ASSERT_EQ(out.survivors.size(), 1U) << out.report.to_text();
    std::vector<int> sphere(n + 1, 0);
    sphere[0] = sphere[n] = 1;
    EXPECT_EQ(out.survivors[0].betti, sphere);
    EXPECT_EQ(out.survivors[0].tag, ProfileTag::Wide);
    EXPECT_TRUE(out.report.ok());
  }
}

TEST(Classify, QuadricOddIsInconclusive) {
  for (int n : {3, 5}) {
    auto out = classify_family("quadric", quadric_problems(n));
    EXPECT_TRUE(out.inconclusive);
    EXPECT_EQ(out.report.status(), Outcome::Inconclusive);
  }
}

TEST(Classify, QuadricFamilyShape) {
  EXPECT_EQ(quadric_problems(2).size(), 1U);
  EXPECT_EQ(quadric_problems(4).size(), 3U);
  EXPECT_EQ(quadric_problems(6).size(), 9U);
  for (const auto& p : quadric_problems(6)) {
    EXPECT_EQ(p.betti[1], 0);
    EXPECT_EQ(p.betti[5], 0);
    EXPECT_EQ(p.betti[2], p.betti[4]);
  }
  EXPECT_THROW(quadric_problems(1), PreconditionError);
}

TEST(Obstruction, CpnAlwaysObstructed) {
  for (int n = 1; n <= 8; ++n) {
    for (int NL = 2; NL <= 2 * n + 2; ++NL) {
      if ((2 * n + 2) % NL != 0) continue;
      for (int NLp = 2; NLp <= 2 * n + 2; ++NLp) {
        if ((2 * n + 2) % NLp != 0) continue;
        auto d = intersection_obstruction(ObstructionQuery::cpn(n, NL, NLp));
        EXPECT_TRUE(d.obstructed) << n << " " << NL << " " << NLp;
        EXPECT_TRUE(d.report.ok());
        EXPECT_EQ(d.i_max, 2 * n / NL);
      }
    }
  }
}

TEST(Obstruction, SyntheticAmbientHasWitness) {
  auto d = intersection_obstruction({3, 2, 2, 2});
  EXPECT_FALSE(d.obstructed);
  ASSERT_TRUE(d.witness.has_value());
  EXPECT_EQ(*d.witness, 2);
  EXPECT_EQ(d.report.data()["decision"], "NOT-OBSTRUCTED");
}

TEST(Obstruction, DivisibilityOracle) {
  // Independent check: obstructed iff no i in range has 2C | i N_L.
  for (int n = 1; n <= 6; ++n) {
    for (int C = 1; C <= 7; ++C) {
      for (int NL = 2; NL <= 2 * C; ++NL) {
        if ((2 * C) % NL != 0) continue;
        bool expect = true;
        for (int i = 1; i * NL <= 2 * n; ++i) {
          if ((i * NL) % (2 * C) == 0) expect = false;
        }
        EXPECT_EQ(intersection_obstruction({n, C, NL, NL}).obstructed, expect) << n << " " << C << " " << NL;
      }
    }
  }
}

TEST(Obstruction, RejectsDegenerateInput) {
  EXPECT_THROW(intersection_obstruction({0, 1, 2, 2}), PreconditionError);
  EXPECT_THROW(intersection_obstruction({2, 3, 1, 2}), PreconditionError);
}

TEST(Packing, BoundaryCaseHasZeroSlack) {
  auto d = packing_bound({}, {Rational(1, 3)}, Rational(1, 3));
  EXPECT_TRUE(d.satisfied);
  EXPECT_EQ(d.slack, Rational(0));
}

TEST(Packing, RelativeBallsCountHalf) {
  auto d = packing_bound({Rational(1)}, {Rational(1, 4)}, Rational(3, 4));
  EXPECT_TRUE(d.satisfied);
  EXPECT_EQ(d.total, Rational(3, 4));
  EXPECT_FALSE(packing_bound({Rational(2)}, {}, Rational(1, 2)).satisfied);
  EXPECT_THROW(packing_bound({Rational(-1)}, {}, Rational(1)), PreconditionError);
  EXPECT_THROW(packing_bound({}, {}, Rational(0)), PreconditionError);
}

TEST(Packing, PresetsMatchStatedBounds) {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& p : packing_presets(n)) {
      EXPECT_EQ(implied_bound(p), p.stated_bound) << p.name << " n=" << n;
    }
  }
  auto presets = packing_presets(3);
  EXPECT_EQ(presets[1].stated_bound, Rational(1, 2));  // 2/(n+1)
  EXPECT_EQ(presets[2].stated_bound, Rational(3, 4));  // n/(n+1)
  EXPECT_EQ(presets[4].stated_bound, Rational(2));
  EXPECT_EQ(presets[3].literal, "pi r^2 + (1/2) pi rho^2 <= 2/3");
}

TEST(Packing, RationalParsing) {
  EXPECT_EQ(parse_rational("2/6"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(to_string(Rational(4, 6)), "2/3");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1/2z"), ParseError);
}

TEST(Classify, EmptyProfileIsExcludedNotFailed) {
  int excluded = 0;
  for (const auto& p : classify::quadric_problems(4)) {
    auto out = classify::classify(p);
    if (!out.survivors.empty()) continue;
    ++excluded;
    EXPECT_EQ(out.report.status(), Outcome::Pass);
    EXPECT_NE(out.report.find("excluded"), nullptr);
  }
  EXPECT_EQ(excluded, 2);
}
