#include <gtest/gtest.h>

#include <random>

#include "pearl/presets.hpp"
#include "pearl/quantum_ops.hpp"
#include "pearl/torus.hpp"

using namespace pearl;

namespace {

GradedLaurent t(int N, std::int64_t e) { return GradedLaurent::monomial(N, e); }

ClassVector h_power_by_repeated_product(const AmbientModel& amb, int j) {
  auto acc = basis_class(amb.size(), amb.unit, amb.min_maslov);
  auto h = basis_class(amb.size(), 1, amb.min_maslov);
  for (int k = 0; k < j; ++k) acc = amb.multiply(acc, h);
  return acc;
}

QuantumStructure clifford() { return presets::make_preset("clifford").structure.value(); }

}  // namespace

TEST(AmbientCpn, PowersOfHyperplaneMatchIntersections) {
  for (int n = 1; n <= 6; ++n) {
    auto amb = ambient_cpn(n, n + 1);
    for (int j = 0; j <= n; ++j) {
      EXPECT_EQ(h_power_by_repeated_product(amb, j), basis_class(amb.size(), j, n + 1)) << "n=" << n << " j=" << j;
    }
    // h^{*(n+1)} = [CP^n] t² when N = n+1.
    auto wrap = h_power_by_repeated_product(amb, n + 1);
    EXPECT_EQ(wrap, scale(basis_class(amb.size(), 0, n + 1), t(n + 1, 2))) << "n=" << n;
  }
}

TEST(AmbientCpn, WrapAroundAndInverse) {
  auto amb = ambient_cpn(3, 2);  // s ↦ t^4
  auto h = basis_class(4, 1, 2);
  auto pt = basis_class(4, 3, 2);
  EXPECT_EQ(amb.multiply(h, pt), scale(basis_class(4, 0, 2), t(2, 4)));
  EXPECT_TRUE(check_ambient_axioms(amb).ok()) << check_ambient_axioms(amb).to_text();
  EXPECT_TRUE(amb.is_certified_invertible(1));
  EXPECT_TRUE(amb.is_certified_invertible(3));
  EXPECT_FALSE(amb.is_certified_invertible(2));
}

TEST(AmbientCpn, RejectsIncompatibleMaslov) {
  EXPECT_THROW(ambient_cpn(2, 4), NotMonotoneCompatibleError);
  EXPECT_THROW(ambient_cpn(0, 2), PreconditionError);
}

TEST(AmbientModels, AxiomsHoldForAllBuiltins) {
  for (int n = 1; n <= 6; ++n) {
    for (int N : {2, n + 1, 2 * n + 2}) {
      if ((2 * (n + 1)) % N != 0) continue;
      auto rep = check_ambient_axioms(ambient_cpn(n, N));
      EXPECT_TRUE(rep.ok()) << "n=" << n << " N=" << N << "\n" << rep.to_text();
    }
  }
  auto s2 = check_ambient_axioms(ambient_s2xs2(2));
  EXPECT_TRUE(s2.ok()) << s2.to_text();
  auto s4 = check_ambient_axioms(ambient_s2xs2(4));
  EXPECT_TRUE(s4.ok()) << s4.to_text();
  auto q = ambient_quadric(4, 8);
  EXPECT_FALSE(q.has_product());
  EXPECT_TRUE(q.is_certified_invertible(1));
  auto qrep = check_ambient_axioms(q);
  ASSERT_NE(qrep.find("product"), nullptr);
  EXPECT_EQ(qrep.find("product")->outcome, Outcome::Info);
}

TEST(AmbientModels, AssociativityOnRandomLambdaElements) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(-3, 3);
  std::bernoulli_distribution coin(0.5);
  auto amb = ambient_s2xs2(2);
  auto random_class = [&] {
    auto v = zero_class(amb.size(), 2);
    for (auto& c : v) {
      for (int k = 0; k < 2; ++k) {
        if (coin(rng)) c += t(2, e(rng));
      }
    }
    return v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_class(), b = random_class(), c = random_class();
    EXPECT_EQ(amb.multiply(amb.multiply(a, b), c), amb.multiply(a, amb.multiply(b, c)));
    EXPECT_EQ(amb.multiply(a, b), amb.multiply(b, a));
    EXPECT_EQ(amb.multiply(basis_class(amb.size(), 0, 2), a), a);
  }
}

TEST(ProductApply, UnitAndZero) {
  auto qs = presets::rpn_structure(3);
  auto unit = basis_class(4, qs.unit, 4);
  for (std::size_t x = 0; x < 4; ++x) {
    auto ex = basis_class(4, x, 4);
    EXPECT_EQ(product_apply(qs, unit, ex), ex);
    EXPECT_TRUE(is_zero(product_apply(qs, zero_class(4, 4), ex)));
  }
  EXPECT_THROW(product_apply(qs, zero_class(3, 4), unit), PreconditionError);
}

TEST(ProductApply, CliffordSquareOfA) {
  auto qs = clifford();
  auto a = basis_class(4, 1, 2);
  auto expected = scale(basis_class(4, 3, 2), t(2, 1));
  EXPECT_EQ(product_apply(qs, a, a), expected);
}

TEST(ProductAxioms, RpnIsAssociativeAndCommutative) {
  for (int n = 1; n <= 6; ++n) {
    auto rep = check_product_axioms(presets::rpn_structure(n));
    EXPECT_TRUE(rep.ok()) << rep.to_text();
    EXPECT_TRUE(rep.data()["commutative"].get<bool>());
  }
}

TEST(ProductAxioms, CliffordFlagsNonCommutative) {
  auto rep = check_product_axioms(clifford());
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_FALSE(rep.data()["commutative"].get<bool>());
}

TEST(ProductAxioms, RandomTensorsFailAssociativity) {
  std::mt19937 rng(11);
  std::bernoulli_distribution coin(0.5);
  auto base = presets::rpn_structure(2);
  int failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto qs = base;
    for (std::size_t x = 0; x < 3; ++x) {
      for (std::size_t y = 0; y < 3; ++y) {
        for (std::size_t g = 0; g < 3; ++g) {
          qs.product[x][y][g] = coin(rng) ? t(3, 0) : GradedLaurent(3);
        }
      }
    }
    if (!check_product_axioms(qs).passed("associativity")) ++failures;
  }
  EXPECT_GE(failures, 45);
}

TEST(ProductAxioms, DegreeViolationDetected) {
  auto qs = presets::rpn_structure(2);
  qs.product[0][0][0] = t(3, 1);
  EXPECT_FALSE(check_product_axioms(qs).passed("degree"));
}

TEST(ModuleApply, RpnHyperplaneLowersDegreeByTwo) {
  const int n = 4;
  auto qs = presets::rpn_structure(n);
  auto h = basis_class(5, 1, 5);
  for (int i = 2; i <= n; ++i) {
    auto x = basis_class(5, static_cast<std::size_t>(n - i), 5);
    EXPECT_EQ(module_apply(qs, h, x), basis_class(5, static_cast<std::size_t>(n - i + 2), 5));
  }
  auto M = basis_class(5, 0, 5);
  for (std::size_t x = 0; x < 5; ++x) EXPECT_EQ(module_apply(qs, M, basis_class(5, x, 5)), basis_class(5, x, 5));
  EXPECT_TRUE(is_zero(module_apply(qs, h, zero_class(5, 5))));
}

TEST(ModuleAxioms, BuiltinsPass) {
  for (int n = 1; n <= 6; ++n) {
    auto qs = presets::rpn_structure(n);
    auto rep = check_module_axioms(qs, *qs.ambient);
    EXPECT_TRUE(rep.ok()) << "n=" << n << "\n" << rep.to_text();
  }
  auto qs = clifford();
  EXPECT_TRUE(check_module_axioms(qs, *qs.ambient).ok());
  auto split = presets::make_preset("split_torus").structure.value();
  EXPECT_TRUE(check_module_axioms(split, *split.ambient).ok());
}

TEST(ModuleAxioms, ZeroedActionFailsUnit) {
  auto qs = presets::rpn_structure(3);
  for (auto& row : *qs.action) {
    for (auto& v : row) v = zero_class(4, 4);
  }
  auto rep = check_module_axioms(qs, *qs.ambient);
  EXPECT_FALSE(rep.passed("unit_action"));
  EXPECT_EQ(rep.status(), Outcome::Fail);
}

TEST(Inclusion, RpnPasses) {
  for (int n = 1; n <= 6; ++n) {
    auto qs = presets::rpn_structure(n);
    auto rep = check_inclusion(qs, *qs.ambient);
    EXPECT_TRUE(rep.ok()) << "n=" << n << "\n" << rep.to_text();
  }
}

TEST(Inclusion, RpnEvenDegreesHitLinearSubspaces) {
  const int n = 4;
  auto qs = presets::rpn_structure(n);
  for (int i = 0; i <= n; i += 2) {
    auto v = inclusion_apply(qs, basis_class(5, static_cast<std::size_t>(n - i), 5));
    EXPECT_EQ(v[static_cast<std::size_t>(n - i / 2)], t(5, 0)) << "i=" << i;
  }
}

TEST(Inclusion, ZeroInclusionFails) {
  auto qs = presets::rpn_structure(3);
  for (auto& v : *qs.inclusion) v = zero_class(4, 4);
  auto rep = check_inclusion(qs, *qs.ambient);
  EXPECT_TRUE(rep.passed("module_map"));
  EXPECT_FALSE(rep.passed("point_coefficient"));
}

TEST(Inclusion, ZeroStructurePassesVacuously) {
  auto qs = presets::rpn_structure(2);
  for (auto& row : *qs.action) {
    for (auto& v : row) v = zero_class(3, 3);
  }
  for (auto& v : *qs.inclusion) v = zero_class(3, 3);
  EXPECT_TRUE(check_inclusion(qs, *qs.ambient).passed("module_map"));
}

TEST(Augmentation, Examples) {
  auto qs = presets::rpn_structure(2);
  auto x0 = basis_class(3, 2, 3);
  EXPECT_EQ(augmentation(qs, x0), t(3, 0));
  EXPECT_TRUE(augmentation(qs, basis_class(3, 0, 3)).is_zero());
  EXPECT_EQ(augmentation(qs, scale(x0, t(3, 3))), t(3, 3));
}

TEST(Augmentation, ChainMapOnPresetComplexes) {
  for (const auto& p : presets::all_presets()) {
    if (!p.complex) continue;
    const auto& c = *p.complex;
    for (std::size_t x = 0; x < c.size(); ++x) {
      GradedLaurent eps(c.min_maslov());
      for (std::size_t y = 0; y < c.size(); ++y) {
        if (c.basis().degree(y) == 0) eps += c.entry(y, x);
      }
      EXPECT_TRUE(eps.is_zero()) << p.name << " generator " << c.basis().name(x);
    }
  }
}

TEST(Duality, RpnInvertible) {
  for (int n = 1; n <= 6; ++n) {
    auto d = duality_build(presets::rpn_structure(n));
    EXPECT_TRUE(d.invertible) << "n=" << n;
    // α_i pairs with α_{n-i} to 1.
    for (int i = 0; i <= n; ++i) {
      EXPECT_EQ(d.pairing[static_cast<std::size_t>(n - i)][static_cast<std::size_t>(i)], t(n + 1, 0));
    }
  }
}

TEST(Duality, TorusPairsMWithW) {
  for (int bits = 0; bits < 16; ++bits) {
    auto data = torus::TorusQuantumData::full(bits & 1, bits & 2, bits & 4, bits & 8);
    auto d = duality_build(torus::product_table(data));
    EXPECT_EQ(d.pairing[0][3], t(2, 0));
    EXPECT_EQ(d.pairing[3][0], t(2, 0));
    EXPECT_TRUE(d.invertible);
  }
}

TEST(Duality, UnitPairsWithMinimum) {
  auto qs = presets::rpn_structure(3);
  auto d = duality_build(qs);
  EXPECT_EQ(d.pairing[qs.unit][3], augmentation(qs, basis_class(4, 3, 4)));
}

TEST(Duality, ZeroProductNotInjective) {
  auto qs = presets::rpn_structure(3);
  for (auto& row : qs.product) {
    for (auto& v : row) v = zero_class(4, 4);
  }
  auto d = duality_build(qs);
  EXPECT_FALSE(d.invertible);
  EXPECT_EQ(d.rank, 0U);
}

TEST(InclModIdentities, HoldOnBuiltins) {
  for (int n = 1; n <= 6; ++n) {
    auto qs = presets::rpn_structure(n);
    auto rep = check_incl_mod_identities(qs, *qs.ambient, qs.ambient->pairing);
    EXPECT_TRUE(rep.ok()) << "n=" << n << "\n" << rep.to_text();
  }
  for (const char* name : {"clifford", "split_torus"}) {
    auto qs = presets::make_preset(name).structure.value();
    EXPECT_TRUE(check_incl_mod_identities(qs, *qs.ambient, qs.ambient->pairing).ok()) << name;
  }
}

TEST(InclModIdentities, UnitActionReducesToAugmentation) {
  auto qs = presets::rpn_structure(4);
  const auto& amb = *qs.ambient;
  for (std::size_t x = 0; x < qs.size(); ++x) {
    auto ex = basis_class(qs.size(), x, 5);
    EXPECT_EQ(amb.kronecker(amb.unit, inclusion_apply(qs, ex)), augmentation(qs, ex));
  }
}

TEST(InclModIdentities, RandomInconsistentActionFails) {
  std::mt19937 rng(5);
  std::bernoulli_distribution coin(0.5);
  int detected = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto qs = presets::rpn_structure(3);
    // Scramble the action of h on the degree-2 class among degree-compatible targets.
    std::size_t h = 1 + trial % 3;
    for (std::size_t x = 0; x < 4; ++x) {
      auto& v = (*qs.action)[h][x];
      for (auto& c : v) {
        if (coin(rng)) c = c.is_zero() ? t(4, 0) : GradedLaurent(4);
      }
    }
    if (!check_incl_mod_identities(qs, *qs.ambient, qs.ambient->pairing).ok()) ++detected;
  }
  EXPECT_GE(detected, 25);
}

TEST(InclModIdentities, PairingShapeMismatchThrows) {
  auto qs = presets::rpn_structure(2);
  EXPECT_THROW(check_incl_mod_identities(qs, *qs.ambient, gf2::Matrix(2, 2)), PreconditionError);
}

TEST(Periodicity, CpnHyperplaneRequiresTwoPeriodicity) {
  const int n = 3;
  auto amb = ambient_cpn(n, n + 1);
  auto wide = homology_over_Lambda(presets::rpn_complex(n));
  auto rep = invertible_action_periodicity(amb, 1, wide);
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_EQ(rep.data()["shift"].get<int>(), -2);
  auto doubled = homology_over_Lambda(PearlComplex(presets::rpn_complex(n).basis(), n, 2 * n + 2, RingMode::Lambda));
  EXPECT_FALSE(invertible_action_periodicity(amb, 1, doubled).ok());
  EXPECT_TRUE(invertible_action_periodicity(amb, 0, doubled).ok());
}

TEST(Periodicity, QuadricPointShift) {
  auto amb = ambient_quadric(4, 8);
  auto h = homology_over_Lambda(presets::sphere_complex(4));
  auto rep = invertible_action_periodicity(amb, 1, h);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.data()["shift"].get<int>(), -8);
}

TEST(Periodicity, UncertifiedClassThrows) {
  auto amb = ambient_cpn(3, 4);
  auto h = homology_over_Lambda(presets::rpn_complex(3));
  EXPECT_THROW(invertible_action_periodicity(amb, 2, h), PreconditionError);
}

TEST(Specialization, BuiltinsRecoverClassicalTables) {
  for (int n = 1; n <= 6; ++n) {
    auto rep = specialization_compat(presets::rpn_structure(n), presets::rpn_classical(n));
    EXPECT_TRUE(rep.ok()) << "n=" << n << "\n" << rep.to_text();
  }
  auto cl = clifford();
  EXPECT_TRUE(specialization_compat(cl, torus::classical_tables(torus::Ambient::CP2)).ok());
}

TEST(Specialization, ClassicalTorusTable) {
  auto qs = torus::product_table(torus::TorusQuantumData::full(false, false, false, false));
  auto rep = specialization_compat(qs, torus::classical_tables(torus::Ambient::None));
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  // a∘b = m exactly.
  EXPECT_EQ(product_apply(qs, basis_class(4, 1, 2), basis_class(4, 2, 2)), basis_class(4, 0, 2));
}

TEST(Specialization, WrongClassicalTableFails) {
  auto cl = presets::rpn_classical(3);
  (*cl.intersection)[0][0] = gf2::BitVector(4);
  EXPECT_FALSE(specialization_compat(presets::rpn_structure(3), cl).passed("product"));
}

TEST(Specialization, NegativeExponentsRejected) {
  auto qs = presets::rpn_structure(2);
  qs.product[2][2][0] = t(3, -1);
  EXPECT_THROW(specialization_compat(qs, presets::rpn_classical(2)), PreconditionError);
}

TEST(VerifyStructure, AllBuiltinsPass) {
  for (int n = 1; n <= 6; ++n) {
    auto rep = verify_structure(presets::rpn_structure(n));
    EXPECT_TRUE(rep.ok()) << rep.to_text();
  }
  auto rep = verify_structure(clifford());
  EXPECT_TRUE(rep.ok()) << rep.to_text();
  EXPECT_FALSE(rep.data()["commutative"].get<bool>());
}
