#include "pearl/torus.hpp"

namespace pearl::torus {

namespace {

constexpr int kN = 2;
enum Index : std::size_t { M = 0, A = 1, B = 2, W = 3 };

GradedLaurent tpow(std::int64_t e) { return GradedLaurent::monomial(kN, e); }

bool mod2(std::int64_t v) { return (v % 2) != 0; }

GradedBasis torus_basis() { return GradedBasis({{"m", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, 2, true); }

AmbientModel make_ambient(Ambient ambient) {
  switch (ambient) {
    case Ambient::CP2:
      return ambient_cpn(2, kN);
    case Ambient::S2xS2:
      return ambient_s2xs2(kN);
    case Ambient::None:
      break;
  }
  throw PreconditionError("no ambient model requested");
}

}  // namespace

NuTable::NuTable(std::initializer_list<std::pair<std::pair<std::int64_t, std::int64_t>, bool>> entries) {
  for (const auto& [kl, v] : entries) add(kl.first, kl.second, v);
}

bool NuTable::get(std::int64_t k, std::int64_t l) const { return entries_.count({k, l}) != 0; }

void NuTable::set(std::int64_t k, std::int64_t l, bool value) {
  if (value) {
    entries_[{k, l}] = true;
  } else {
    entries_.erase({k, l});
  }
}

void NuTable::add(std::int64_t k, std::int64_t l, bool value) {
  if (value) set(k, l, !get(k, l));
}

NuTable NuTable::transposed() const {
  NuTable out;
  for (const auto& [kl, v] : entries_) out.set(kl.second, kl.first, v);
  return out;
}

NuTable NuTable::operator^(const NuTable& other) const {
  NuTable out = *this;
  for (const auto& [kl, v] : other.entries_) out.add(kl.first, kl.second, v);
  return out;
}

TorusQuantumData TorusQuantumData::full(bool alpha, bool beta, bool gamma1, bool gamma2) {
  TorusQuantumData d;
  d.alpha = alpha;
  d.beta = beta;
  d.gamma1 = gamma1;
  d.gamma2 = gamma2;
  d.s1 = gamma1 != gamma2;
  d.s2 = (alpha && beta) != (gamma1 && gamma2);
  return d;
}

TorusQuantumData invariants_from_nu(const NuTable& nu) {
  std::int64_t alpha = 0, beta = 0, s1 = 0;
  for (const auto& [kl, v] : nu.entries()) {
    if (!v) continue;
    const auto [k, l] = kl;
    alpha += l * (l + 1) / 2;
    beta += k * (k + 1) / 2;
    s1 += k * l;
  }
  TorusQuantumData d;
  d.alpha = mod2(alpha);
  d.beta = mod2(beta);
  d.s1 = mod2(s1);
  return d;
}

QuantumStructure product_table(const TorusQuantumData& d, Ambient ambient) {
  if (!d.has_gammas()) throw PreconditionError("product table needs both gamma' and gamma''");
  const bool al = d.alpha, be = d.beta, g1 = *d.gamma1, g2 = *d.gamma2;
  const bool s1 = g1 != g2, s2 = (al && be) != (g1 && g2);

  QuantumStructure qs;
  qs.name = "torus";
  qs.basis = torus_basis();
  qs.n = 2;
  qs.min_maslov = kN;
  qs.unit = W;
  qs.product.assign(4, std::vector<ClassVector>(4, zero_class(4, kN)));
  auto put = [&](std::size_t x, std::size_t y, std::size_t g, bool on, std::int64_t e) {
    if (on) qs.product[x][y][g] += tpow(e);
  };
  for (std::size_t x = 0; x < 4; ++x) {
    put(W, x, x, true, 0);
    if (x != W) put(x, W, x, true, 0);
  }
  put(A, A, W, al, 1);
  put(B, B, W, be, 1);
  put(A, B, M, true, 0);
  put(A, B, W, g1, 1);
  put(B, A, M, true, 0);
  put(B, A, W, g2, 1);
  put(M, A, B, al, 1);
  put(M, A, A, g2, 1);
  put(A, M, B, al, 1);
  put(A, M, A, g1, 1);
  put(M, B, A, be, 1);
  put(M, B, B, g1, 1);
  put(B, M, A, be, 1);
  put(B, M, B, g2, 1);
  put(M, M, M, s1, 1);
  put(M, M, W, s2, 2);

  if (ambient == Ambient::None) return qs;
  auto amb = make_ambient(ambient);
  StructureTable action(amb.size(), std::vector<ClassVector>(4, zero_class(4, kN)));
  std::vector<ClassVector> inclusion(4, zero_class(amb.size(), kN));
  for (std::size_t h = 0; h < amb.size(); ++h) {
    const std::int64_t e = (2 * amb.n - amb.basis.degree(h)) / kN;
    for (std::size_t x = 0; x < 4; ++x) action[h][x][x] = tpow(e);
    // ε_L(h ⊛ m) = t^e; every other basis class has ε_L = 0.
    for (std::size_t k = 0; k < amb.size(); ++k) {
      if (amb.pairing.get(h, k)) inclusion[M][k] += tpow(e);
    }
  }
  qs.name = ambient == Ambient::CP2 ? "torus in CP2" : "torus in S2xS2";
  qs.ambient = std::move(amb);
  qs.action = std::move(action);
  qs.inclusion = std::move(inclusion);
  return qs;
}

Report check_table(const QuantumStructure& qs, const TorusQuantumData& d) {
  Report rep("torus table");
  auto axioms = check_product_axioms(qs);
  rep.merge(axioms);
  const bool commutative = axioms.data().value("commutative", false);
  rep.check("commutator_is_s1", commutative == !d.s1,
            std::string(commutative ? "commutative" : "non-commutative") + " with s1 = " + (d.s1 ? "1" : "0"));
  rep.note("gammas", "gamma' and gamma'' are basis-dependent");
  rep.data()["commutative"] = commutative;
  return rep;
}

TorusQuantumData basis_change_xi1(const TorusQuantumData& d) {
  TorusQuantumData out = d;
  if (d.gamma1) out.gamma1 = !*d.gamma1;
  if (d.gamma2) out.gamma2 = !*d.gamma2;
  if (d.s2) out.s2 = (d.s1 != *d.s2) != true;
  return out;
}

QuantumStructure transform_xi1(const QuantumStructure& qs) {
  if (qs.size() != 4 || qs.min_maslov != kN) throw PreconditionError("not a torus table");
  // New basis: m' = m + wt, a, b, w. Old coordinates of new basis vectors:
  auto to_old = [&](std::size_t i) {
    auto v = basis_class(4, i, kN);
    if (i == M) v[W] += tpow(1);
    return v;
  };
  // Old coordinates (c_m, c_a, c_b, c_w) become (c_m, c_a, c_b, c_w + c_m t).
  auto to_new = [&](ClassVector v) {
    v[W] += v[M] * tpow(1);
    return v;
  };
  QuantumStructure out = qs;
  out.action.reset();
  out.inclusion.reset();
  out.ambient.reset();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out.product[i][j] = to_new(product_apply(qs, to_old(i), to_old(j)));
  }
  return out;
}

TorusQuantumData read_constants(const QuantumStructure& qs) {
  auto coeff = [&](std::size_t x, std::size_t y, std::size_t g, std::int64_t e) {
    return qs.product.at(x).at(y).at(g).coefficient(e);
  };
  auto d = TorusQuantumData::full(coeff(A, A, W, 1), coeff(B, B, W, 1), coeff(A, B, W, 1), coeff(B, A, W, 1));
  // s1 and s2 come from m∘m directly rather than from the formulas.
  d.s1 = coeff(M, M, M, 1);
  d.s2 = coeff(M, M, W, 2);
  return d;
}

Report triangle_identities(const TriangleCounts& tc, const TorusQuantumData& d) {
  Report rep("triangle");
  const bool sum = (tc.n_A != tc.n_B) != tc.n_C;
  rep.check("s1", sum == d.s1,
            "n_A + n_B + n_C = " + std::to_string(sum) + ", s1 = " + std::to_string(d.s1));
  if (!d.s1) {
    rep.note("s2", "s1 = 0: s2 is not an invariant");
    return rep;
  }
  if (!d.s2) {
    rep.inconclusive("s2", "s2 not supplied");
    return rep;
  }
  const bool rhs = tc.n_Delta != (tc.n_B && tc.n_C);
  rep.check("s2", rhs == *d.s2, "n_Delta + n_B n_C = " + std::to_string(rhs) + ", s2 = " + std::to_string(*d.s2));
  const bool n_prime = *d.s2 != (tc.n_C && tc.n_B);
  rep.check("evenness", (tc.n_Delta != n_prime) == false,
            "n_Delta + n'_Delta = " + std::to_string(tc.n_Delta != n_prime));
  return rep;
}

ClassicalTables classical_tables(Ambient ambient) {
  ClassicalTables cl;
  auto bits = [](std::size_t size, std::initializer_list<std::size_t> on) {
    gf2::BitVector v(size);
    for (auto i : on) v.set(i);
    return v;
  };
  std::vector<std::vector<gf2::BitVector>> inter(4, std::vector<gf2::BitVector>(4, gf2::BitVector(4)));
  for (std::size_t x = 0; x < 4; ++x) {
    inter[W][x] = bits(4, {x});
    inter[x][W] = bits(4, {x});
  }
  inter[A][B] = bits(4, {M});
  inter[B][A] = bits(4, {M});
  cl.intersection = std::move(inter);
  if (ambient == Ambient::None) return cl;
  auto amb = make_ambient(ambient);
  std::vector<std::vector<gf2::BitVector>> action(amb.size(), std::vector<gf2::BitVector>(4, gf2::BitVector(4)));
  for (std::size_t x = 0; x < 4; ++x) action[amb.unit][x] = bits(4, {x});
  cl.action = std::move(action);
  std::vector<gf2::BitVector> inc(4, gf2::BitVector(amb.size()));
  inc[M] = bits(amb.size(), {amb.size() - 1});
  cl.inclusion = std::move(inc);
  return cl;
}

}  // namespace pearl::torus
