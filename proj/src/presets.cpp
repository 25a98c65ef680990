#include "pearl/presets.hpp"

namespace pearl::presets {

namespace {

using nlohmann::json;

GradedLaurent tpow(int N, std::int64_t e) { return GradedLaurent::monomial(N, e); }

std::string alpha_name(int i) { return "a" + std::to_string(i); }

// Index of α_i in the rpn basis (listed from α_n down to α_0).
std::size_t rpn_index(int n, int i) { return static_cast<std::size_t>(n - i); }

// α_j for any integer j, using α_j = α_{j+n+1} t.
ClassVector rpn_alpha(int n, std::int64_t j) {
  const int N = n + 1;
  std::int64_t q = 0;
  while (j < 0) {
    j += N;
    ++q;
  }
  while (j > n) {
    j -= N;
    --q;
  }
  auto v = zero_class(static_cast<std::size_t>(n + 1), N);
  v[rpn_index(n, static_cast<int>(j))] = tpow(N, q);
  return v;
}

bool require_int(const json& expected, const char* key, std::int64_t actual, Report& rep, const std::string& check) {
  if (!expected.contains(key)) return true;
  const auto want = expected.at(key).get<std::int64_t>();
  rep.check(check, want == actual, "expected " + std::to_string(want) + ", got " + std::to_string(actual));
  return want == actual;
}

Preset circle_preset() {
  Preset p;
  p.name = "circle_r2";
  p.description = "circle in R^2, N=2, d(x0) = x1 t";
  p.complex = circle_r2();
  p.expected = {{"lambda", {{"total_rank", 0}}},
                {"lambda_plus", {{"free", json::object()}, {"torsion", json::array({json::array({1, 1})})}}}};
  return p;
}

Preset rpn_preset(int n) {
  Preset p;
  p.name = "rpn";
  p.description = "RP^" + std::to_string(n) + " in CP^" + std::to_string(n) + ", N=n+1";
  p.complex = rpn_complex(n);
  p.structure = rpn_structure(n);
  p.classical = rpn_classical(n);
  p.problems = {classify::rpn_problem(n)};
  json ranks = json::object();
  for (int i = 0; i <= n; ++i) ranks[std::to_string(i)] = 1;
  p.expected = {{"n", n},
                {"lambda", {{"ranks", ranks}}},
                {"classify", {{"survivors", 1}, {"N", n + 1}, {"tag", "wide"}, {"zero_differential", true}}},
                {"commutative", true},
                {"relations", true}};
  return p;
}

Preset clifford_preset(int n) {
  if (n != 2) throw PreconditionError("the Clifford preset is available for n = 2 only");
  Preset p;
  p.name = "clifford";
  p.description = "Clifford torus in CP^2, N=2";
  p.complex = torus_complex();
  p.nu = clifford_nu();
  p.torus_data = torus::TorusQuantumData::full(true, true, true, false);
  p.structure = torus::product_table(*p.torus_data, torus::Ambient::CP2);
  p.structure->name = "clifford";
  p.classical = torus::classical_tables(torus::Ambient::CP2);
  p.triangle = torus::TriangleCounts{true, true, true, false};
  p.expected = {{"alpha", 1}, {"beta", 1}, {"s1", 1}, {"s2", 1}, {"commutative", false}};
  return p;
}

Preset split_torus_preset() {
  Preset p;
  p.name = "split_torus";
  p.description = "split torus S^1 x S^1 in S^2 x S^2, N=2";
  p.complex = torus_complex();
  p.nu = split_torus_nu();
  p.torus_data = torus::TorusQuantumData::full(true, true, false, false);
  p.structure = torus::product_table(*p.torus_data, torus::Ambient::S2xS2);
  p.structure->name = "split_torus";
  p.classical = torus::classical_tables(torus::Ambient::S2xS2);
  p.expected = {{"alpha", 1}, {"beta", 1}, {"s1", 0}, {"commutative", true}};
  return p;
}

Preset quadric_preset(int n) {
  Preset p;
  p.name = "quadric_sphere";
  p.description = "homology sphere in the quadric Q^" + std::to_string(n) + ", N=2n";
  p.complex = sphere_complex(n);
  p.problems = classify::quadric_problems(n);
  if (n % 2 == 0) {
    std::vector<int> sphere(n + 1, 0);
    sphere[0] = sphere[n] = 1;
    p.expected = {{"n", n}, {"classify", {{"survivors", 1}, {"betti", sphere}, {"tag", "wide"}}}};
  } else {
    p.expected = {{"n", n}, {"classify", {{"inconclusive", true}}}};
  }
  return p;
}

void check_relations(const QuantumStructure& qs, int n, Report& rep) {
  const auto N = n + 1;
  auto e = [&](int i) { return basis_class(static_cast<std::size_t>(n + 1), rpn_index(n, i), N); };
  if (n >= 2) {
    auto sq = product_apply(qs, e(n - 1), e(n - 1));
    rep.check("relation a(n-1)∘a(n-1) = a(n-2)", sq == e(n - 2), format_class(sq, qs.basis));
  }
  const auto& amb = *qs.ambient;
  bool ok = true;
  std::string detail;
  for (int i = 0; i <= n; ++i) {
    auto hx = module_apply(qs, basis_class(amb.size(), 1, N), e(i));
    if (!(hx == rpn_alpha(n, i - 2))) {
      ok = false;
      detail = "h⊛" + alpha_name(i) + " = " + format_class(hx, qs.basis);
      break;
    }
  }
  rep.check("relation h⊛a(i) = a(i-2)", ok, detail);
}

}  // namespace

PearlComplex circle_r2(RingMode mode) {
  GradedBasis basis({{"x1", 1}, {"x0", 0}}, 1, true);
  return PearlComplex::from_terms(basis, 1, 2, mode, {{1, 0, 1}});
}

PearlComplex rpn_complex(int n, RingMode mode) {
  if (n < 1) throw PreconditionError("RP^n needs n >= 1");
  std::vector<Generator> gens;
  for (int i = n; i >= 0; --i) gens.push_back({"x" + std::to_string(i), i});
  return PearlComplex(GradedBasis(gens, n, true), n, n + 1, mode);
}

QuantumStructure rpn_structure(int n) {
  if (n < 1) throw PreconditionError("RP^n needs n >= 1");
  const int N = n + 1;
  const auto size = static_cast<std::size_t>(n + 1);
  QuantumStructure qs;
  qs.name = "rpn " + std::to_string(n);
  std::vector<Generator> gens;
  for (int i = n; i >= 0; --i) gens.push_back({alpha_name(i), i});
  qs.basis = GradedBasis(gens, n, true);
  qs.n = n;
  qs.min_maslov = N;
  qs.unit = rpn_index(n, n);
  qs.product.assign(size, std::vector<ClassVector>(size, zero_class(size, N)));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      // α_i ↔ a^{n-i}; a^{2n-i-j} = α_{i+j-n}, reduced by a^{n+1} = t.
      qs.product[rpn_index(n, i)][rpn_index(n, j)] = rpn_alpha(n, i + j - n);
    }
  }
  auto amb = ambient_cpn(n, N);
  StructureTable action(amb.size(), std::vector<ClassVector>(size, zero_class(size, N)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) action[j][rpn_index(n, i)] = rpn_alpha(n, i - 2 * j);
  }
  std::vector<ClassVector> inclusion(size, zero_class(amb.size(), N));
  for (int i = 0; i <= n; ++i) {
    auto& v = inclusion[rpn_index(n, i)];
    if (i % 2 == 0) v[static_cast<std::size_t>(n - i / 2)] += tpow(N, 0);
    if ((n - 1 - i) >= 0 && (n - 1 - i) % 2 == 0) v[static_cast<std::size_t>((n - 1 - i) / 2)] += tpow(N, 1);
  }
  qs.ambient = std::move(amb);
  qs.action = std::move(action);
  qs.inclusion = std::move(inclusion);
  return qs;
}

ClassicalTables rpn_classical(int n) {
  const auto size = static_cast<std::size_t>(n + 1);
  ClassicalTables cl;
  std::vector<std::vector<gf2::BitVector>> inter(size, std::vector<gf2::BitVector>(size, gf2::BitVector(size)));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i + j >= n) inter[rpn_index(n, i)][rpn_index(n, j)].set(rpn_index(n, i + j - n));
    }
  }
  std::vector<std::vector<gf2::BitVector>> action(size, std::vector<gf2::BitVector>(size, gf2::BitVector(size)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (i >= 2 * j) action[j][rpn_index(n, i)].set(rpn_index(n, i - 2 * j));
    }
  }
  std::vector<gf2::BitVector> inc(size, gf2::BitVector(size));
  for (int i = 0; i <= n; i += 2) inc[rpn_index(n, i)].set(static_cast<std::size_t>(n - i / 2));
  cl.intersection = std::move(inter);
  cl.action = std::move(action);
  cl.inclusion = std::move(inc);
  return cl;
}

PearlComplex torus_complex(RingMode mode) {
  GradedBasis basis({{"w", 2}, {"a", 1}, {"b", 1}, {"m", 0}}, 2, true);
  return PearlComplex(basis, 2, 2, mode);
}

PearlComplex sphere_complex(int n, RingMode mode) {
  if (n < 2) throw PreconditionError("quadric needs n >= 2");
  GradedBasis basis({{"x" + std::to_string(n), n}, {"x0", 0}}, n, true);
  return PearlComplex(basis, n, 2 * n, mode);
}

torus::NuTable clifford_nu() { return torus::NuTable{{{1, 0}, true}, {{0, 1}, true}, {{-1, -1}, true}}; }

torus::NuTable split_torus_nu() {
  return torus::NuTable{{{1, 0}, true}, {{-1, 0}, true}, {{0, 1}, true}, {{0, -1}, true}};
}

std::vector<std::string> preset_names() { return {"circle_r2", "rpn", "clifford", "split_torus", "quadric_sphere"}; }

Preset make_preset(const std::string& name, std::optional<int> n) {
  if (name == "circle_r2") return circle_preset();
  if (name == "rpn") return rpn_preset(n.value_or(3));
  if (name == "clifford") return clifford_preset(n.value_or(2));
  if (name == "split_torus") return split_torus_preset();
  if (name == "quadric_sphere") return quadric_preset(n.value_or(2));
  throw PreconditionError("unknown preset: " + name);
}

std::vector<Preset> all_presets() {
  std::vector<Preset> out;
  out.push_back(circle_preset());
  for (int n = 2; n <= 6; ++n) out.push_back(rpn_preset(n));
  out.push_back(clifford_preset(2));
  out.push_back(split_torus_preset());
  out.push_back(quadric_preset(2));
  out.push_back(quadric_preset(4));
  return out;
}

Report self_test(const Preset& p) {
  Report rep(p.name + (p.expected.contains("n") ? " " + std::to_string(p.expected["n"].get<int>()) : ""));
  const auto& exp = p.expected;

  if (p.complex) {
    const auto& c = *p.complex;
    rep.merge(check_differential(c), "complex.");
    auto plus = c.with_ring(RingMode::LambdaPlus);
    if (check_differential(plus).passed("positivity")) {
      rep.merge(specialization_check(plus), "sigma.");
      rep.merge(check_spectral_sequence(plus, spectral_sequence(plus, static_cast<int>(plus.max_exponent()) + 2)), "spectral.");
    }
    if (exp.contains("lambda")) {
      auto h = homology_over_Lambda(c.with_ring(RingMode::Lambda));
      require_int(exp["lambda"], "total_rank", h.total_rank(), rep, "homology.lambda_total_rank");
      if (exp["lambda"].contains("ranks")) {
        bool ok = true;
        for (auto& [deg, r] : exp["lambda"]["ranks"].items()) ok = ok && h.rank(std::stoll(deg)) == r.get<std::int64_t>();
        rep.check("homology.lambda_ranks", ok, h.to_string());
      }
    }
    if (exp.contains("lambda_plus")) {
      auto h = homology_over_Lambda_plus(plus);
      bool ok = true;
      std::map<std::int64_t, std::int64_t> free_expected;
      for (auto& [deg, r] : exp["lambda_plus"]["free"].items()) free_expected[std::stoll(deg)] = r.get<std::int64_t>();
      for (auto& [deg, r] : h.ranks) {
        auto it = free_expected.find(deg);
        ok = ok && r == (it == free_expected.end() ? 0 : it->second);
      }
      std::vector<TorsionSummand> tors;
      for (const auto& t : exp["lambda_plus"]["torsion"]) tors.push_back({t[0].get<std::int64_t>(), t[1].get<std::int64_t>()});
      ok = ok && tors == h.torsion;
      rep.check("homology.lambda_plus", ok, h.to_string());
    }
  }

  if (p.structure) {
    auto v = verify_structure(*p.structure);
    rep.merge(v, "structure.");
    if (exp.contains("commutative")) {
      const bool comm = v.data().value("commutative", false);
      rep.check("structure.commutativity_expected", comm == exp["commutative"].get<bool>(),
                comm ? "commutative" : "non-commutative");
    }
    if (p.classical) rep.merge(specialization_compat(*p.structure, *p.classical), "structure.sigma.");
    if (exp.value("relations", false)) check_relations(*p.structure, exp["n"].get<int>(), rep);
  }

  if (p.nu) {
    auto inv = torus::invariants_from_nu(*p.nu);
    require_int(exp, "alpha", inv.alpha, rep, "torus.alpha");
    require_int(exp, "beta", inv.beta, rep, "torus.beta");
    require_int(exp, "s1", inv.s1, rep, "torus.s1");
    if (p.torus_data) {
      const auto& d = *p.torus_data;
      rep.check("torus.data_matches_nu", d.alpha == inv.alpha && d.beta == inv.beta && d.s1 == inv.s1);
      if (d.s1 && d.s2) require_int(exp, "s2", *d.s2, rep, "torus.s2");
      if (d.s1 && d.s2) rep.check("torus.s2_is_alpha_beta", *d.s2 == (d.alpha && d.beta));
      auto table = torus::product_table(d);
      rep.merge(torus::check_table(table, d), "torus.table.");
      auto moved = torus::read_constants(torus::transform_xi1(table));
      rep.check("torus.xi1", moved == torus::basis_change_xi1(d));
      if (p.triangle) rep.merge(torus::triangle_identities(*p.triangle, d), "torus.triangle.");
    }
  }

  if (!p.problems.empty() && exp.contains("classify")) {
    const auto& ce = exp["classify"];
    auto out = p.problems.size() == 1 ? classify::classify(p.problems.front())
                                      : classify::classify_family(p.name, p.problems);
    if (ce.value("inconclusive", false)) {
      rep.check("classify.inconclusive", out.inconclusive);
    } else {
      rep.check("classify.conclusive", !out.inconclusive);
      require_int(ce, "survivors", static_cast<std::int64_t>(out.survivors.size()), rep, "classify.survivors");
      if (out.survivors.size() == 1) {
        const auto& s = out.survivors.front();
        require_int(ce, "N", s.N, rep, "classify.N");
        if (ce.contains("tag")) rep.check("classify.tag", classify::to_string(s.tag) == ce["tag"].get<std::string>());
        if (ce.contains("zero_differential")) rep.check("classify.zero_differential", s.is_zero());
        if (ce.contains("betti")) rep.check("classify.betti", s.betti == ce["betti"].get<std::vector<int>>());
      }
    }
  }
  return rep;
}

}  // namespace pearl::presets
