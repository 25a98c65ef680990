#include "pearl/classify.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "pearl/rings.hpp"

namespace pearl::classify {

namespace {

std::string betti_string(const std::vector<int>& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i]);
  return out + ")";
}

std::string maslov_name(int N, int n) {
  if (N == n + 1) return "n+1";
  if (N == 2 * n + 2) return "2n+2";
  if (N == 2 * n) return "2n";
  return std::to_string(N);
}

bool top_is_boundary(const PearlComplex& c) {
  auto top = c.basis().top_generator();
  if (!top) return false;
  const std::int64_t n = c.n();
  auto target = c.degree_slice(n);
  auto it = std::find(target.begin(), target.end(), SliceElement{*top, 0});
  if (it == target.end()) return false;
  auto d = c.slice_differential(n + 1);
  if (d.cols() == 0) return false;
  gf2::Eliminator image(d.rows());
  for (std::size_t col = 0; col < d.cols(); ++col) image.insert(d.column(col));
  gf2::BitVector e(d.rows());
  e.set(static_cast<std::size_t>(it - target.begin()));
  return image.contains(e);
}

// The Λ-ranks of H(L; Z₂) ⊗ Λ: generators counted by degree mod N.
bool ranks_match_betti(const HomologyResult& h, const GradedBasis& basis) {
  std::map<std::int64_t, std::int64_t> expected;
  const std::int64_t N = h.min_maslov;
  for (std::size_t g = 0; g < basis.size(); ++g) ++expected[((basis.degree(g) % N) + N) % N];
  for (std::int64_t i = 0; i < N; ++i) {
    auto it = expected.find(i);
    if (h.rank(i) != (it == expected.end() ? 0 : it->second)) return false;
  }
  return true;
}

std::string ranks_string(const HomologyResult& h) {
  std::string out = "(";
  for (std::int64_t i = 0; i < h.min_maslov; ++i) out += (i ? "," : "") + std::to_string(h.rank(i));
  return out + ")";
}

std::vector<std::uint64_t> valid_masks(const GradedBasis& basis, const std::vector<Slot>& slots, unsigned threads) {
  const std::size_t bits = slots.size();
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::size_t m = basis.size();
  auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
    gf2::Matrix d(m, m);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
      for (std::size_t r = 0; r < m; ++r) d.row(r) = gf2::BitVector(m);
      for (std::size_t s = 0; s < bits; ++s) {
        if ((mask >> s) & 1U) d.set(slots[s].to, slots[s].from);
      }
      // Exponents along any path x → y → z are fixed by the degrees, so d² = 0
      // reduces to the Z₂ matrix square.
      if ((d * d).is_zero()) out.push_back(mask);
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (total < 4096 || threads == 1) {
    std::vector<std::uint64_t> out;
    scan(0, total, out);
    return out;
  }
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, total);
  std::vector<std::vector<std::uint64_t>> parts(chunks);
  std::vector<std::thread> pool;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = total * c / chunks, hi = total * (c + 1) / chunks;
    pool.emplace_back([&, lo, hi, c] { scan(lo, hi, parts[c]); });
  }
  for (auto& t : pool) t.join();
  std::vector<std::uint64_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Whether x₀ ∘ x (x of degree i) has any admissible target y·t^k, k ≥ 0.
bool has_point_product_target(const std::vector<int>& betti, int n, int N, int i) {
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t deg = i - n + k * N;
    if (deg > n) return false;
    if (deg >= 0 && betti[deg] > 0) return true;
  }
}

}  // namespace

bool ClassificationProblem::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void ClassificationProblem::validate() const {
  if (n < 1) throw PreconditionError("classification needs n >= 1");
  if (betti.size() != static_cast<std::size_t>(n + 1)) throw PreconditionError("betti must list b_0..b_n");
  if (betti[0] < 1) throw PreconditionError("b_0 must be at least 1");
  for (int b : betti) {
    if (b < 0) throw PreconditionError("Betti numbers must be nonnegative");
  }
  if (candidate_N.empty()) throw PreconditionError("no candidate minimal Maslov numbers");
  for (int N : candidate_N) {
    if (N < 2) throw PreconditionError("candidate N must be at least 2");
  }
}

std::string to_string(ProfileTag tag) {
  switch (tag) {
    case ProfileTag::Wide:
      return "wide";
    case ProfileTag::Narrow:
      return "narrow";
    case ProfileTag::Other:
      return "other";
  }
  return "other";
}

std::string DifferentialProfile::describe() const {
  std::string d;
  for (const auto& s : entries) {
    if (!d.empty()) d += ", ";
    d += "∂" + std::to_string(s.j) + "(" + complex.basis().name(s.from) + ")∋" + complex.basis().name(s.to);
  }
  return "N=" + std::to_string(N) + " betti=" + betti_string(betti) + " d=" + (d.empty() ? "∂₀" : "{" + d + "}") +
         " QH ranks " + ranks_string(qh) + " " + to_string(tag) + (unit_killed ? " (unit killed)" : "");
}

GradedBasis betti_basis(const std::vector<int>& betti, int n) {
  std::vector<Generator> gens;
  for (int i = n; i >= 0; --i) {
    for (int k = 0; k < betti[i]; ++k) {
      std::string name = "x" + std::to_string(i);
      if (betti[i] > 1) name += "_" + std::to_string(k + 1);
      gens.push_back({name, i});
    }
  }
  return GradedBasis(gens, n, betti[n] == 1);
}

std::vector<Slot> admissible_slots(const GradedBasis& basis, int n, int N) {
  std::vector<Slot> slots;
  for (std::size_t x = 0; x < basis.size(); ++x) {
    for (std::size_t y = 0; y < basis.size(); ++y) {
      const std::int64_t gap = basis.degree(y) - basis.degree(x) + 1;
      if (gap > 0 && gap % N == 0 && basis.degree(y) <= n) slots.push_back({x, y, gap / N});
    }
  }
  return slots;
}

std::vector<DifferentialProfile> enumerate_differentials(const ClassificationProblem& p, int N, unsigned threads) {
  p.validate();
  const auto basis = betti_basis(p.betti, p.n);
  const auto slots = admissible_slots(basis, p.n, N);
  if (slots.size() > p.max_bits || slots.size() >= 63) {
    throw TooLargeError("enumeration needs " + std::to_string(slots.size()) + " bits (cap " +
                        std::to_string(p.max_bits) + ")");
  }
  std::vector<DifferentialProfile> out;
  for (auto mask : valid_masks(basis, slots, threads)) {
    std::vector<DiffTerm> terms;
    std::vector<Slot> entries;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if ((mask >> s) & 1U) {
        terms.push_back({slots[s].from, slots[s].to, slots[s].j});
        entries.push_back(slots[s]);
      }
    }
    auto complex = PearlComplex::from_terms(basis, p.n, N, RingMode::Lambda, terms);
    DifferentialProfile prof{N, p.betti, complex, entries, homology_over_Lambda(complex), ProfileTag::Other, false};
    prof.unit_killed = top_is_boundary(complex);
    if (prof.unit_killed || prof.qh.is_zero()) {
      // The top class is the unit of QH(L): once it is a boundary the whole ring vanishes.
      prof.tag = ProfileTag::Narrow;
      HomologyResult zero;
      zero.mode = RingMode::Lambda;
      zero.min_maslov = N;
      for (std::int64_t i = 0; i < N; ++i) zero.ranks[i] = 0;
      prof.qh = zero;
    } else if (ranks_match_betti(prof.qh, basis)) {
      prof.tag = ProfileTag::Wide;
    }
    out.push_back(std::move(prof));
  }
  return out;
}

std::vector<DifferentialProfile> filter_by_periodicity(const std::vector<DifferentialProfile>& profiles,
                                                       const std::vector<std::int64_t>& shifts, Report* trace) {
  std::vector<DifferentialProfile> out;
  for (const auto& prof : profiles) {
    std::string failure;
    for (auto s : shifts) {
      for (std::int64_t i = 0; i < prof.N && failure.empty(); ++i) {
        if (prof.qh.rank(i) != prof.qh.rank(i + s)) {
          failure = "rank " + std::to_string(prof.qh.rank(i)) + " in degree " + std::to_string(i) + " but " +
                    std::to_string(prof.qh.rank(i + s)) + " in degree " + std::to_string(i + s) + " (shift " +
                    std::to_string(s) + ")";
        }
      }
    }
    if (failure.empty()) {
      out.push_back(prof);
    } else if (trace) {
      trace->trace("  periodicity removes " + prof.describe() + ": " + failure);
    }
  }
  return out;
}

std::vector<DifferentialProfile> apply_nonvanishing_flag(const std::vector<DifferentialProfile>& profiles,
                                                         const ClassificationProblem& p, Report* trace) {
  if (!p.has_flag("nonvanishing")) return profiles;
  std::vector<DifferentialProfile> out;
  for (const auto& prof : profiles) {
    std::string removed;
    for (const auto& cond : p.side_conditions) {
      if (!removed.empty()) break;
      if (cond.even_n_only && p.n % 2 != 0) continue;
      if (cond.kind == SideCondition::Kind::NarrowRequiresN) {
        if (prof.tag == ProfileTag::Narrow && prof.N != cond.N) {
          removed = "narrow forces N_L=" + std::to_string(cond.N) + " but N_L=" + std::to_string(prof.N) +
                    (cond.reason.empty() ? "" : " (" + cond.reason + ")");
        }
      } else if (prof.tag != ProfileTag::Narrow) {
        for (int i = 1; i < p.n && removed.empty(); ++i) {
          if (prof.betti[i] > 0 && !has_point_product_target(prof.betti, p.n, prof.N, i)) {
            removed = "x0∘x" + std::to_string(i) + " has no admissible target, yet (x0∘x0)∘x" + std::to_string(i) +
                      " = x" + std::to_string(i) + "·t^" + std::to_string(2 * p.n / prof.N) + " ≠ 0" +
                      (cond.reason.empty() ? "" : " (" + cond.reason + ")");
          }
        }
      }
    }
    if (removed.empty()) {
      out.push_back(prof);
    } else if (trace) {
      trace->trace("  side condition removes " + prof.describe() + ": " + removed);
    }
  }
  return out;
}

ClassificationOutcome classify(const ClassificationProblem& p, unsigned threads) {
  p.validate();
  ClassificationOutcome outcome;
  Report& rep = outcome.report;
  rep = Report("classify " + p.name);
  rep.trace("problem " + p.name + ": n=" + std::to_string(p.n) + ", betti=" + betti_string(p.betti) +
            (p.ambient.empty() ? "" : ", ambient " + p.ambient));

  std::vector<DifferentialProfile> survivors;
  for (int N : p.candidate_N) {
    auto basis = betti_basis(p.betti, p.n);
    auto slots = admissible_slots(basis, p.n, N);
    std::string slot_text;
    for (const auto& s : slots) {
      slot_text += (slot_text.empty() ? "" : ", ") + std::string("∂") + std::to_string(s.j) + ": " +
                   basis.name(s.from) + "→" + basis.name(s.to);
    }
    rep.trace("N_L=" + std::to_string(N) + ": d = ∂₀ + Σ ∂_j t^j with ∂₀ = 0; admissible slots: " +
              (slots.empty() ? "none (−1+jN_L exceeds every degree gap)" : slot_text));
    auto profiles = enumerate_differentials(p, N, threads);
    for (const auto& prof : profiles) rep.trace("  candidate " + prof.describe());
    survivors.insert(survivors.end(), profiles.begin(), profiles.end());
  }

  std::string shift_text;
  for (auto s : p.shifts) shift_text += (shift_text.empty() ? "" : ", ") + std::to_string(s);
  rep.trace("periodicity from invertible ambient classes: shifts {" + shift_text + "}");
  survivors = filter_by_periodicity(survivors, p.shifts, &rep);

  bool unavailable = false;
  if (p.has_flag("nonvanishing")) {
    for (const auto& cond : p.side_conditions) {
      if (cond.even_n_only && p.n % 2 != 0) {
        unavailable = true;
        rep.trace("side condition unavailable for odd n: " + cond.reason);
      }
    }
    survivors = apply_nonvanishing_flag(survivors, p, &rep);
  }

  for (const auto& prof : survivors) rep.trace("survivor " + prof.describe());
  outcome.survivors = survivors;
  outcome.inconclusive = unavailable;
  rep.data()["survivors"] = survivors.size();
  if (unavailable) {
    rep.inconclusive("conclusion", "a required side condition is not available for n = " + std::to_string(p.n));
    return outcome;
  }
  if (survivors.size() == 1) {
    const auto& s = survivors.front();
    std::string fill = "periodicity fill-in: QH ranks over one period " + ranks_string(s.qh);
    bool constant = true;
    for (std::int64_t i = 1; i < s.N; ++i) constant = constant && s.qh.rank(i) == s.qh.rank(0);
    if (constant) fill = "periodicity fill-in: QH_i ≅ Z₂^" + std::to_string(s.qh.rank(0)) + " for all i";
    rep.trace(fill);
    rep.trace("N_L=" + maslov_name(s.N, p.n) + ", d=" + (s.is_zero() ? std::string("∂₀") : "∂₀+Σ∂_j t^j") + ", " +
              to_string(s.tag));
  }
  if (survivors.empty()) {
    rep.note("excluded", "no admissible differential survives; this Betti profile is ruled out");
  } else {
    rep.check("unique_survivor", survivors.size() == 1, std::to_string(survivors.size()) + " survivors");
  }
  return outcome;
}

ClassificationOutcome classify_family(const std::string& name, const std::vector<ClassificationProblem>& family,
                                      unsigned threads) {
  ClassificationOutcome outcome;
  outcome.report = Report("classify " + name);
  std::vector<std::vector<int>> surviving_betti;
  for (const auto& p : family) {
    auto sub = classify(p, threads);
    for (const auto& line : sub.report.trace_lines()) outcome.report.trace(line);
    outcome.inconclusive = outcome.inconclusive || sub.inconclusive;
    for (auto& s : sub.survivors) {
      surviving_betti.push_back(s.betti);
      outcome.survivors.push_back(std::move(s));
    }
  }
  outcome.report.data()["survivors"] = outcome.survivors.size();
  std::string list;
  for (const auto& b : surviving_betti) list += (list.empty() ? "" : ", ") + betti_string(b);
  outcome.report.trace("surviving Betti profiles: " + (list.empty() ? std::string("none") : list));
  if (outcome.inconclusive) {
    outcome.report.inconclusive("conclusion", "a required side condition is not available");
  } else {
    outcome.report.check("unique_survivor", outcome.survivors.size() == 1,
                         std::to_string(outcome.survivors.size()) + " survivors");
  }
  return outcome;
}

ClassificationProblem rpn_problem(int n) {
  if (n < 1) throw PreconditionError("RP^n needs n >= 1");
  ClassificationProblem p;
  p.name = "rpn " + std::to_string(n);
  p.n = n;
  p.betti.assign(n + 1, 1);
  p.candidate_N = {n + 1, 2 * n + 2};
  p.ambient = "CP" + std::to_string(n);
  p.shifts = {-2};
  p.flags = {"nonvanishing"};
  p.side_conditions.push_back({SideCondition::Kind::NarrowRequiresN, 2 * n + 2, false,
                               "QH = 0 gives H_1(L;Z_2) = 0, so H_1(L;Z) = 0 and N_L = 2C_M"});
  return p;
}

std::vector<ClassificationProblem> quadric_problems(int n) {
  if (n < 2) throw PreconditionError("quadric needs n >= 2");
  // Middle entries b_2..b_{n-2} in {0,1,2}, palindromic; b_1 = b_{n-1} = 0.
  std::vector<ClassificationProblem> out;
  std::vector<int> b(n + 1, 0);
  b[0] = b[n] = 1;
  std::vector<int> positions;
  for (int i = 2; i <= n / 2; ++i) positions.push_back(i);
  std::size_t combos = 1;
  for (std::size_t k = 0; k < positions.size(); ++k) combos *= 3;
  for (std::size_t c = 0; c < combos; ++c) {
    auto bb = b;
    std::size_t code = c;
    for (int i : positions) {
      bb[i] = bb[n - i] = static_cast<int>(code % 3);
      code /= 3;
    }
    ClassificationProblem p;
    p.name = "quadric " + std::to_string(n) + " " + betti_string(bb);
    p.n = n;
    p.betti = bb;
    p.candidate_N = {2 * n};
    p.ambient = "Q" + std::to_string(n);
    p.shifts = {-2 * n};
    p.flags = {"nonvanishing"};
    p.side_conditions.push_back({SideCondition::Kind::UnitSquare, 0, true,
                                 "point class squares to [L]t: three-point Maslov-2n disks, n even"});
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

ObstructionDecision intersection_obstruction(const ObstructionQuery& q) {
  if (q.n < 1) throw PreconditionError("obstruction needs n >= 1");
  if (q.chern < 1) throw PreconditionError("obstruction needs C_M >= 1");
  if (q.NL < 2 || q.NLp < 2) throw PreconditionError("minimal Maslov numbers must be at least 2");
  const auto ring = MixedRing::from_chern(q.chern, q.NL, q.NLp);
  ObstructionDecision out;
  out.report = Report("obstruction");
  out.i_max = (2 * static_cast<std::int64_t>(q.n)) / q.NL;
  auto& rep = out.report;
  rep.trace("Λ_{L,L'}: t0^" + std::to_string(ring.p) + " = t1^" + std::to_string(ring.q) + " (2C_M=" +
            std::to_string(2 * q.chern) + ", N_L=" + std::to_string(q.NL) + ", N_L'=" + std::to_string(q.NLp) + ")");
  rep.trace("j∘i = 0 needs t0^i = t1^r with 1 ≤ i·N_L ≤ 2n, i.e. i in 1.." + std::to_string(out.i_max));
  bool agree = true;
  for (std::int64_t i = 1; i <= out.i_max; ++i) {
    auto m = MixedLaurent::monomial(ring, i, 0);
    const bool pure = m.is_pure_t1();
    agree = agree && pure == mixed_pure_t1_test(i, ring.p);
    if (pure && !out.witness) {
      out.witness = i;
      rep.trace("witness i=" + std::to_string(i) + ": t0^" + std::to_string(i) + " = " + m.to_string());
    }
  }
  out.obstructed = !out.witness.has_value();
  rep.trace(out.obstructed ? "OBSTRUCTED: no t0^i in range is a power of t1, so L ∩ L' ≠ ∅"
                           : "NOT-OBSTRUCTED: witness i=" + std::to_string(*out.witness));
  rep.check("canonical_form_agrees", agree, "canonical form vs divisibility test");
  rep.note("decision", out.obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED");
  rep.data()["decision"] = out.obstructed ? "OBSTRUCTED" : "NOT-OBSTRUCTED";
  rep.data()["i_range"] = {1, out.i_max};
  if (out.witness) rep.data()["witness"] = *out.witness;
  return out;
}

// ---------------------------------------------------------------------------

PackingDecision packing_bound(const std::vector<Rational>& relative_areas, const std::vector<Rational>& absolute_areas,
                              Rational E) {
  if (E <= 0) throw PreconditionError("E must be positive");
  PackingDecision out;
  for (const auto& r : relative_areas) {
    if (r <= 0) throw PreconditionError("ball areas must be positive");
    out.total += r / 2;
  }
  for (const auto& r : absolute_areas) {
    if (r <= 0) throw PreconditionError("ball areas must be positive");
    out.total += r;
  }
  out.slack = E - out.total;
  out.satisfied = out.slack >= 0;
  return out;
}

Rational disk_area_bound(std::int64_t maslov, std::int64_t chern) {
  if (maslov <= 0 || chern <= 0) throw PreconditionError("Maslov index and C_M must be positive");
  return Rational(maslov, 2 * chern);
}

Rational implied_bound(const PackingPreset& p) {
  const auto E = disk_area_bound(p.maslov, p.chern);
  return p.absolute == 0 ? E * 2 : E;
}

std::vector<PackingPreset> packing_presets(int n) {
  if (n < 2) throw PreconditionError("packing presets need n >= 2");
  const std::int64_t c = n + 1;
  std::vector<PackingPreset> out;
  out.push_back({"rpn_complement", c, c, 0, 1, "w(CP^n \\ L) <= 1/2", Rational(1, 2)});
  out.push_back({"clifford_relative", 2, c, 1, 0, "w(T_clif) = 2/(n+1)", Rational(2, c)});
  out.push_back({"clifford_complement", 2 * n, c, 0, 1, "w(CP^n \\ T_clif) = n/(n+1)", Rational(n, c)});
  out.push_back({"cp2_mixed", 4, 3, 1, 1, "pi r^2 + (1/2) pi rho^2 <= 2/3", Rational(2, 3)});
  out.push_back({"quadric_three", 2 * n, n, 3, 0, "pi(rho_1^2 + rho_2^2 + rho_3^2) <= 2", Rational(2)});
  return out;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto v = std::stoll(text, &used);
      if (used != text.size()) throw ParseError("", "not a rational: " + text);
      return Rational(v);
    }
    auto num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw ParseError("", "not a rational: " + text);
    auto den_text = text.substr(slash + 1);
    auto den = std::stoll(den_text, &used);
    if (used != den_text.size() || den == 0) throw ParseError("", "not a rational: " + text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw ParseError("", "not a rational: " + text);
  }
}

}  // namespace pearl::classify
