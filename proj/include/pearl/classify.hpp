#pragma once

// Classification of homology-level pearl differentials by degree and
// periodicity constraints, the intersection obstruction in ℂPⁿ, and packing
// inequalities.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "pearl/complexes.hpp"
#include "pearl/report.hpp"

namespace pearl::classify {

/// Implication supplied by the caller; the engine only applies it.
struct SideCondition {
  enum class Kind {
    /// A narrow profile is possible only when N equals `N`.
    NarrowRequiresN,
    /// The point class squares to [L]t^{2n/N}; kills profiles with b_i > 0
    /// for 0 < i < n whenever no degree slot can receive x₀ ∘ x_i.
    UnitSquare,
  };
  Kind kind = Kind::NarrowRequiresN;
  int N = 0;
  /// Certified only for even n (the condition is unavailable for odd n).
  bool even_n_only = false;
  std::string reason;
};

struct ClassificationProblem {
  std::string name;
  int n = 0;
  std::vector<int> betti;
  std::vector<int> candidate_N;
  std::string ambient;
  /// Degree shifts q - 2n of certified invertible ambient classes.
  std::vector<std::int64_t> shifts;
  /// "nonvanishing" enables the side conditions.
  std::vector<std::string> flags;
  std::vector<SideCondition> side_conditions;
  std::size_t max_bits = 24;

  bool has_flag(const std::string& f) const;
  void validate() const;
};

enum class ProfileTag { Wide, Narrow, Other };
std::string to_string(ProfileTag tag);

/// One slot: d(from) ∋ to · t^j.
struct Slot {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t j = 0;
};

struct DifferentialProfile {
  int N = 0;
  std::vector<int> betti;
  PearlComplex complex;
  std::vector<Slot> entries;
  HomologyResult qh;
  ProfileTag tag = ProfileTag::Other;
  bool unit_killed = false;

  bool is_zero() const { return entries.empty(); }
  std::string describe() const;
};

/// Generators "x<i>" (or "x<i>_<k>" when b_i > 1), in decreasing degree.
GradedBasis betti_basis(const std::vector<int>& betti, int n);
/// All admissible ∂_j slots, j ≥ 1, for the Betti basis.
std::vector<Slot> admissible_slots(const GradedBasis& basis, int n, int N);

/// ∂₀ = 0 and every Z₂ choice on the admissible slots with d² = 0, in
/// increasing assignment order. Throws TooLargeError past max_bits.
std::vector<DifferentialProfile> enumerate_differentials(const ClassificationProblem& p, int N,
                                                         unsigned threads = 0);

/// Keeps profiles whose rank function is invariant under every shift.
std::vector<DifferentialProfile> filter_by_periodicity(const std::vector<DifferentialProfile>& profiles,
                                                       const std::vector<std::int64_t>& shifts, Report* trace = nullptr);

/// Applies the side conditions when the problem has the "nonvanishing" flag.
std::vector<DifferentialProfile> apply_nonvanishing_flag(const std::vector<DifferentialProfile>& profiles,
                                                         const ClassificationProblem& p, Report* trace = nullptr);

struct ClassificationOutcome {
  std::vector<DifferentialProfile> survivors;
  /// Inconclusive when a needed side condition is unavailable.
  bool inconclusive = false;
  Report report;
};

ClassificationOutcome classify(const ClassificationProblem& p, unsigned threads = 0);
/// Runs every problem of a family (e.g. several Betti candidates) and merges survivors.
ClassificationOutcome classify_family(const std::string& name, const std::vector<ClassificationProblem>& family,
                                      unsigned threads = 0);

/// Betti numbers b₀..bₙ, all 1; N ∈ {n+1, 2n+2}; h gives shift -2.
ClassificationProblem rpn_problem(int n);
/// Candidates with b₀ = bₙ = 1, b₁ = b_{n-1} = 0, b_i = b_{n-i} ≤ 2; N = 2n; [pt] gives shift -2n.
std::vector<ClassificationProblem> quadric_problems(int n);

// ---------------------------------------------------------------------------
// Intersection obstruction

struct ObstructionQuery {
  int n = 0;
  /// C_M; ℂPⁿ has C_M = n + 1.
  int chern = 0;
  int NL = 0;
  int NLp = 0;
  static ObstructionQuery cpn(int n, int NL, int NLp) { return {n, n + 1, NL, NLp}; }
};

struct ObstructionDecision {
  bool obstructed = false;
  std::optional<std::int64_t> witness;
  std::int64_t i_max = 0;
  Report report;
};

/// Obstructed iff no i with 1 ≤ i·N_L ≤ 2n makes t₀ⁱ a pure power of t₁.
ObstructionDecision intersection_obstruction(const ObstructionQuery& q);

// ---------------------------------------------------------------------------
// Packing

using Rational = boost::rational<std::int64_t>;

struct PackingDecision {
  bool satisfied = false;
  Rational total;
  Rational slack;
};

/// Σ πrᵢ²/2 + Σ πρⱼ² ≤ E with all areas given as multiples of π.
PackingDecision packing_bound(const std::vector<Rational>& relative_areas, const std::vector<Rational>& absolute_areas,
                              Rational E);

/// Area bound of a Maslov-μ disk in a manifold with the line of area π: E = μ / (2 C_M).
Rational disk_area_bound(std::int64_t maslov, std::int64_t chern);

struct PackingPreset {
  std::string name;
  std::int64_t maslov = 0;
  std::int64_t chern = 0;
  std::size_t relative = 0;
  std::size_t absolute = 0;
  /// Closed-form inequality for this configuration, kept verbatim.
  std::string literal;
  /// Closed-form bound for the sum of the listed ball areas.
  Rational stated_bound;
};

/// Bound on Σ areas implied by the general inequality: 2E for relative balls
/// only, E otherwise (with relative areas halved).
Rational implied_bound(const PackingPreset& p);

/// rpn_complement(n), clifford_relative(n), clifford_complement(n), cp2_mixed, quadric_three(n).
std::vector<PackingPreset> packing_presets(int n);

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

}  // namespace pearl::classify
