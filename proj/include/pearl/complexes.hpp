#pragma once

// Pearl complexes: a graded Z₂ basis (Morse indices) tensored with Λ or Λ⁺,
// with a differential of degree -1 whose entries are monomials in t.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pearl/gf2.hpp"
#include "pearl/report.hpp"
#include "pearl/rings.hpp"

namespace pearl {

struct Generator {
  std::string name;
  std::int64_t degree = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  /// `manifold_dim` tags the basis as a Morse basis of a closed manifold of
  /// that dimension; `single_maximum` additionally requires one top generator.
  explicit GradedBasis(std::vector<Generator> generators, std::optional<int> manifold_dim = std::nullopt,
                       bool single_maximum = false);

  std::size_t size() const noexcept { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  std::int64_t degree(std::size_t i) const { return gens_[i].degree; }
  const std::string& name(std::size_t i) const { return gens_[i].name; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require_index(const std::string& name) const;
  std::optional<int> manifold_dim() const noexcept { return manifold_dim_; }
  bool single_maximum() const noexcept { return single_maximum_; }
  /// The unique top-degree generator when tagged single-maximum.
  std::optional<std::size_t> top_generator() const;
  std::int64_t min_degree() const;
  std::int64_t max_degree() const;
  /// Number of generators in each degree.
  std::map<std::int64_t, std::size_t> degree_counts() const;

  friend bool operator==(const GradedBasis& a, const GradedBasis& b);

 private:
  std::vector<Generator> gens_;
  std::optional<int> manifold_dim_;
  bool single_maximum_ = false;
};

enum class RingMode { Lambda, LambdaPlus };

std::string to_string(RingMode mode);

/// Square matrix over GradedLaurent, indexed [target][source].
using LaurentMatrix = std::vector<std::vector<GradedLaurent>>;

LaurentMatrix zero_laurent_matrix(std::size_t rows, std::size_t cols, int min_maslov);
LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b, int min_maslov);

struct DiffTerm {
  std::size_t from = 0;
  std::size_t to = 0;
  std::int64_t exponent = 0;
};

/// One element x·tᵏ of a degree slice.
struct SliceElement {
  std::size_t generator = 0;
  std::int64_t power = 0;
  friend bool operator==(const SliceElement&, const SliceElement&) = default;
};

class PearlComplex {
 public:
  PearlComplex(GradedBasis basis, int n, int min_maslov, RingMode mode);
  PearlComplex(GradedBasis basis, int n, int min_maslov, RingMode mode, LaurentMatrix diff);
  /// Builds the differential from terms d(from) ∋ to·t^exponent; repeats cancel mod 2.
  static PearlComplex from_terms(GradedBasis basis, int n, int min_maslov, RingMode mode,
                                 const std::vector<DiffTerm>& terms);

  const GradedBasis& basis() const noexcept { return basis_; }
  int n() const noexcept { return n_; }
  int min_maslov() const noexcept { return min_maslov_; }
  RingMode mode() const noexcept { return mode_; }
  std::size_t size() const noexcept { return basis_.size(); }
  const LaurentMatrix& diff() const noexcept { return diff_; }
  const GradedLaurent& entry(std::size_t to, std::size_t from) const { return diff_[to][from]; }

  PearlComplex with_ring(RingMode mode) const;
  PearlComplex with_diff(LaurentMatrix diff) const;

  /// Largest exponent appearing in the differential (0 when d = 0).
  std::int64_t max_exponent() const;
  /// Z₂-basis {x·tᵏ : |x| - kN = degree}, with k ≥ 0 in Λ⁺ mode.
  std::vector<SliceElement> degree_slice(std::int64_t degree) const;
  /// Matrix of d from the degree slice to the (degree - 1) slice.
  gf2::Matrix slice_differential(std::int64_t degree) const;

 private:
  GradedBasis basis_;
  int n_;
  int min_maslov_;
  RingMode mode_;
  LaurentMatrix diff_;
};

// ---------------------------------------------------------------------------
// Validation and splitting

/// Findings: shape, homogeneity, positivity (Λ⁺ only), d_squared, split_identities.
Report check_differential(const PearlComplex& c);
/// Throws PreconditionError naming the first failed check.
void require_valid(const PearlComplex& c);

/// ∂₀, ∂₁, ... as Z₂ matrices [target][source]; always at least ∂₀.
std::vector<gf2::Matrix> split_differential(const PearlComplex& c);
/// Σ ∂ᵢ tⁱ as a Laurent matrix.
LaurentMatrix reassemble(const std::vector<gf2::Matrix>& parts, int min_maslov);

// ---------------------------------------------------------------------------
// Homology

struct TorsionSummand {
  std::int64_t degree = 0;
  std::int64_t order = 0;  // annihilated by t^order
  friend bool operator==(const TorsionSummand&, const TorsionSummand&) = default;
};

struct HomologyResult {
  RingMode mode = RingMode::Lambda;
  int min_maslov = 2;
  /// Λ: Z₂ rank of H_i for each i in the window [0, N).
  /// Λ⁺: number of free Z₂[t] generators in each degree.
  std::map<std::int64_t, std::int64_t> ranks;
  /// Λ⁺ only, sorted by (degree, order).
  std::vector<TorsionSummand> torsion;

  /// Λ: rank in degree i (extended N-periodically). Λ⁺: free generators in degree i.
  std::int64_t rank(std::int64_t i) const;
  /// Z₂ dimension of H_i (equals rank(i) in Λ mode).
  std::int64_t z2_dimension(std::int64_t i) const;
  /// Sum of ranks over the window (Λ) or number of free generators (Λ⁺).
  std::int64_t total_rank() const;
  bool is_zero() const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

HomologyResult homology_over_Lambda(const PearlComplex& c);
HomologyResult homology_over_Lambda_plus(const PearlComplex& c);
/// Dispatches on the complex's ring mode.
HomologyResult homology(const PearlComplex& c);

/// Structural check that the top class is a cycle with nothing above it.
bool fundamental_class_survives(const PearlComplex& c);

// ---------------------------------------------------------------------------
// Dimension formulas

enum class DimensionFlavor { Prl, Prod, Mod, Inc };

struct DimensionQuery {
  DimensionFlavor flavor = DimensionFlavor::Prl;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;  // |z| for prod, |a| for mod and inc
  std::int64_t mu = 0;
  std::int64_t n = 0;
  int min_maslov = 2;
};

std::int64_t virtual_dimension(const DimensionQuery& q);

// ---------------------------------------------------------------------------
// Chain maps

/// `m` is indexed [dst generator][src generator].
Report verify_chain_map(const PearlComplex& src, const PearlComplex& dst, const LaurentMatrix& m);

/// σ applied entrywise: the Morse complex ∂₀, and checks that σ is a chain
/// map from every Λ⁺ degree slice to the Morse complex.
Report specialization_check(const PearlComplex& c);

// ---------------------------------------------------------------------------
// Degree-filtration spectral sequence

struct SpectralPage {
  int page = 0;
  /// (filtration p, degree i) → dim E_r^{p} in degree i; zero cells omitted.
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> dims;
  /// d_r from cell (p, i) to (p + r, i - 1), in the chosen representative bases.
  std::map<std::pair<std::int64_t, std::int64_t>, gf2::Matrix> differentials;

  std::size_t dimension(std::int64_t p, std::int64_t degree) const;
  /// Σ_p dim E_r^p in the given degree.
  std::size_t degree_total(std::int64_t degree) const;
  std::size_t total() const;
};

struct SpectralSequence {
  std::int64_t min_degree = 0;
  std::int64_t max_degree = 0;
  std::vector<SpectralPage> pages;
  SpectralPage infinity;
  /// First page whose dimensions agree with E^∞ on every cell.
  std::optional<int> collapse_page;
};

/// Pages E_0..E_max_page of the t-adic filtration over degrees
/// [min|x| - T·N, max|x|], T = 1 + (max exponent)·(number of generators).
SpectralSequence spectral_sequence(const PearlComplex& c, int max_page);

/// Findings: page0_is_morse (E⁰ differential equals ∂₀), page_homology
/// (E_{r+1} = H(E_r)), infinity_matches_homology.
Report check_spectral_sequence(const PearlComplex& c, const SpectralSequence& ss);

}  // namespace pearl
