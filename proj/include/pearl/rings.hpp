#pragma once

// Coefficient rings over Z₂: the graded Laurent ring Λ = Z₂[t, t⁻¹] with
// deg t = -N, its positive part Λ⁺ = Z₂[t], the Novikov-type ring Γ (same
// class with deg s = -2C_M), the semigroup ring of positive disk classes, and
// the mixed ring Z₂[t₀^±, t₁^±]/(t₀^p = t₁^q).
//
// All values are immutable once built; every operation returns a new value.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "pearl/errors.hpp"

namespace pearl {

using Rational = boost::rational<std::int64_t>;

/// Largest support any ring element may reach before operations throw TooLargeError.
std::size_t max_support_terms() noexcept;
void set_max_support_terms(std::size_t cap) noexcept;

// ---------------------------------------------------------------------------
// GradedLaurent

/// Element of Z₂[t, t⁻¹] with deg t = -N. Stored as the sorted set of
/// exponents carrying a nonzero coefficient.
class GradedLaurent {
 public:
  /// The zero element of the ring with minimal Maslov number `min_maslov`.
  explicit GradedLaurent(int min_maslov);

  static GradedLaurent monomial(int min_maslov, std::int64_t exponent);
  static GradedLaurent one(int min_maslov) { return monomial(min_maslov, 0); }
  /// Sums t^e over `exponents`; repeated exponents cancel in pairs.
  static GradedLaurent from_exponents(int min_maslov, std::vector<std::int64_t> exponents);

  int min_maslov() const noexcept { return min_maslov_; }
  int var_degree() const noexcept { return -min_maslov_; }
  const std::vector<std::int64_t>& support() const noexcept { return support_; }

  bool is_zero() const noexcept { return support_.empty(); }
  bool is_homogeneous() const noexcept { return support_.size() <= 1; }
  bool is_monomial() const noexcept { return support_.size() == 1; }
  /// Exponent of a monomial; nullopt for zero or a multi-term element.
  std::optional<std::int64_t> exponent() const;
  /// Smallest exponent in the support; nullopt for zero.
  std::optional<std::int64_t> valuation() const;
  bool coefficient(std::int64_t exponent) const;
  bool has_negative_exponents() const noexcept {
    return !support_.empty() && support_.front() < 0;
  }

  /// Multiplication by t^k.
  GradedLaurent shifted(std::int64_t k) const;

  GradedLaurent& operator+=(const GradedLaurent& other);
  GradedLaurent& operator*=(const GradedLaurent& other);
  friend GradedLaurent operator+(GradedLaurent a, const GradedLaurent& b) { return a += b; }
  friend GradedLaurent operator*(const GradedLaurent& a, const GradedLaurent& b);
  friend bool operator==(const GradedLaurent& a, const GradedLaurent& b) {
    return a.min_maslov_ == b.min_maslov_ && a.support_ == b.support_;
  }

  /// `t^-1 + t^3` style; zero prints as `0`, t⁰ as `1`.
  std::string to_string() const;
  static GradedLaurent parse(std::string_view text, int min_maslov);

 private:
  GradedLaurent(int min_maslov, std::vector<std::int64_t> sorted_support);
  void require_same_ring(const GradedLaurent& other) const;

  int min_maslov_;
  std::vector<std::int64_t> support_;
};

inline GradedLaurent laurent_add(const GradedLaurent& a, const GradedLaurent& b) { return a + b; }
inline GradedLaurent laurent_mul(const GradedLaurent& a, const GradedLaurent& b) { return a * b; }

/// Degree of a·g where g is a generator of degree `generator_degree`:
/// g - kN for a = t^k. Returns nullopt when `a` is not a single monomial.
std::optional<std::int64_t> degree_of(const GradedLaurent& a, std::int64_t generator_degree);

/// Image of s^power under Γ ↪ Λ, s ↦ t^{2C_M/N}.
GradedLaurent gamma_embed(std::int64_t s_power, int chern, int min_maslov);

// ---------------------------------------------------------------------------
// PositiveLaurent

/// Element of Λ⁺ = Z₂[t]: a GradedLaurent with no negative exponents.
class PositiveLaurent {
 public:
  explicit PositiveLaurent(GradedLaurent value);
  static PositiveLaurent zero(int min_maslov) { return PositiveLaurent(GradedLaurent(min_maslov)); }

  const GradedLaurent& value() const noexcept { return value_; }

  friend PositiveLaurent operator+(const PositiveLaurent& a, const PositiveLaurent& b) {
    return PositiveLaurent(a.value_ + b.value_);
  }
  friend PositiveLaurent operator*(const PositiveLaurent& a, const PositiveLaurent& b) {
    return PositiveLaurent(a.value_ * b.value_);
  }
  friend bool operator==(const PositiveLaurent& a, const PositiveLaurent& b) {
    return a.value_ == b.value_;
  }

 private:
  GradedLaurent value_;
};

/// t ↦ 0.
bool specialize_sigma(const PositiveLaurent& a);

// ---------------------------------------------------------------------------
// Disk classes: Z₂[H₂ᴰ(M,L)⁺] with a unit adjoined.

using LatticeVector = std::vector<std::int64_t>;

/// Lattice H₂ᴰ(M,L) ≅ Zʳ with Maslov and area functionals. The area functional
/// is kept only to validate monotonicity area = τ·μ.
class DiskClassLattice {
 public:
  DiskClassLattice(std::vector<std::int64_t> maslov, std::vector<Rational> area, Rational tau,
                   int min_maslov);

  std::size_t rank() const noexcept { return maslov_.size(); }
  int min_maslov() const noexcept { return min_maslov_; }
  const Rational& tau() const noexcept { return tau_; }
  std::int64_t maslov_of(const LatticeVector& cls) const;
  Rational area_of(const LatticeVector& cls) const;

  friend bool operator==(const DiskClassLattice& a, const DiskClassLattice& b) {
    return a.maslov_ == b.maslov_ && a.area_ == b.area_ && a.tau_ == b.tau_ &&
           a.min_maslov_ == b.min_maslov_;
  }

 private:
  std::vector<std::int64_t> maslov_;
  std::vector<Rational> area_;
  Rational tau_;
  int min_maslov_;
};

class DiskClassElement {
 public:
  using LatticePtr = std::shared_ptr<const DiskClassLattice>;

  static DiskClassElement zero(LatticePtr lattice);
  /// T⁰, identified with the adjoined unit.
  static DiskClassElement one(LatticePtr lattice);
  /// T^A; throws InvalidClassError unless A = 0 or μ(A) > 0.
  static DiskClassElement monomial(LatticePtr lattice, LatticeVector cls);

  const DiskClassLattice& lattice() const noexcept { return *lattice_; }
  const LatticePtr& lattice_ptr() const noexcept { return lattice_; }
  const std::vector<LatticeVector>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend DiskClassElement operator+(const DiskClassElement& a, const DiskClassElement& b);
  friend DiskClassElement operator*(const DiskClassElement& a, const DiskClassElement& b);
  friend bool operator==(const DiskClassElement& a, const DiskClassElement& b);

  /// `T[1,0] + T[0,2]`; the unit prints as `1`, zero as `0`.
  std::string to_string() const;
  static DiskClassElement parse(std::string_view text, LatticePtr lattice);

 private:
  DiskClassElement(LatticePtr lattice, std::vector<LatticeVector> terms);
  static DiskClassElement from_multiset(LatticePtr lattice, std::vector<LatticeVector> terms);
  void require_same_lattice(const DiskClassElement& other) const;

  LatticePtr lattice_;
  std::vector<LatticeVector> terms_;
};

/// q(T^A) = t^{μ(A)/N}.
GradedLaurent specialize_q(const DiskClassElement& e);

// ---------------------------------------------------------------------------
// Mixed ring Λ_{L,L'}

/// Z₂[t₀^±, t₁^±]/(t₀^p = t₁^q) with deg t₀ = -N₀, deg t₁ = -N₁, pN₀ = qN₁.
struct MixedRing {
  std::int64_t p = 1;
  std::int64_t q = 1;
  std::int64_t n0 = 1;
  std::int64_t n1 = 1;

  /// Ring with the coarsest consistent grading N₀ = q, N₁ = p.
  static MixedRing from_relation(std::int64_t p, std::int64_t q);
  /// p = 2C_M/N_L, q = 2C_M/N_L'.
  static MixedRing from_chern(int chern, int min_maslov_l, int min_maslov_lp);

  friend bool operator==(const MixedRing&, const MixedRing&) = default;
};

class MixedLaurent {
 public:
  using Exponents = std::pair<std::int64_t, std::int64_t>;

  explicit MixedLaurent(MixedRing ring) : ring_(ring) {}
  static MixedLaurent monomial(MixedRing ring, std::int64_t i, std::int64_t j);
  static MixedLaurent one(MixedRing ring) { return monomial(ring, 0, 0); }

  /// Normal form: t₀-exponent reduced into [0, p), the quotient moved to t₁.
  static Exponents canonical(const MixedRing& ring, std::int64_t i, std::int64_t j);

  const MixedRing& ring() const noexcept { return ring_; }
  const std::vector<Exponents>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Degree of a canonical monomial t₀ⁱt₁ʲ: -iN₀ - jN₁.
  std::int64_t monomial_degree(const Exponents& e) const { return -e.first * ring_.n0 - e.second * ring_.n1; }
  /// True when the element is a single monomial t₁ʳ.
  bool is_pure_t1() const;

  friend MixedLaurent operator+(const MixedLaurent& a, const MixedLaurent& b);
  friend MixedLaurent operator*(const MixedLaurent& a, const MixedLaurent& b);
  friend bool operator==(const MixedLaurent& a, const MixedLaurent& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// `t0^2*t1 + t1^-3`; unit prints as `1`, zero as `0`.
  std::string to_string() const;
  static MixedLaurent parse(std::string_view text, MixedRing ring);

 private:
  static MixedLaurent from_multiset(MixedRing ring, std::vector<Exponents> terms);
  void require_same_ring(const MixedLaurent& other) const;

  MixedRing ring_;
  std::vector<Exponents> terms_;
};

inline MixedLaurent mixed_mul(const MixedLaurent& a, const MixedLaurent& b) { return a * b; }

/// Whether t₀ⁱ (i ≥ 1) lies in the image of Λ_{L'}, i.e. p | i.
bool mixed_pure_t1_test(std::int64_t i, std::int64_t p);

}  // namespace pearl
