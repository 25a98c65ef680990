#pragma once

// Quantum product, module action and quantum inclusion stored as structure
// constants on homology bases, together with checks of the identities they
// must satisfy and models of the ambient quantum homology rings.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pearl/complexes.hpp"
#include "pearl/gf2.hpp"
#include "pearl/report.hpp"
#include "pearl/rings.hpp"

namespace pearl {

/// Coefficients over Λ on a fixed basis.
using ClassVector = std::vector<GradedLaurent>;
/// table[i][j] = (basis i) · (basis j).
using StructureTable = std::vector<std::vector<ClassVector>>;

ClassVector zero_class(std::size_t size, int min_maslov);
ClassVector basis_class(std::size_t size, std::size_t index, int min_maslov);
ClassVector scale(const ClassVector& v, const GradedLaurent& c);
ClassVector add(const ClassVector& a, const ClassVector& b);
bool is_zero(const ClassVector& v);
/// True when every coefficient c_g is zero or t^e with |g| - eN = degree.
bool is_homogeneous_of_degree(const ClassVector& v, const GradedBasis& basis, int min_maslov, std::int64_t degree);
std::string format_class(const ClassVector& v, const GradedBasis& basis);

/// Bilinear extension of a structure table.
ClassVector bilinear_apply(const StructureTable& table, const ClassVector& u, const ClassVector& v,
                           std::size_t out_size, int min_maslov);

// ---------------------------------------------------------------------------
// Ambient models

struct GammaTerm {
  std::size_t generator = 0;
  std::int64_t s_power = 0;
};

struct InvertibleClass {
  std::size_t index = 0;
  /// Inverse over Λ when the model has a product table.
  std::optional<ClassVector> inverse;
};

struct AmbientModel {
  std::string name;
  int n = 0;      // complex dimension; the real dimension is 2n
  int chern = 0;  // C_M, deg s = -2C_M
  int min_maslov = 2;
  GradedBasis basis;
  std::size_t unit = 0;
  /// Product over Γ; empty when the model certifies no product table.
  std::vector<std::vector<std::vector<GammaTerm>>> gamma_product;
  /// The same product pushed to Λ by s ↦ t^{2C_M/N}.
  StructureTable product;
  std::vector<InvertibleClass> invertibles;
  /// pairing[h][k] = ⟨PD(h), k⟩.
  gf2::Matrix pairing;

  std::size_t size() const { return basis.size(); }
  bool has_product() const { return !product.empty(); }
  ClassVector multiply(const ClassVector& u, const ClassVector& v) const;
  bool is_certified_invertible(std::size_t index) const;
  /// ⟨PD(h), c⟩ for a class c of QH(M; Λ).
  GradedLaurent kronecker(std::size_t h, const ClassVector& c) const;
};

/// QH(ℂPⁿ): basis h^j (degree 2n - 2j), h^i*h^j = h^{i+j} or s·h^{i+j-n-1}.
AmbientModel ambient_cpn(int n, int min_maslov);
/// Quadric Qⁿ ⊂ ℂP^{n+1}, C_M = n: only [Q] and the invertible point class.
AmbientModel ambient_quadric(int n, int min_maslov);
/// S² × S², C_M = 2: basis [M], A, B, [pt].
AmbientModel ambient_s2xs2(int min_maslov);

/// Associativity, commutativity, unit law, and inverses of certified classes.
Report check_ambient_axioms(const AmbientModel& amb);

// ---------------------------------------------------------------------------
// Lagrangian structures

struct QuantumStructure {
  std::string name;
  GradedBasis basis;
  int n = 0;
  int min_maslov = 2;
  std::size_t unit = 0;
  StructureTable product;
  std::optional<AmbientModel> ambient;
  /// action[a][x] = a ⊛ x, a over the ambient basis.
  std::optional<StructureTable> action;
  /// inclusion[x] = i_L(x) in ambient coordinates.
  std::optional<std::vector<ClassVector>> inclusion;

  std::size_t size() const { return basis.size(); }
};

ClassVector product_apply(const QuantumStructure& qs, const ClassVector& u, const ClassVector& v);
ClassVector module_apply(const QuantumStructure& qs, const ClassVector& a, const ClassVector& x);
ClassVector inclusion_apply(const QuantumStructure& qs, const ClassVector& x);

/// Findings: shape, degree, unit, associativity; commutativity is a note
/// (data "commutative").
Report check_product_axioms(const QuantumStructure& qs);
/// Findings: degree, unit_action, module_associativity, two_sided_algebra.
Report check_module_axioms(const QuantumStructure& qs, const AmbientModel& amb);
/// Findings: degree, module_map, point_coefficient (⟨PD([M]), i_L(x)⟩ = ε_L(x)).
Report check_inclusion(const QuantumStructure& qs, const AmbientModel& amb);

/// ε_L: sum of the coefficients on degree-0 generators.
GradedLaurent augmentation(const QuantumStructure& qs, const ClassVector& x);

struct DualityData {
  /// pairing[x][y] = ε_L(x ∘ y).
  std::vector<std::vector<GradedLaurent>> pairing;
  std::size_t rank = 0;
  bool invertible = false;
  Report report;
};

DualityData duality_build(const QuantumStructure& qs);

/// Findings: incl_mod and mod_inclusion on all basis tuples. `pd` is indexed
/// [ambient h][ambient k] = ⟨PD(h), k⟩.
Report check_incl_mod_identities(const QuantumStructure& qs, const AmbientModel& amb, const gf2::Matrix& pd);

/// rank(i) = rank(i + q - 2n) for the invertible class at `index` of degree q.
Report invertible_action_periodicity(const AmbientModel& amb, std::size_t index, const HomologyResult& hom);

/// Classical Z₂ tables: intersection product, H(M)-action and inclusion.
struct ClassicalTables {
  std::optional<std::vector<std::vector<gf2::BitVector>>> intersection;
  std::optional<std::vector<std::vector<gf2::BitVector>>> action;
  std::optional<std::vector<gf2::BitVector>> inclusion;
};

/// σ(x∘y) = x∩y, σ(a⊛x) = a∩x, σ(i_L(x)) = i(x) after t ↦ 0.
Report specialization_compat(const QuantumStructure& qs, const ClassicalTables& classical);

/// Runs every applicable structure check and merges the results.
Report verify_structure(const QuantumStructure& qs);

}  // namespace pearl
