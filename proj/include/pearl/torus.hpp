#pragma once

// Invariants of monotone Lagrangian 2-tori (N = 2) read off Maslov-2 disk
// counts, and the quantum product table on the basis m, a, b, w.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "pearl/quantum_ops.hpp"
#include "pearl/report.hpp"

namespace pearl::torus {

/// ν(k,l): mod-2 count of Maslov-2 disks through a point with boundary ka' + lb'.
class NuTable {
 public:
  NuTable() = default;
  NuTable(std::initializer_list<std::pair<std::pair<std::int64_t, std::int64_t>, bool>> entries);

  bool get(std::int64_t k, std::int64_t l) const;
  void set(std::int64_t k, std::int64_t l, bool value);
  /// Adds (XOR) a count.
  void add(std::int64_t k, std::int64_t l, bool value = true);
  /// (k,l) ↦ (l,k): swaps the roles of a and b.
  NuTable transposed() const;
  /// Pointwise XOR.
  NuTable operator^(const NuTable& other) const;

  const std::map<std::pair<std::int64_t, std::int64_t>, bool>& entries() const noexcept { return entries_; }

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, bool> entries_;  // only true entries are stored
};

struct TorusQuantumData {
  bool alpha = false;
  bool beta = false;
  /// γ' and γ'' individually depend on the basis.
  std::optional<bool> gamma1;
  std::optional<bool> gamma2;
  bool s1 = false;
  std::optional<bool> s2;

  /// Full data with s1 = γ' + γ'' and s2 = αβ + γ'γ''.
  static TorusQuantumData full(bool alpha, bool beta, bool gamma1, bool gamma2);
  bool has_gammas() const { return gamma1.has_value() && gamma2.has_value(); }
  friend bool operator==(const TorusQuantumData&, const TorusQuantumData&) = default;
};

struct TriangleCounts {
  bool n_A = false;
  bool n_B = false;
  bool n_C = false;
  bool n_Delta = false;
};

/// α = Σ ν·l(l+1)/2, β = Σ ν·k(k+1)/2, s1 = Σ ν·kl, all mod 2.
TorusQuantumData invariants_from_nu(const NuTable& nu);

enum class Ambient { None, CP2, S2xS2 };

/// Basis m (0), a (1), b (1), w (2), unit w, N = 2. With an ambient model the
/// structure also carries the action a ⊛ x = x t^{(4-|a|)/2} and the inclusion
/// determined by ⟨PD(h), i_L(x)⟩ = ε_L(h ⊛ x).
QuantumStructure product_table(const TorusQuantumData& d, Ambient ambient = Ambient::None);

/// Associativity on all 64 triples, degree, unit, and commutativity flagged
/// exactly when s1 = 1.
Report check_table(const QuantumStructure& qs, const TorusQuantumData& d);

/// Constants in the basis ξ₁(m) = m + wt: s2 ↦ s1 + s2 + 1, γ', γ'' ↦ γ' + 1, γ'' + 1.
TorusQuantumData basis_change_xi1(const TorusQuantumData& d);

/// Rewrites a torus table in the basis m + wt, a, b, w.
QuantumStructure transform_xi1(const QuantumStructure& qs);
/// Reads α, β, γ', γ'' back from a table on the basis m, a, b, w.
TorusQuantumData read_constants(const QuantumStructure& qs);

/// s1 = n_A + n_B + n_C; when s1 = 1 also s2 = n_Δ + n_B n_C and n_Δ + n'_Δ = 0.
Report triangle_identities(const TriangleCounts& tc, const TorusQuantumData& d);

/// Classical tables of T² (a ∩ b = m) for the given ambient.
ClassicalTables classical_tables(Ambient ambient);

}  // namespace pearl::torus
