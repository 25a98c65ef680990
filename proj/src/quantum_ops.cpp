#include "pearl/quantum_ops.hpp"

#include <sstream>

namespace pearl {

// ---------------------------------------------------------------------------
// Class vectors

ClassVector zero_class(std::size_t size, int min_maslov) { return ClassVector(size, GradedLaurent(min_maslov)); }

ClassVector basis_class(std::size_t size, std::size_t index, int min_maslov) {
  auto v = zero_class(size, min_maslov);
  v.at(index) = GradedLaurent::one(min_maslov);
  return v;
}

ClassVector scale(const ClassVector& v, const GradedLaurent& c) {
  ClassVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x * c);
  return out;
}

ClassVector add(const ClassVector& a, const ClassVector& b) {
  if (a.size() != b.size()) throw PreconditionError("class vectors have different lengths");
  ClassVector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

bool is_zero(const ClassVector& v) {
  for (const auto& c : v) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool is_homogeneous_of_degree(const ClassVector& v, const GradedBasis& basis, int min_maslov, std::int64_t degree) {
  if (v.size() != basis.size()) return false;
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v[g].is_zero()) continue;
    auto d = degree_of(v[g], basis.degree(g));
    if (!d || *d != degree || v[g].min_maslov() != min_maslov) return false;
  }
  return true;
}

std::string format_class(const ClassVector& v, const GradedBasis& basis) {
  std::string out;
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v[g].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (v[g] == GradedLaurent::one(v[g].min_maslov())) {
      out += basis.name(g);
    } else if (v[g].is_monomial()) {
      out += basis.name(g) + "*" + v[g].to_string();
    } else {
      out += basis.name(g) + "*(" + v[g].to_string() + ")";
    }
  }
  return out.empty() ? "0" : out;
}

ClassVector bilinear_apply(const StructureTable& table, const ClassVector& u, const ClassVector& v,
                           std::size_t out_size, int min_maslov) {
  if (u.size() != table.size()) throw PreconditionError("left operand does not match the table basis");
  auto out = zero_class(out_size, min_maslov);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    if (v.size() != table[i].size()) throw PreconditionError("right operand does not match the table basis");
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j].is_zero()) continue;
      const auto coeff = u[i] * v[j];
      const auto& entry = table[i][j];
      if (entry.size() != out_size) throw PreconditionError("table entry has the wrong length");
      for (std::size_t k = 0; k < out_size; ++k) {
        if (!entry[k].is_zero()) out[k] += coeff * entry[k];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ambient models

ClassVector AmbientModel::multiply(const ClassVector& u, const ClassVector& v) const {
  if (!has_product()) throw PreconditionError(name + " has no certified product table");
  return bilinear_apply(product, u, v, size(), min_maslov);
}

bool AmbientModel::is_certified_invertible(std::size_t index) const {
  for (const auto& inv : invertibles) {
    if (inv.index == index) return true;
  }
  return false;
}

GradedLaurent AmbientModel::kronecker(std::size_t h, const ClassVector& c) const {
  GradedLaurent out(min_maslov);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (pairing.get(h, k)) out += c[k];
  }
  return out;
}

namespace {

StructureTable push_to_lambda(const AmbientModel& amb) {
  StructureTable table;
  for (const auto& row : amb.gamma_product) {
    std::vector<ClassVector> out_row;
    for (const auto& entry : row) {
      auto v = zero_class(amb.size(), amb.min_maslov);
      for (const auto& term : entry) v[term.generator] += gamma_embed(term.s_power, amb.chern, amb.min_maslov);
      out_row.push_back(std::move(v));
    }
    table.push_back(std::move(out_row));
  }
  return table;
}

}  // namespace

AmbientModel ambient_cpn(int n, int min_maslov) {
  if (n < 1) throw PreconditionError("CP^n needs n >= 1");
  AmbientModel amb;
  amb.name = "CP" + std::to_string(n);
  amb.n = n;
  amb.chern = n + 1;
  amb.min_maslov = min_maslov;
  gamma_embed(0, amb.chern, min_maslov);  // validates N | 2(n+1)
  std::vector<Generator> gens;
  for (int j = 0; j <= n; ++j) gens.push_back({"h^" + std::to_string(j), 2 * n - 2 * j});
  amb.basis = GradedBasis(gens);
  amb.unit = 0;
  const auto size = static_cast<std::size_t>(n + 1);
  amb.gamma_product.assign(size, std::vector<std::vector<GammaTerm>>(size));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i + j <= n) {
        amb.gamma_product[i][j] = {{static_cast<std::size_t>(i + j), 0}};
      } else {
        amb.gamma_product[i][j] = {{static_cast<std::size_t>(i + j - n - 1), 1}};
      }
    }
  }
  amb.product = push_to_lambda(amb);
  const auto s_inv = gamma_embed(-1, amb.chern, min_maslov);
  amb.invertibles.push_back({0, basis_class(size, 0, min_maslov)});
  // h * h^n = s[M] and [pt] * h = s[M].
  amb.invertibles.push_back({1, scale(basis_class(size, static_cast<std::size_t>(n), min_maslov), s_inv)});
  if (n > 1) {
    amb.invertibles.push_back({static_cast<std::size_t>(n), scale(basis_class(size, 1, min_maslov), s_inv)});
  }
  amb.pairing = gf2::Matrix(size, size);
  for (std::size_t j = 0; j < size; ++j) amb.pairing.set(j, size - 1 - j);
  return amb;
}

AmbientModel ambient_quadric(int n, int min_maslov) {
  if (n < 2) throw PreconditionError("quadric needs n >= 2");
  AmbientModel amb;
  amb.name = "Q" + std::to_string(n);
  amb.n = n;
  amb.chern = n;
  amb.min_maslov = min_maslov;
  gamma_embed(0, amb.chern, min_maslov);
  amb.basis = GradedBasis({{"[Q]", 2 * n}, {"[pt]", 0}});
  amb.unit = 0;
  amb.invertibles.push_back({0, std::nullopt});
  amb.invertibles.push_back({1, std::nullopt});
  amb.pairing = gf2::Matrix(2, 2);
  amb.pairing.set(0, 1);
  amb.pairing.set(1, 0);
  return amb;
}

AmbientModel ambient_s2xs2(int min_maslov) {
  AmbientModel amb;
  amb.name = "S2xS2";
  amb.n = 2;
  amb.chern = 2;
  amb.min_maslov = min_maslov;
  gamma_embed(0, amb.chern, min_maslov);
  amb.basis = GradedBasis({{"[M]", 4}, {"A", 2}, {"B", 2}, {"[pt]", 0}});
  amb.unit = 0;
  enum { M, A, B, P };
  amb.gamma_product.assign(4, std::vector<std::vector<GammaTerm>>(4));
  for (std::size_t x = 0; x < 4; ++x) {
    amb.gamma_product[M][x] = {{x, 0}};
    amb.gamma_product[x][M] = {{x, 0}};
  }
  amb.gamma_product[A][A] = {{M, 1}};
  amb.gamma_product[B][B] = {{M, 1}};
  amb.gamma_product[A][B] = {{P, 0}};
  amb.gamma_product[B][A] = {{P, 0}};
  amb.gamma_product[A][P] = {{B, 1}};
  amb.gamma_product[P][A] = {{B, 1}};
  amb.gamma_product[B][P] = {{A, 1}};
  amb.gamma_product[P][B] = {{A, 1}};
  amb.gamma_product[P][P] = {{M, 2}};
  amb.product = push_to_lambda(amb);
  const auto s_inv = gamma_embed(-1, amb.chern, min_maslov);
  const auto s_inv2 = gamma_embed(-2, amb.chern, min_maslov);
  amb.invertibles.push_back({M, basis_class(4, M, min_maslov)});
  amb.invertibles.push_back({A, scale(basis_class(4, A, min_maslov), s_inv)});
  amb.invertibles.push_back({B, scale(basis_class(4, B, min_maslov), s_inv)});
  amb.invertibles.push_back({P, scale(basis_class(4, P, min_maslov), s_inv2)});
  amb.pairing = gf2::Matrix(4, 4);
  amb.pairing.set(M, P);
  amb.pairing.set(P, M);
  amb.pairing.set(A, B);
  amb.pairing.set(B, A);
  return amb;
}

Report check_ambient_axioms(const AmbientModel& amb) {
  Report rep("ambient " + amb.name);
  const int N = amb.min_maslov;
  if (!amb.has_product()) {
    rep.note("product", "no certified product table");
    for (const auto& inv : amb.invertibles) {
      rep.note("invertible " + amb.basis.name(inv.index), "declared invertible");
    }
    return rep;
  }
  const std::size_t m = amb.size();
  const std::int64_t dim2 = 2 * amb.n;
  bool degree = true, assoc = true, comm = true, unit = true;
  for (std::size_t i = 0; i < m; ++i) {
    auto ei = basis_class(m, i, N);
    auto left = amb.multiply(basis_class(m, amb.unit, N), ei);
    auto right = amb.multiply(ei, basis_class(m, amb.unit, N));
    if (!(left == ei) || !(right == ei)) unit = false;
    for (std::size_t j = 0; j < m; ++j) {
      auto ej = basis_class(m, j, N);
      auto ij = amb.multiply(ei, ej);
      if (!is_homogeneous_of_degree(ij, amb.basis, N, amb.basis.degree(i) + amb.basis.degree(j) - dim2)) {
        degree = false;
      }
      if (!(ij == amb.multiply(ej, ei))) comm = false;
      for (std::size_t k = 0; k < m; ++k) {
        auto ek = basis_class(m, k, N);
        if (!(amb.multiply(ij, ek) == amb.multiply(ei, amb.multiply(ej, ek)))) assoc = false;
      }
    }
  }
  rep.check("degree", degree);
  rep.check("unit", unit);
  rep.check("associativity", assoc);
  rep.check("commutativity", comm);
  for (const auto& inv : amb.invertibles) {
    if (!inv.inverse) continue;
    auto prod = amb.multiply(basis_class(m, inv.index, N), *inv.inverse);
    rep.check("inverse " + amb.basis.name(inv.index), prod == basis_class(m, amb.unit, N),
              amb.basis.name(inv.index) + " * (" + format_class(*inv.inverse, amb.basis) + ") = " +
                  format_class(prod, amb.basis));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lagrangian structures

ClassVector product_apply(const QuantumStructure& qs, const ClassVector& u, const ClassVector& v) {
  if (u.size() != qs.size() || v.size() != qs.size()) throw PreconditionError("class not expressed in the Lagrangian basis");
  return bilinear_apply(qs.product, u, v, qs.size(), qs.min_maslov);
}

ClassVector module_apply(const QuantumStructure& qs, const ClassVector& a, const ClassVector& x) {
  if (!qs.action || !qs.ambient) throw PreconditionError("structure has no module action");
  if (a.size() != qs.ambient->size()) throw PreconditionError("class not expressed in the ambient basis");
  if (x.size() != qs.size()) throw PreconditionError("class not expressed in the Lagrangian basis");
  return bilinear_apply(*qs.action, a, x, qs.size(), qs.min_maslov);
}

ClassVector inclusion_apply(const QuantumStructure& qs, const ClassVector& x) {
  if (!qs.inclusion || !qs.ambient) throw PreconditionError("structure has no quantum inclusion");
  if (x.size() != qs.size()) throw PreconditionError("class not expressed in the Lagrangian basis");
  auto out = zero_class(qs.ambient->size(), qs.min_maslov);
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (!x[g].is_zero()) out = add(out, scale((*qs.inclusion)[g], x[g]));
  }
  return out;
}

namespace {

bool table_shape_ok(const StructureTable& t, std::size_t rows, std::size_t cols, std::size_t out) {
  if (t.size() != rows) return false;
  for (const auto& row : t) {
    if (row.size() != cols) return false;
    for (const auto& e : row) {
      if (e.size() != out) return false;
    }
  }
  return true;
}

}  // namespace

Report check_product_axioms(const QuantumStructure& qs) {
  Report rep("product");
  const std::size_t m = qs.size();
  const int N = qs.min_maslov;
  bool shape = table_shape_ok(qs.product, m, m, m) && qs.unit < m;
  rep.check("shape", shape);
  if (!shape) return rep;

  std::string degree_detail, unit_detail, assoc_detail;
  std::vector<std::string> noncommuting;
  auto unit = basis_class(m, qs.unit, N);
  for (std::size_t i = 0; i < m; ++i) {
    auto ei = basis_class(m, i, N);
    if (!(product_apply(qs, unit, ei) == ei) || !(product_apply(qs, ei, unit) == ei)) {
      if (unit_detail.empty()) unit_detail = "unit fails on " + qs.basis.name(i);
    }
    for (std::size_t j = 0; j < m; ++j) {
      auto ej = basis_class(m, j, N);
      auto ij = product_apply(qs, ei, ej);
      if (!is_homogeneous_of_degree(ij, qs.basis, N, qs.basis.degree(i) + qs.basis.degree(j) - qs.n) &&
          degree_detail.empty()) {
        degree_detail = qs.basis.name(i) + "∘" + qs.basis.name(j) + " = " + format_class(ij, qs.basis) +
                        " is not of degree |x|+|y|-n";
      }
      if (!(ij == product_apply(qs, ej, ei)) && i < j) {
        noncommuting.push_back(qs.basis.name(i) + "," + qs.basis.name(j));
      }
      for (std::size_t k = 0; k < m && assoc_detail.empty(); ++k) {
        auto ek = basis_class(m, k, N);
        auto lhs = product_apply(qs, ij, ek);
        auto rhs = product_apply(qs, ei, product_apply(qs, ej, ek));
        if (!(lhs == rhs)) {
          assoc_detail = "(" + qs.basis.name(i) + "∘" + qs.basis.name(j) + ")∘" + qs.basis.name(k) + " = " +
                         format_class(lhs, qs.basis) + " but " + qs.basis.name(i) + "∘(" + qs.basis.name(j) + "∘" +
                         qs.basis.name(k) + ") = " + format_class(rhs, qs.basis);
        }
      }
    }
  }
  rep.check("degree", degree_detail.empty(), degree_detail);
  rep.check("unit", unit_detail.empty(), unit_detail);
  rep.check("associativity", assoc_detail.empty(), assoc_detail);
  std::string pairs;
  for (const auto& p : noncommuting) pairs += (pairs.empty() ? "" : "; ") + p;
  rep.note("commutativity", noncommuting.empty() ? "commutative" : "non-commutative on " + pairs);
  rep.data()["commutative"] = noncommuting.empty();
  return rep;
}

Report check_module_axioms(const QuantumStructure& qs, const AmbientModel& amb) {
  Report rep("module");
  const std::size_t m = qs.size();
  const std::size_t am = amb.size();
  const int N = qs.min_maslov;
  bool shape = qs.action && table_shape_ok(*qs.action, am, m, m) && amb.min_maslov == N;
  rep.check("shape", shape);
  if (!shape) return rep;

  std::string degree_detail, unit_detail, assoc_detail, algebra_detail;
  auto act = [&](const ClassVector& a, const ClassVector& x) {
    return bilinear_apply(*qs.action, a, x, m, N);
  };
  for (std::size_t a = 0; a < am; ++a) {
    auto ea = basis_class(am, a, N);
    for (std::size_t x = 0; x < m; ++x) {
      auto ex = basis_class(m, x, N);
      auto ax = act(ea, ex);
      if (!is_homogeneous_of_degree(ax, qs.basis, N, amb.basis.degree(a) + qs.basis.degree(x) - 2 * qs.n) &&
          degree_detail.empty()) {
        degree_detail = amb.basis.name(a) + "⊛" + qs.basis.name(x) + " = " + format_class(ax, qs.basis) +
                        " is not of degree |a|+|x|-2n";
      }
      if (a == amb.unit && !(ax == ex) && unit_detail.empty()) {
        unit_detail = amb.basis.name(a) + "⊛" + qs.basis.name(x) + " = " + format_class(ax, qs.basis);
      }
      if (amb.has_product()) {
        for (std::size_t b = 0; b < am && assoc_detail.empty(); ++b) {
          auto eb = basis_class(am, b, N);
          auto lhs = act(ea, act(eb, ex));
          auto rhs = act(amb.multiply(ea, eb), ex);
          if (!(lhs == rhs)) {
            assoc_detail = amb.basis.name(a) + "⊛(" + amb.basis.name(b) + "⊛" + qs.basis.name(x) + ") = " +
                           format_class(lhs, qs.basis) + " but (a*b)⊛x = " + format_class(rhs, qs.basis);
          }
        }
      }
      for (std::size_t y = 0; y < m && algebra_detail.empty(); ++y) {
        auto ey = basis_class(m, y, N);
        auto whole = act(ea, product_apply(qs, ex, ey));
        auto first = product_apply(qs, ax, ey);
        auto second = product_apply(qs, ex, act(ea, ey));
        if (!(whole == first) || !(whole == second)) {
          algebra_detail = "a=" + amb.basis.name(a) + " x=" + qs.basis.name(x) + " y=" + qs.basis.name(y) +
                           ": a⊛(x∘y)=" + format_class(whole, qs.basis) + ", (a⊛x)∘y=" +
                           format_class(first, qs.basis) + ", x∘(a⊛y)=" + format_class(second, qs.basis);
        }
      }
    }
  }
  rep.check("degree", degree_detail.empty(), degree_detail);
  rep.check("unit_action", unit_detail.empty(), unit_detail);
  if (amb.has_product()) {
    rep.check("module_associativity", assoc_detail.empty(), assoc_detail);
  } else {
    rep.note("module_associativity", "ambient model has no product table");
  }
  rep.check("two_sided_algebra", algebra_detail.empty(), algebra_detail);
  return rep;
}

GradedLaurent augmentation(const QuantumStructure& qs, const ClassVector& x) {
  if (x.size() != qs.size()) throw PreconditionError("class not expressed in the Lagrangian basis");
  GradedLaurent out(qs.min_maslov);
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (qs.basis.degree(g) == 0) out += x[g];
  }
  return out;
}

Report check_inclusion(const QuantumStructure& qs, const AmbientModel& amb) {
  Report rep("inclusion");
  const std::size_t m = qs.size();
  const std::size_t am = amb.size();
  const int N = qs.min_maslov;
  bool shape = qs.inclusion && qs.inclusion->size() == m && amb.min_maslov == N;
  if (shape) {
    for (const auto& v : *qs.inclusion) shape = shape && v.size() == am;
  }
  rep.check("shape", shape);
  if (!shape) return rep;

  std::string degree_detail, map_detail, point_detail;
  for (std::size_t x = 0; x < m; ++x) {
    const auto& ix = (*qs.inclusion)[x];
    if (!is_homogeneous_of_degree(ix, amb.basis, N, qs.basis.degree(x)) && degree_detail.empty()) {
      degree_detail = "i_L(" + qs.basis.name(x) + ") = " + format_class(ix, amb.basis) + " is not of degree |x|";
    }
    auto eps = augmentation(qs, basis_class(m, x, N));
    if (!(amb.kronecker(amb.unit, ix) == eps) && point_detail.empty()) {
      point_detail = "<PD([M]), i_L(" + qs.basis.name(x) + ")> = " + amb.kronecker(amb.unit, ix).to_string() +
                     " but eps_L = " + eps.to_string();
    }
    if (!qs.action || !amb.has_product()) continue;
    for (std::size_t a = 0; a < am && map_detail.empty(); ++a) {
      auto ea = basis_class(am, a, N);
      auto lhs = inclusion_apply(qs, bilinear_apply(*qs.action, ea, basis_class(m, x, N), m, N));
      auto rhs = amb.multiply(ea, ix);
      if (!(lhs == rhs)) {
        map_detail = "i_L(" + amb.basis.name(a) + "⊛" + qs.basis.name(x) + ") = " + format_class(lhs, amb.basis) +
                     " but a*i_L(x) = " + format_class(rhs, amb.basis);
      }
    }
  }
  rep.check("degree", degree_detail.empty(), degree_detail);
  if (qs.action && amb.has_product()) {
    rep.check("module_map", map_detail.empty(), map_detail);
  } else {
    rep.note("module_map", "needs an action and an ambient product table");
  }
  rep.check("point_coefficient", point_detail.empty(), point_detail);
  return rep;
}

DualityData duality_build(const QuantumStructure& qs) {
  DualityData out;
  out.report = Report("duality");
  const std::size_t m = qs.size();
  const int N = qs.min_maslov;
  out.pairing.assign(m, std::vector<GradedLaurent>(m, GradedLaurent(N)));
  gf2::Matrix at_one(m, m);
  bool monomial = true;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      auto v = augmentation(qs, product_apply(qs, basis_class(m, x, N), basis_class(m, y, N)));
      out.pairing[x][y] = v;
      if (v.is_zero()) continue;
      if (!v.is_monomial()) monomial = false;
      at_one.set(x, y);
    }
  }
  out.report.check("homogeneous_pairing", monomial);
  // Homogeneous monomial entries factor as diag(t^f) · M(1) · diag(t^g) over
  // a root extension, so the rank over Λ is the Z₂ rank at t = 1.
  out.rank = gf2::rank(at_one);
  out.invertible = monomial && out.rank == m;
  out.report.check("eta_isomorphism", out.invertible,
                   "rank " + std::to_string(out.rank) + " of " + std::to_string(m));
  out.report.data()["rank"] = out.rank;
  return out;
}

Report check_incl_mod_identities(const QuantumStructure& qs, const AmbientModel& amb, const gf2::Matrix& pd) {
  Report rep("incl_mod");
  const std::size_t m = qs.size();
  const std::size_t am = amb.size();
  const int N = qs.min_maslov;
  if (pd.rows() != am || pd.cols() != am) throw PreconditionError("pairing matrix does not match the ambient basis");
  if (!qs.action || !qs.inclusion) throw PreconditionError("structure needs an action and an inclusion");
  auto kron = [&](std::size_t h, const ClassVector& c) {
    GradedLaurent v(N);
    for (std::size_t k = 0; k < am; ++k) {
      if (pd.get(h, k)) v += c[k];
    }
    return v;
  };
  std::string first_detail, second_detail;
  for (std::size_t h = 0; h < am; ++h) {
    auto eh = basis_class(am, h, N);
    for (std::size_t x = 0; x < m; ++x) {
      auto ex = basis_class(m, x, N);
      auto hx = module_apply(qs, eh, ex);
      auto lhs = kron(h, inclusion_apply(qs, ex));
      auto rhs = augmentation(qs, hx);
      if (!(lhs == rhs) && first_detail.empty()) {
        first_detail = "h=" + amb.basis.name(h) + " x=" + qs.basis.name(x) + ": " + lhs.to_string() +
                       " != " + rhs.to_string();
      }
      for (std::size_t y = 0; y < m && second_detail.empty(); ++y) {
        auto ey = basis_class(m, y, N);
        auto l2 = kron(h, inclusion_apply(qs, product_apply(qs, ex, ey)));
        // ⟨η(y), w⟩ = η̄(y ⊗ w) = ε_L(y ∘ w).
        auto r2 = augmentation(qs, product_apply(qs, ey, hx));
        if (!(l2 == r2)) {
          second_detail = "h=" + amb.basis.name(h) + " x=" + qs.basis.name(x) + " y=" + qs.basis.name(y) + ": " +
                          l2.to_string() + " != " + r2.to_string();
        }
      }
    }
  }
  rep.check("incl_mod", first_detail.empty(), first_detail);
  rep.check("mod_inclusion", second_detail.empty(), second_detail);
  return rep;
}

Report invertible_action_periodicity(const AmbientModel& amb, std::size_t index, const HomologyResult& hom) {
  if (index >= amb.size() || !amb.is_certified_invertible(index)) {
    throw PreconditionError("class is not certified invertible in " + amb.name);
  }
  Report rep("periodicity");
  const std::int64_t shift = amb.basis.degree(index) - 2 * amb.n;
  std::int64_t lo = 0, hi = hom.min_maslov - 1;
  if (hom.mode == RingMode::LambdaPlus) {
    for (const auto& [d, r] : hom.ranks) hi = std::max(hi, d);
    for (const auto& t : hom.torsion) hi = std::max(hi, t.degree);
    lo = -hi - 2 * std::abs(shift) - 2 * hom.min_maslov;
  }
  std::string detail;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (hom.z2_dimension(i) != hom.z2_dimension(i + shift)) {
      detail = "rank " + std::to_string(hom.z2_dimension(i)) + " in degree " + std::to_string(i) + " but " +
               std::to_string(hom.z2_dimension(i + shift)) + " in degree " + std::to_string(i + shift);
      break;
    }
  }
  rep.check("shift " + std::to_string(shift), detail.empty(), detail);
  rep.data()["shift"] = shift;
  return rep;
}

namespace {

gf2::BitVector sigma_of(const ClassVector& v) {
  gf2::BitVector out(v.size());
  for (std::size_t g = 0; g < v.size(); ++g) {
    if (v[g].has_negative_exponents()) {
      throw PreconditionError("structure is not expressible over Lambda+ (negative exponents)");
    }
    if (specialize_sigma(PositiveLaurent(v[g]))) out.set(g);
  }
  return out;
}

}  // namespace

Report specialization_compat(const QuantumStructure& qs, const ClassicalTables& classical) {
  Report rep("specialization");
  const std::size_t m = qs.size();
  auto compare_table = [&](const std::string& name, const StructureTable& table,
                           const std::vector<std::vector<gf2::BitVector>>& cl, const GradedBasis& left) {
    std::string detail;
    if (cl.size() != table.size()) {
      rep.check(name, false, "classical table has the wrong shape");
      return;
    }
    for (std::size_t i = 0; i < table.size() && detail.empty(); ++i) {
      for (std::size_t j = 0; j < table[i].size(); ++j) {
        if (cl[i].size() != table[i].size()) {
          detail = "classical table has the wrong shape";
          break;
        }
        auto s = sigma_of(table[i][j]);
        if (!(s == cl[i][j])) {
          detail = "sigma(" + left.name(i) + "," + qs.basis.name(j) + ") = " + s.to_string() + " but classical " +
                   cl[i][j].to_string();
          break;
        }
      }
    }
    rep.check(name, detail.empty(), detail);
  };
  if (classical.intersection) compare_table("product", qs.product, *classical.intersection, qs.basis);
  if (classical.action) {
    if (!qs.action || !qs.ambient) {
      rep.check("action", false, "structure has no action");
    } else {
      compare_table("action", *qs.action, *classical.action, qs.ambient->basis);
    }
  }
  if (classical.inclusion) {
    std::string detail;
    if (!qs.inclusion || classical.inclusion->size() != m) {
      detail = "shape mismatch";
    } else {
      for (std::size_t x = 0; x < m && detail.empty(); ++x) {
        auto s = sigma_of((*qs.inclusion)[x]);
        if (!(s == (*classical.inclusion)[x])) {
          detail = "sigma(i_L(" + qs.basis.name(x) + ")) = " + s.to_string() + " but classical " +
                   (*classical.inclusion)[x].to_string();
        }
      }
    }
    rep.check("inclusion", detail.empty(), detail);
  }
  return rep;
}

Report verify_structure(const QuantumStructure& qs) {
  Report rep(qs.name.empty() ? "structure" : qs.name);
  auto product = check_product_axioms(qs);
  rep.merge(product, "product.");
  rep.data()["commutative"] = product.data().value("commutative", false);
  if (!product.passed("shape")) return rep;
  rep.merge(duality_build(qs).report, "duality.");
  if (!qs.ambient) return rep;
  const auto& amb = *qs.ambient;
  rep.merge(check_ambient_axioms(amb), "ambient.");
  if (qs.action) rep.merge(check_module_axioms(qs, amb), "module.");
  if (qs.inclusion) rep.merge(check_inclusion(qs, amb), "inclusion.");
  if (qs.action && qs.inclusion) rep.merge(check_incl_mod_identities(qs, amb, amb.pairing), "identities.");
  return rep;
}

}  // namespace pearl
