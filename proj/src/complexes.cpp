#include "pearl/complexes.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

namespace pearl {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int32_t>::max();

}  // namespace

// ---------------------------------------------------------------------------
// GradedBasis

GradedBasis::GradedBasis(std::vector<Generator> generators, std::optional<int> manifold_dim,
                         bool single_maximum)
    : gens_(std::move(generators)), manifold_dim_(manifold_dim), single_maximum_(single_maximum) {
  std::set<std::string> names;
  for (const auto& g : gens_) {
    if (g.name.empty()) throw PreconditionError("generator with empty name");
    if (!names.insert(g.name).second) throw PreconditionError("duplicate generator name '" + g.name + "'");
    if (manifold_dim_ && (g.degree < 0 || g.degree > *manifold_dim_)) {
      throw PreconditionError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                              " outside [0, " + std::to_string(*manifold_dim_) + "]");
    }
  }
  if (single_maximum_) {
    if (!manifold_dim_) throw PreconditionError("single-maximum tag requires a manifold dimension");
    auto top = std::count_if(gens_.begin(), gens_.end(),
                             [&](const Generator& g) { return g.degree == *manifold_dim_; });
    if (top != 1) {
      throw PreconditionError("single-maximum basis has " + std::to_string(top) +
                              " generators of top degree");
    }
  }
}

std::optional<std::size_t> GradedBasis::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t GradedBasis::require_index(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw PreconditionError("unknown generator '" + name + "'");
  return *i;
}

std::optional<std::size_t> GradedBasis::top_generator() const {
  if (!single_maximum_ || !manifold_dim_) return std::nullopt;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].degree == *manifold_dim_) return i;
  }
  return std::nullopt;
}

std::int64_t GradedBasis::min_degree() const {
  if (gens_.empty()) return 0;
  return std::min_element(gens_.begin(), gens_.end(),
                          [](const Generator& a, const Generator& b) { return a.degree < b.degree; })
      ->degree;
}

std::int64_t GradedBasis::max_degree() const {
  if (gens_.empty()) return 0;
  return std::max_element(gens_.begin(), gens_.end(),
                          [](const Generator& a, const Generator& b) { return a.degree < b.degree; })
      ->degree;
}

std::map<std::int64_t, std::size_t> GradedBasis::degree_counts() const {
  std::map<std::int64_t, std::size_t> counts;
  for (const auto& g : gens_) ++counts[g.degree];
  return counts;
}

bool operator==(const GradedBasis& a, const GradedBasis& b) {
  if (a.gens_.size() != b.gens_.size()) return false;
  for (std::size_t i = 0; i < a.gens_.size(); ++i) {
    if (a.gens_[i].name != b.gens_[i].name || a.gens_[i].degree != b.gens_[i].degree) return false;
  }
  return true;
}

std::string to_string(RingMode mode) { return mode == RingMode::Lambda ? "lambda" : "lambda-plus"; }

LaurentMatrix zero_laurent_matrix(std::size_t rows, std::size_t cols, int min_maslov) {
  return LaurentMatrix(rows, std::vector<GradedLaurent>(cols, GradedLaurent(min_maslov)));
}

LaurentMatrix multiply(const LaurentMatrix& a, const LaurentMatrix& b, int min_maslov) {
  std::size_t inner = b.size();
  std::size_t cols = inner ? b.front().size() : 0;
  auto out = zero_laurent_matrix(a.size(), cols, min_maslov);
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != inner) throw PreconditionError("Laurent matrix shapes do not compose");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[r][k].is_zero()) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!b[k][c].is_zero()) out[r][c] += a[r][k] * b[k][c];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// PearlComplex

PearlComplex::PearlComplex(GradedBasis basis, int n, int min_maslov, RingMode mode)
    : PearlComplex(basis, n, min_maslov, mode, zero_laurent_matrix(basis.size(), basis.size(), min_maslov)) {}

PearlComplex::PearlComplex(GradedBasis basis, int n, int min_maslov, RingMode mode, LaurentMatrix diff)
    : basis_(std::move(basis)), n_(n), min_maslov_(min_maslov), mode_(mode), diff_(std::move(diff)) {
  if (min_maslov_ < 2) throw PreconditionError("minimal Maslov number must be at least 2");
  if (n_ < 0) throw PreconditionError("dimension must be nonnegative");
  if (diff_.size() != basis_.size()) throw PreconditionError("differential has wrong number of rows");
  for (const auto& row : diff_) {
    if (row.size() != basis_.size()) throw PreconditionError("differential has wrong number of columns");
    for (const auto& e : row) {
      if (e.min_maslov() != min_maslov_) {
        throw IncompatibleRingError("differential entry over a ring with a different N");
      }
    }
  }
}

PearlComplex PearlComplex::from_terms(GradedBasis basis, int n, int min_maslov, RingMode mode,
                                      const std::vector<DiffTerm>& terms) {
  auto diff = zero_laurent_matrix(basis.size(), basis.size(), min_maslov);
  for (const auto& t : terms) {
    if (t.from >= basis.size() || t.to >= basis.size()) {
      throw PreconditionError("differential term refers to a missing generator");
    }
    diff[t.to][t.from] += GradedLaurent::monomial(min_maslov, t.exponent);
  }
  return PearlComplex(std::move(basis), n, min_maslov, mode, std::move(diff));
}

PearlComplex PearlComplex::with_ring(RingMode mode) const {
  return PearlComplex(basis_, n_, min_maslov_, mode, diff_);
}

PearlComplex PearlComplex::with_diff(LaurentMatrix diff) const {
  return PearlComplex(basis_, n_, min_maslov_, mode_, std::move(diff));
}

std::int64_t PearlComplex::max_exponent() const {
  std::int64_t m = 0;
  for (const auto& row : diff_) {
    for (const auto& e : row) {
      if (!e.is_zero()) m = std::max(m, e.support().back());
    }
  }
  return m;
}

std::vector<SliceElement> PearlComplex::degree_slice(std::int64_t degree) const {
  std::vector<SliceElement> out;
  for (std::size_t g = 0; g < basis_.size(); ++g) {
    std::int64_t diffdeg = basis_.degree(g) - degree;
    if (floor_mod(diffdeg, min_maslov_) != 0) continue;
    std::int64_t k = diffdeg / min_maslov_;
    if (mode_ == RingMode::LambdaPlus && k < 0) continue;
    out.push_back({g, k});
  }
  return out;
}

gf2::Matrix PearlComplex::slice_differential(std::int64_t degree) const {
  auto src = degree_slice(degree);
  auto dst = degree_slice(degree - 1);
  std::vector<std::optional<std::size_t>> row_of(basis_.size());
  for (std::size_t r = 0; r < dst.size(); ++r) row_of[dst[r].generator] = r;
  gf2::Matrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::size_t x = src[c].generator;
    for (std::size_t y = 0; y < basis_.size(); ++y) {
      for (auto e : diff_[y][x].support()) {
        std::int64_t power = src[c].power + e;
        if (!row_of[y] || dst[*row_of[y]].power != power) {
          throw PreconditionError("differential entry " + basis_.name(x) + " -> " + basis_.name(y) +
                                  " does not have degree -1");
        }
        m.flip(*row_of[y], c);
      }
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

// Coefficient matrices of every exponent present in the differential.
std::map<std::int64_t, gf2::Matrix> components(const PearlComplex& c) {
  std::map<std::int64_t, gf2::Matrix> parts;
  for (std::size_t y = 0; y < c.size(); ++y) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      for (auto e : c.entry(y, x).support()) {
        auto it = parts.try_emplace(e, c.size(), c.size()).first;
        it->second.set(y, x);
      }
    }
  }
  return parts;
}

}  // namespace

Report check_differential(const PearlComplex& c) {
  Report rep("differential");
  const auto& basis = c.basis();
  const int N = c.min_maslov();

  bool shape_ok = c.diff().size() == c.size();
  for (const auto& row : c.diff()) shape_ok = shape_ok && row.size() == c.size();
  rep.check("shape", shape_ok);

  std::string homog_detail;
  std::string positive_detail;
  for (std::size_t y = 0; y < c.size(); ++y) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      const auto& e = c.entry(y, x);
      if (e.is_zero()) continue;
      std::string where = basis.name(x) + " -> " + basis.name(y);
      if (!e.is_monomial()) {
        if (homog_detail.empty()) homog_detail = where + " is not homogeneous (" + e.to_string() + ")";
        continue;
      }
      std::int64_t k = *e.exponent();
      if (basis.degree(y) - basis.degree(x) != -1 + k * N && homog_detail.empty()) {
        homog_detail = where + " with t^" + std::to_string(k) + " has degree " +
                       std::to_string(basis.degree(y) - k * N - basis.degree(x)) + ", expected -1";
      }
      if (k < 0 && positive_detail.empty()) positive_detail = where + " has negative exponent";
    }
  }
  rep.check("homogeneity", homog_detail.empty(), homog_detail);
  if (c.mode() == RingMode::LambdaPlus) rep.check("positivity", positive_detail.empty(), positive_detail);

  auto d2 = multiply(c.diff(), c.diff(), N);
  std::string d2_detail;
  for (std::size_t y = 0; y < c.size() && d2_detail.empty(); ++y) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      if (!d2[y][x].is_zero()) {
        d2_detail = "d^2(" + basis.name(x) + ") has " + basis.name(y) + " coefficient " + d2[y][x].to_string();
        break;
      }
    }
  }
  rep.check("d_squared", d2_detail.empty(), d2_detail);

  auto parts = components(c);
  std::map<std::int64_t, gf2::Matrix> sums;
  for (const auto& [i, di] : parts) {
    for (const auto& [j, dj] : parts) {
      auto prod = di * dj;
      auto [it, fresh] = sums.try_emplace(i + j, prod);
      if (!fresh) it->second = it->second + prod;
    }
  }
  std::string split_detail;
  for (const auto& [k, m] : sums) {
    if (!m.is_zero()) {
      split_detail = "sum of d_i d_j over i+j=" + std::to_string(k) + " is nonzero";
      break;
    }
  }
  rep.check("split_identities", split_detail.empty(), split_detail);
  return rep;
}

void require_valid(const PearlComplex& c) {
  auto rep = check_differential(c);
  if (const auto* f = rep.first_failure()) {
    throw PreconditionError("invalid pearl complex: " + f->check + (f->detail.empty() ? "" : ": " + f->detail));
  }
}

std::vector<gf2::Matrix> split_differential(const PearlComplex& c) {
  std::vector<gf2::Matrix> parts(static_cast<std::size_t>(c.max_exponent()) + 1, gf2::Matrix(c.size(), c.size()));
  for (std::size_t y = 0; y < c.size(); ++y) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      for (auto e : c.entry(y, x).support()) {
        if (e < 0) {
          throw SplitUndefinedError("entry " + c.basis().name(x) + " -> " + c.basis().name(y) +
                                    " has negative exponent " + std::to_string(e));
        }
        parts[static_cast<std::size_t>(e)].set(y, x);
      }
    }
  }
  return parts;
}

LaurentMatrix reassemble(const std::vector<gf2::Matrix>& parts, int min_maslov) {
  std::size_t rows = parts.empty() ? 0 : parts.front().rows();
  std::size_t cols = parts.empty() ? 0 : parts.front().cols();
  auto out = zero_laurent_matrix(rows, cols, min_maslov);
  for (std::size_t e = 0; e < parts.size(); ++e) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (parts[e].get(r, c)) out[r][c] += GradedLaurent::monomial(min_maslov, static_cast<std::int64_t>(e));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology

std::int64_t HomologyResult::rank(std::int64_t i) const {
  std::int64_t key = mode == RingMode::Lambda ? floor_mod(i, min_maslov) : i;
  auto it = ranks.find(key);
  return it == ranks.end() ? 0 : it->second;
}

std::int64_t HomologyResult::z2_dimension(std::int64_t i) const {
  if (mode == RingMode::Lambda) return rank(i);
  std::int64_t dim = 0;
  for (const auto& [d, count] : ranks) {
    if (d >= i && (d - i) % min_maslov == 0) dim += count;
  }
  for (const auto& t : torsion) {
    if (t.degree >= i && (t.degree - i) % min_maslov == 0 && (t.degree - i) / min_maslov < t.order) ++dim;
  }
  return dim;
}

std::int64_t HomologyResult::total_rank() const {
  std::int64_t total = 0;
  for (const auto& [d, r] : ranks) total += r;
  return total;
}

bool HomologyResult::is_zero() const { return total_rank() == 0 && torsion.empty(); }

std::string HomologyResult::to_string() const {
  std::ostringstream out;
  if (mode == RingMode::Lambda) {
    out << "QH over Lambda (N=" << min_maslov << ", window [0," << min_maslov << ")):";
    for (std::int64_t i = 0; i < min_maslov; ++i) out << " H_" << i << "=" << rank(i);
  } else {
    out << "QH over Lambda+ (N=" << min_maslov << "): free";
    bool any = false;
    for (const auto& [d, r] : ranks) {
      if (r == 0) continue;
      out << " " << r << "x[deg " << d << "]";
      any = true;
    }
    if (!any) out << " none";
    out << "; torsion";
    if (torsion.empty()) out << " none";
    for (const auto& t : torsion) out << " Z2[t]/(t^" << t.order << ")[deg " << t.degree << "]";
  }
  return out.str();
}

nlohmann::json HomologyResult::to_json() const {
  nlohmann::json j;
  j["ring"] = pearl::to_string(mode);
  j["N"] = min_maslov;
  j["ranks"] = nlohmann::json::array();
  for (const auto& [d, r] : ranks) j["ranks"].push_back({{"degree", d}, {"rank", r}});
  j["torsion"] = nlohmann::json::array();
  for (const auto& t : torsion) j["torsion"].push_back({{"degree", t.degree}, {"order", t.order}});
  return j;
}

HomologyResult homology_over_Lambda(const PearlComplex& c) {
  if (c.mode() != RingMode::Lambda) throw PreconditionError("homology_over_Lambda needs a Lambda-mode complex");
  require_valid(c);
  HomologyResult h;
  h.mode = RingMode::Lambda;
  h.min_maslov = c.min_maslov();
  for (std::int64_t i = 0; i < c.min_maslov(); ++i) {
    auto slice = static_cast<std::int64_t>(c.degree_slice(i).size());
    auto out_rank = static_cast<std::int64_t>(gf2::rank(c.slice_differential(i)));
    auto in_rank = static_cast<std::int64_t>(gf2::rank(c.slice_differential(i + 1)));
    h.ranks[i] = slice - out_rank - in_rank;
  }
  return h;
}

HomologyResult homology_over_Lambda_plus(const PearlComplex& c) {
  if (c.mode() != RingMode::LambdaPlus) {
    throw PreconditionError("homology_over_Lambda_plus needs a Lambda+-mode complex");
  }
  require_valid(c);
  const int N = c.min_maslov();
  const std::size_t m = c.size();
  auto a = c.diff();
  std::vector<bool> row_used(m, false), col_used(m, false);
  std::multiset<std::int64_t> free_degrees;
  for (std::size_t g = 0; g < m; ++g) free_degrees.insert(c.basis().degree(g));

  HomologyResult h;
  h.mode = RingMode::LambdaPlus;
  h.min_maslov = N;
  while (true) {
    std::optional<std::int64_t> best;
    std::size_t pr = 0, pc = 0;
    for (std::size_t r = 0; r < m; ++r) {
      if (row_used[r]) continue;
      for (std::size_t col = 0; col < m; ++col) {
        if (col_used[col] || a[r][col].is_zero()) continue;
        auto v = *a[r][col].valuation();
        if (!best || v < *best) {
          best = v;
          pr = r;
          pc = col;
        }
      }
    }
    if (!best) break;
    const std::int64_t v = *best;
    // Clear the pivot column below and above; entries stay monomial by degree count.
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pr || row_used[r] || a[r][pc].is_zero()) continue;
      std::int64_t shift = *a[r][pc].valuation() - v;
      for (std::size_t col = 0; col < m; ++col) {
        if (a[pr][col].is_zero()) continue;
        a[r][col] += a[pr][col].shifted(shift);
        if (a[r][col].support().size() > 1) {
          throw Error("internal: Smith reduction produced a non-monomial entry");
        }
      }
    }
    // Column operations against the pivot only touch the pivot row.
    for (std::size_t col = 0; col < m; ++col) {
      if (col != pc) a[pr][col] = GradedLaurent(N);
    }
    row_used[pr] = true;
    col_used[pc] = true;
    free_degrees.erase(free_degrees.find(c.basis().degree(pr)));
    free_degrees.erase(free_degrees.find(c.basis().degree(pc)));
    if (v > 0) h.torsion.push_back({c.basis().degree(pr), v});
  }
  for (auto d : free_degrees) ++h.ranks[d];
  std::sort(h.torsion.begin(), h.torsion.end(), [](const TorsionSummand& x, const TorsionSummand& y) {
    return std::pair(x.degree, x.order) < std::pair(y.degree, y.order);
  });
  return h;
}

HomologyResult homology(const PearlComplex& c) {
  return c.mode() == RingMode::Lambda ? homology_over_Lambda(c) : homology_over_Lambda_plus(c);
}

bool fundamental_class_survives(const PearlComplex& c) {
  if (c.mode() != RingMode::LambdaPlus) throw PreconditionError("fundamental class check needs Lambda+ mode");
  auto top = c.basis().top_generator();
  if (!top) throw PreconditionError("basis is not tagged with a single maximum");
  for (std::size_t y = 0; y < c.size(); ++y) {
    if (!c.entry(y, *top).is_zero()) return false;
  }
  return c.degree_slice(c.basis().degree(*top) + 1).empty();
}

// ---------------------------------------------------------------------------
// Dimension formulas

std::int64_t virtual_dimension(const DimensionQuery& q) {
  if (q.min_maslov <= 0 || q.mu < 0 || q.mu % q.min_maslov != 0) {
    throw InvalidClassError("Maslov index " + std::to_string(q.mu) + " is not a nonnegative multiple of N=" +
                            std::to_string(q.min_maslov));
  }
  switch (q.flavor) {
    case DimensionFlavor::Prl:
      return q.x - q.y + q.mu - 1;
    case DimensionFlavor::Prod:
      return q.x + q.y - q.z - q.n + q.mu;
    case DimensionFlavor::Mod:
      return q.z + q.x - q.y + q.mu - 2 * q.n;
    case DimensionFlavor::Inc:
      return q.x - q.z + q.mu;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Chain maps

Report verify_chain_map(const PearlComplex& src, const PearlComplex& dst, const LaurentMatrix& m) {
  Report rep("chain map");
  bool shape = m.size() == dst.size() &&
               std::all_of(m.begin(), m.end(), [&](const auto& row) { return row.size() == src.size(); });
  rep.check("shape", shape);
  rep.check("same_ring", src.min_maslov() == dst.min_maslov());
  if (!shape || src.min_maslov() != dst.min_maslov()) return rep;
  const int N = src.min_maslov();

  std::string degree_detail;
  for (std::size_t y = 0; y < dst.size() && degree_detail.empty(); ++y) {
    for (std::size_t x = 0; x < src.size(); ++x) {
      const auto& e = m[y][x];
      if (e.is_zero()) continue;
      if (e.min_maslov() != N) {
        degree_detail = "entry over a different ring";
        break;
      }
      if (!e.is_monomial() || dst.basis().degree(y) - *e.exponent() * N != src.basis().degree(x)) {
        degree_detail = "entry " + src.basis().name(x) + " -> " + dst.basis().name(y) + " (" + e.to_string() +
                        ") is not of degree 0";
        break;
      }
    }
  }
  rep.check("degree", degree_detail.empty(), degree_detail);
  if (!degree_detail.empty()) return rep;

  auto lhs = multiply(dst.diff(), m, N);
  auto rhs = multiply(m, src.diff(), N);
  rep.check("commutes", lhs == rhs, lhs == rhs ? "" : "d' m != m d");
  return rep;
}

Report specialization_check(const PearlComplex& c) {
  if (c.mode() != RingMode::LambdaPlus) throw PreconditionError("specialization needs a Lambda+-mode complex");
  Report rep("specialization");
  auto parts = split_differential(c);
  const auto& morse = parts.front();

  gf2::Matrix sigma_d(c.size(), c.size());
  for (std::size_t y = 0; y < c.size(); ++y) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      auto coeff = PositiveLaurent(c.entry(y, x));
      if (specialize_sigma(coeff)) sigma_d.set(y, x);
    }
  }
  rep.check("sigma_is_morse", sigma_d == morse);
  rep.check("morse_d_squared", (morse * morse).is_zero());

  // σ on slices: x·t⁰ ↦ x, x·tᵏ ↦ 0 for k > 0.
  auto sigma_matrix = [&](std::int64_t degree) {
    auto slice = c.degree_slice(degree);
    std::vector<std::size_t> morse_gens;
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (c.basis().degree(g) == degree) morse_gens.push_back(g);
    }
    gf2::Matrix s(morse_gens.size(), slice.size());
    for (std::size_t col = 0; col < slice.size(); ++col) {
      if (slice[col].power != 0) continue;
      auto it = std::find(morse_gens.begin(), morse_gens.end(), slice[col].generator);
      s.set(static_cast<std::size_t>(it - morse_gens.begin()), col);
    }
    return std::pair(s, morse_gens);
  };
  auto morse_block = [&](std::int64_t degree) {
    std::vector<std::size_t> src, dst;
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (c.basis().degree(g) == degree) src.push_back(g);
      if (c.basis().degree(g) == degree - 1) dst.push_back(g);
    }
    gf2::Matrix b(dst.size(), src.size());
    for (std::size_t r = 0; r < dst.size(); ++r) {
      for (std::size_t col = 0; col < src.size(); ++col) {
        if (morse.get(dst[r], src[col])) b.set(r, col);
      }
    }
    return b;
  };

  bool commutes = true;
  nlohmann::json ranks = nlohmann::json::object();
  for (std::int64_t i = c.basis().min_degree(); i <= c.basis().max_degree() + 1; ++i) {
    auto [s_i, gens_i] = sigma_matrix(i);
    auto [s_im1, gens_im1] = sigma_matrix(i - 1);
    auto lhs = morse_block(i) * s_i;
    auto rhs = s_im1 * c.slice_differential(i);
    if (!(lhs == rhs)) commutes = false;

    // Rank of σ_* on H_i: dim(σ(Z_i) + B_i) - dim B_i in the Morse complex.
    auto cycles = gf2::kernel(c.slice_differential(i));
    auto boundaries = gf2::column_space(morse_block(i + 1));
    gf2::Eliminator e(gens_i.size());
    for (const auto& b : boundaries) e.insert(b);
    std::size_t base = e.rank();
    for (const auto& z : cycles) e.insert(s_i.apply(z));
    ranks[std::to_string(i)] = e.rank() - base;
  }
  rep.check("sigma_chain_map", commutes);
  rep.data()["sigma_homology_rank"] = ranks;
  return rep;
}

// ---------------------------------------------------------------------------
// Spectral sequence

std::size_t SpectralPage::dimension(std::int64_t p, std::int64_t degree) const {
  auto it = dims.find({p, degree});
  return it == dims.end() ? 0 : it->second;
}

std::size_t SpectralPage::degree_total(std::int64_t degree) const {
  std::size_t total = 0;
  for (const auto& [key, d] : dims) {
    if (key.second == degree) total += d;
  }
  return total;
}

std::size_t SpectralPage::total() const {
  std::size_t total = 0;
  for (const auto& [key, d] : dims) total += d;
  return total;
}

namespace {

// Filtered degree slices of a Λ⁺ complex, with subquotient helpers.
class FilteredSlices {
 public:
  explicit FilteredSlices(const PearlComplex& c) : c_(c) {}

  const std::vector<SliceElement>& slice(std::int64_t i) {
    auto it = slices_.find(i);
    if (it == slices_.end()) it = slices_.emplace(i, c_.degree_slice(i)).first;
    return it->second;
  }

  const gf2::Matrix& d(std::int64_t i) {
    auto it = diffs_.find(i);
    if (it == diffs_.end()) it = diffs_.emplace(i, c_.slice_differential(i)).first;
    return it->second;
  }

  std::int64_t max_power(std::int64_t i) {
    std::int64_t m = -1;
    for (const auto& e : slice(i)) m = std::max(m, e.power);
    return m;
  }

  // {v ∈ F^p S_i : d v ∈ F^q S_{i-1}}.
  std::vector<gf2::BitVector> cycles(std::int64_t i, std::int64_t p, std::int64_t q) {
    const auto& src = slice(i);
    const auto& dst = slice(i - 1);
    const auto& dm = d(i);
    std::vector<std::size_t> cols, rows;
    for (std::size_t k = 0; k < src.size(); ++k) {
      if (src[k].power >= p) cols.push_back(k);
    }
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (dst[k].power < q) rows.push_back(k);
    }
    gf2::Matrix sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t col = 0; col < cols.size(); ++col) {
        if (dm.get(rows[r], cols[col])) sub.set(r, col);
      }
    }
    std::vector<gf2::BitVector> out;
    for (const auto& k : gf2::kernel(sub)) {
      gf2::BitVector v(src.size());
      for (std::size_t col = 0; col < cols.size(); ++col) {
        if (k.get(col)) v.set(cols[col]);
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<gf2::BitVector> image(std::int64_t i_plus_1, const std::vector<gf2::BitVector>& vs) {
    std::vector<gf2::BitVector> out;
    const auto& dm = d(i_plus_1);
    for (const auto& v : vs) out.push_back(dm.apply(v));
    return out;
  }

 private:
  const PearlComplex& c_;
  std::map<std::int64_t, std::vector<SliceElement>> slices_;
  std::map<std::int64_t, gf2::Matrix> diffs_;
};

// Representatives of Z / W, with coordinates of vectors in span(W ∪ reps).
class Subquotient {
 public:
  Subquotient(std::size_t dim, const std::vector<gf2::BitVector>& w, const std::vector<gf2::BitVector>& z)
      : dim_(dim), tagged_(0) {
    gf2::Eliminator plain(dim);
    for (const auto& v : w) plain.insert(v);
    for (const auto& v : z) {
      if (plain.insert(v)) reps_.push_back(v);
    }
    tagged_ = gf2::Eliminator(dim + reps_.size());
    for (const auto& v : w) tagged_.insert(extend(v, std::nullopt));
    for (std::size_t j = 0; j < reps_.size(); ++j) tagged_.insert(extend(reps_[j], j));
  }

  std::size_t size() const { return reps_.size(); }
  const std::vector<gf2::BitVector>& reps() const { return reps_; }

  // Coordinates on the representatives; nullopt when v is outside span(W ∪ reps).
  std::optional<gf2::BitVector> coordinates(const gf2::BitVector& v) const {
    auto r = tagged_.reduce(extend(v, std::nullopt));
    gf2::BitVector coords(reps_.size());
    for (std::size_t k = 0; k < dim_; ++k) {
      if (r.get(k)) return std::nullopt;
    }
    for (std::size_t j = 0; j < reps_.size(); ++j) {
      if (r.get(dim_ + j)) coords.set(j);
    }
    return coords;
  }

 private:
  gf2::BitVector extend(const gf2::BitVector& v, std::optional<std::size_t> tag) const {
    gf2::BitVector out(dim_ + reps_.size());
    for (std::size_t k = 0; k < dim_; ++k) {
      if (v.get(k)) out.set(k);
    }
    if (tag) out.set(dim_ + *tag);
    return out;
  }

  std::size_t dim_;
  std::vector<gf2::BitVector> reps_;
  gf2::Eliminator tagged_;
};

std::vector<gf2::BitVector> concat(std::vector<gf2::BitVector> a, const std::vector<gf2::BitVector>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Subquotient page_cell(FilteredSlices& fs, std::int64_t i, std::int64_t p, std::int64_t r) {
  auto z = fs.cycles(i, p, p + r);
  auto w = concat(fs.cycles(i, p + 1, p + r), fs.image(i + 1, fs.cycles(i + 1, p - r + 1, p)));
  return Subquotient(fs.slice(i).size(), w, z);
}

Subquotient infinity_cell(FilteredSlices& fs, std::int64_t i, std::int64_t p) {
  auto z = fs.cycles(i, p, kUnbounded);
  auto w = concat(fs.cycles(i, p + 1, kUnbounded), fs.image(i + 1, fs.cycles(i + 1, -kUnbounded, p)));
  return Subquotient(fs.slice(i).size(), w, z);
}

}  // namespace

SpectralSequence spectral_sequence(const PearlComplex& c, int max_page) {
  if (c.mode() != RingMode::LambdaPlus) throw PreconditionError("spectral sequence needs a Lambda+-mode complex");
  if (max_page < 0) throw PreconditionError("max_page must be nonnegative");
  require_valid(c);
  SpectralSequence ss;
  const std::int64_t T = 1 + c.max_exponent() * static_cast<std::int64_t>(c.size());
  ss.min_degree = c.basis().min_degree() - T * c.min_maslov();
  ss.max_degree = c.basis().max_degree();

  FilteredSlices fs(c);
  for (int r = 0; r <= max_page; ++r) {
    SpectralPage page;
    page.page = r;
    std::map<std::pair<std::int64_t, std::int64_t>, Subquotient> cells;
    for (std::int64_t i = ss.min_degree; i <= ss.max_degree; ++i) {
      for (std::int64_t p = 0; p <= fs.max_power(i); ++p) {
        auto cell = page_cell(fs, i, p, r);
        if (cell.size()) {
          page.dims[{p, i}] = cell.size();
          cells.emplace(std::pair(p, i), std::move(cell));
        }
      }
    }
    for (const auto& [key, src] : cells) {
      auto [p, i] = key;
      auto tgt = cells.find({p + r, i - 1});
      if (tgt == cells.end()) continue;
      gf2::Matrix m(tgt->second.size(), src.size());
      for (std::size_t col = 0; col < src.size(); ++col) {
        auto coords = tgt->second.coordinates(fs.d(i).apply(src.reps()[col]));
        if (!coords) throw Error("internal: d_r image outside the target page");
        for (std::size_t row = 0; row < m.rows(); ++row) {
          if (coords->get(row)) m.set(row, col);
        }
      }
      page.differentials.emplace(key, std::move(m));
    }
    ss.pages.push_back(std::move(page));
  }

  for (std::int64_t i = ss.min_degree; i <= ss.max_degree; ++i) {
    for (std::int64_t p = 0; p <= fs.max_power(i); ++p) {
      auto cell = infinity_cell(fs, i, p);
      if (cell.size()) ss.infinity.dims[{p, i}] = cell.size();
    }
  }
  ss.infinity.page = -1;
  for (const auto& page : ss.pages) {
    if (page.dims == ss.infinity.dims) {
      ss.collapse_page = page.page;
      break;
    }
  }
  return ss;
}

Report check_spectral_sequence(const PearlComplex& c, const SpectralSequence& ss) {
  Report rep("spectral sequence");
  if (ss.pages.empty()) {
    rep.check("pages_present", false);
    return rep;
  }

  // E⁰ in filtration p and degree i has basis {x·tᵖ}; d⁰ must be ∂₀ on it.
  auto parts = split_differential(c);
  const auto& morse = parts.front();
  bool page0 = true;
  // Differentials are stored only when the target degree is inside the window.
  for (std::int64_t i = ss.min_degree + 1; i <= ss.max_degree; ++i) {
    auto src = c.degree_slice(i);
    auto dst = c.degree_slice(i - 1);
    for (std::int64_t p = 0;; ++p) {
      std::vector<std::size_t> sg, tg;
      for (const auto& e : src) {
        if (e.power == p) sg.push_back(e.generator);
      }
      for (const auto& e : dst) {
        if (e.power == p) tg.push_back(e.generator);
      }
      if (sg.empty() && std::none_of(src.begin(), src.end(), [&](const SliceElement& e) { return e.power > p; })) {
        break;
      }
      if (ss.pages[0].dimension(p, i) != sg.size()) page0 = false;
      auto it = ss.pages[0].differentials.find({p, i});
      for (std::size_t col = 0; col < sg.size(); ++col) {
        for (std::size_t row = 0; row < tg.size(); ++row) {
          bool got = it != ss.pages[0].differentials.end() && it->second.get(row, col);
          if (got != morse.get(tg[row], sg[col])) page0 = false;
        }
      }
    }
  }
  rep.check("page0_is_morse", page0);

  bool page_homology = true;
  bool squares = true;
  for (std::size_t r = 0; r + 1 < ss.pages.size(); ++r) {
    const auto& page = ss.pages[r];
    const auto& next = ss.pages[r + 1];
    const auto step = static_cast<std::int64_t>(r);
    // The lowest degree has no computed target cells, so it is left out.
    for (std::int64_t i = ss.min_degree + 1; i <= ss.max_degree; ++i) {
      for (std::int64_t p = 0; p <= (ss.max_degree - ss.min_degree) / c.min_maslov() + 1; ++p) {
        std::size_t out_rank = 0, in_rank = 0;
        auto out = page.differentials.find({p, i});
        if (out != page.differentials.end()) out_rank = gf2::rank(out->second);
        auto in = page.differentials.find({p - step, i + 1});
        if (in != page.differentials.end()) in_rank = gf2::rank(in->second);
        std::size_t expected = page.dimension(p, i) - out_rank - in_rank;
        if (next.dimension(p, i) != expected) page_homology = false;
        if (out != page.differentials.end() && in != page.differentials.end() &&
            !(out->second * in->second).is_zero()) {
          squares = false;
        }
      }
    }
  }
  rep.check("page_homology", page_homology);
  rep.check("d_r_squared", squares);

  auto h = homology_over_Lambda_plus(c);
  bool infinity = true;
  for (std::int64_t i = ss.min_degree; i <= ss.max_degree; ++i) {
    if (static_cast<std::int64_t>(ss.infinity.degree_total(i)) != h.z2_dimension(i)) infinity = false;
  }
  rep.check("infinity_matches_homology", infinity);
  rep.data()["collapse_page"] = ss.collapse_page ? nlohmann::json(*ss.collapse_page) : nlohmann::json();
  return rep;
}

}  // namespace pearl
