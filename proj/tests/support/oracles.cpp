#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace pearl::oracle {

PearlComplex random_graded_complex(std::mt19937& rng, const RandomComplexOptions& opt) {
  std::uniform_int_distribution<std::size_t> count(1, opt.max_generators);
  std::uniform_int_distribution<int> dim(0, opt.max_dim);
  std::uniform_int_distribution<std::size_t> pick(0, opt.maslov_choices.size() - 1);
  std::bernoulli_distribution fill(opt.density);

  const int n = dim(rng);
  const int N = opt.maslov_choices[pick(rng)];
  std::uniform_int_distribution<int> deg(0, n);
  std::vector<Generator> gens;
  const std::size_t m = count(rng);
  for (std::size_t i = 0; i < m; ++i) gens.push_back({"g" + std::to_string(i), deg(rng)});

  std::vector<DiffTerm> terms;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      std::int64_t gap = gens[y].degree - gens[x].degree + 1;
      if (gap % N != 0) continue;
      std::int64_t e = gap / N;
      if (opt.mode == RingMode::LambdaPlus && e < 0) continue;
      if (fill(rng)) terms.push_back({x, y, e});
    }
  }
  return PearlComplex::from_terms(GradedBasis(gens, n), n, N, opt.mode, terms);
}

PearlComplex random_valid_complex(std::mt19937& rng, const RandomComplexOptions& opt) {
  while (true) {
    auto c = random_graded_complex(rng, opt);
    if (d_squared_zero_naive(c)) return c;
  }
}

bool d_squared_zero_naive(const PearlComplex& c) {
  for (std::size_t z = 0; z < c.size(); ++z) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      std::map<std::int64_t, int> coeff;
      for (std::size_t y = 0; y < c.size(); ++y) {
        for (auto e1 : c.entry(y, x).support()) {
          for (auto e2 : c.entry(z, y).support()) coeff[e1 + e2] ^= 1;
        }
      }
      for (auto [e, v] : coeff) {
        if (v) return false;
      }
    }
  }
  return true;
}

std::size_t naive_rank(std::vector<std::vector<bool>> rows) {
  std::size_t rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r][c]) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] = rows[i][k] != rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

// Null space of a rows×cols bool matrix.
std::vector<std::vector<bool>> naive_kernel(std::vector<std::vector<bool>> rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r][c]) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[r], rows[rank]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[i][k] = rows[i][k] != rows[rank][k];
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::vector<bool>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<bool> v(cols, false);
    v[f] = true;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (rows[i][f]) v[pivots[i]] = true;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

SliceOracle::SliceOracle(const PearlComplex& c) : c_(c) {}

SliceOracle::Slice SliceOracle::slice(std::int64_t degree) const {
  Slice s;
  const std::int64_t N = c_.min_maslov();
  for (std::size_t g = 0; g < c_.size(); ++g) {
    std::int64_t gap = c_.basis().degree(g) - degree;
    if (gap >= 0 && gap % N == 0) s.elems.emplace_back(g, gap / N);
  }
  return s;
}

std::vector<std::vector<bool>> SliceOracle::boundary(std::int64_t degree) const {
  auto src = slice(degree);
  auto dst = slice(degree - 1);
  std::vector<std::vector<bool>> m(dst.elems.size(), std::vector<bool>(src.elems.size(), false));
  for (std::size_t col = 0; col < src.elems.size(); ++col) {
    auto [x, k] = src.elems[col];
    for (std::size_t row = 0; row < dst.elems.size(); ++row) {
      auto [y, l] = dst.elems[row];
      if (c_.entry(y, x).coefficient(l - k)) m[row][col] = !m[row][col];
    }
  }
  return m;
}

std::int64_t SliceOracle::dimension(std::int64_t degree) const {
  return t_power_rank(degree, 0);
}

std::int64_t SliceOracle::t_power_rank(std::int64_t degree, std::int64_t k) const {
  const std::int64_t target = degree - k * c_.min_maslov();
  auto src = slice(degree);
  auto dst = slice(target);
  auto d_src = boundary(degree);
  auto cycles = naive_kernel(d_src, src.elems.size());

  // Boundaries in the target slice are the columns of the incoming differential.
  auto d_in = boundary(target + 1);
  std::vector<std::vector<bool>> span;
  for (std::size_t col = 0; col < (d_in.empty() ? 0 : d_in.front().size()); ++col) {
    std::vector<bool> v(dst.elems.size());
    for (std::size_t row = 0; row < dst.elems.size(); ++row) v[row] = d_in[row][col];
    span.push_back(std::move(v));
  }
  if (span.empty()) span.emplace_back(dst.elems.size(), false);
  const std::size_t base = naive_rank(span);
  for (const auto& z : cycles) {
    std::vector<bool> v(dst.elems.size(), false);
    for (std::size_t i = 0; i < src.elems.size(); ++i) {
      if (!z[i]) continue;
      auto [g, p] = src.elems[i];
      for (std::size_t j = 0; j < dst.elems.size(); ++j) {
        if (dst.elems[j].first == g && dst.elems[j].second == p + k) v[j] = !v[j];
      }
    }
    span.push_back(std::move(v));
  }
  return static_cast<std::int64_t>(naive_rank(span) - base);
}

std::int64_t predicted_t_power_rank(const HomologyResult& h, std::int64_t degree, std::int64_t k) {
  const std::int64_t N = h.min_maslov;
  std::int64_t r = 0;
  for (const auto& [d, count] : h.ranks) {
    if (d >= degree && (d - degree) % N == 0) r += count;
  }
  for (const auto& t : h.torsion) {
    if (t.degree >= degree && (t.degree - degree) % N == 0 && (t.degree - degree) / N + k < t.order) ++r;
  }
  return r;
}

std::vector<NaiveProfile> naive_classify(const std::vector<int>& betti, int n, int N) {
  std::vector<Generator> gens;
  for (int i = n; i >= 0; --i) {
    for (int k = 0; k < betti[static_cast<std::size_t>(i)]; ++k) {
      gens.push_back({"g" + std::to_string(gens.size()), i});
    }
  }
  std::vector<std::array<std::int64_t, 3>> slots;
  for (std::size_t x = 0; x < gens.size(); ++x) {
    for (std::size_t y = 0; y < gens.size(); ++y) {
      const std::int64_t gap = gens[y].degree - gens[x].degree + 1;
      if (gap > 0 && gap % N == 0) {
        slots.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(y), gap / N});
      }
    }
  }
  if (slots.size() > 16) throw std::invalid_argument("naive_classify: too many slots");
  const std::int64_t low = -static_cast<std::int64_t>(n / N + 3) * N;
  std::vector<NaiveProfile> out;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    std::vector<DiffTerm> terms;
    NaiveProfile prof;
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if ((mask >> s) & 1U) {
        terms.push_back({static_cast<std::size_t>(slots[s][0]), static_cast<std::size_t>(slots[s][1]), slots[s][2]});
        prof.entries.push_back(slots[s]);
      }
    }
    auto c = PearlComplex::from_terms(GradedBasis(gens, n), n, N, RingMode::LambdaPlus, terms);
    if (!d_squared_zero_naive(c)) continue;
    SliceOracle oracle(c);
    for (std::int64_t i = 0; i < N; ++i) prof.ranks.push_back(oracle.dimension(low + i));
    out.push_back(std::move(prof));
  }
  return out;
}

}  // namespace pearl::oracle
