#include "pearl/gf2.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace pearl::gf2 {

#ifndef PEARL_HAVE_AVX2
const Kernels* avx2_kernels() noexcept { return nullptr; }
#endif

bool avx2_supported() noexcept {
#if defined(PEARL_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const Kernels* detect() noexcept {
  if (avx2_supported() && avx2_kernels()) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const Kernels*> g_active{detect()};

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("gf2: dimension mismatch");
}

}  // namespace

const Kernels& active_kernels() noexcept { return *g_active.load(std::memory_order_relaxed); }

bool select_kernels(KernelKind kind) noexcept {
  switch (kind) {
    case KernelKind::Auto:
      g_active.store(detect());
      return true;
    case KernelKind::Scalar:
      g_active.store(&scalar_kernels());
      return true;
    case KernelKind::Avx2:
      if (!avx2_supported() || !avx2_kernels()) return false;
      g_active.store(avx2_kernels());
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// BitVector

BitVector& BitVector::operator^=(const BitVector& other) {
  require_same_size(size_, other.size_);
  active_kernels().xor_into(words_.data(), other.words_.data(), words_.size());
  return *this;
}

bool BitVector::any() const { return active_kernels().any(words_.data(), words_.size()); }

std::size_t BitVector::count() const {
  return active_kernels().popcount(words_.data(), words_.size());
}

std::size_t BitVector::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(words_[w]));
  }
  return size_;
}

bool BitVector::dot(const BitVector& other) const {
  require_same_size(size_, other.size_);
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    n += static_cast<std::size_t>(__builtin_popcountll(words_[w] & other.words_[w]));
  }
  return n & 1U;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitVector Matrix::column(std::size_t c) const {
  BitVector v(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].get(c)) v.set(r);
  }
  return v;
}

void Matrix::append_row(BitVector r) {
  require_same_size(r.size(), cols_);
  rows_.push_back(std::move(r));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) t.set(c, r);
    }
  }
  return t;
}

bool Matrix::is_zero() const {
  return std::none_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.any(); });
}

BitVector Matrix::apply(const BitVector& x) const {
  require_same_size(x.size(), cols_);
  BitVector y(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].dot(x)) y.set(r);
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a.cols(), b.rows());
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.get(r, k)) out.rows_[r] ^= b.rows_[k];
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_size(a.rows(), b.rows());
  require_same_size(a.cols(), b.cols());
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) out.rows_[r] ^= b.rows_[r];
  return out;
}

namespace {

// In-place reduced row echelon form; returns the pivot column of each leading row.
std::vector<std::size_t> rref(std::vector<BitVector>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t r = rank;
    while (r < rows.size() && !rows[r].get(c)) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[rank], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && rows[i].get(c)) rows[i] ^= rows[rank];
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return span_dimension(rows, m.cols());
}

std::vector<BitVector> kernel(const Matrix& m) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  auto pivots = rref(rows, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector x(m.cols());
    x.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (rows[i].get(f)) x.set(pivots[i]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<BitVector> column_space(const Matrix& m) {
  Eliminator e(m.rows());
  std::vector<BitVector> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto col = m.column(c);
    if (e.insert(col)) basis.push_back(std::move(col));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Eliminator

BitVector Eliminator::reduce(BitVector v) const {
  require_same_size(v.size(), dim_);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= basis_[i];
  }
  return v;
}

bool Eliminator::insert(const BitVector& v) {
  auto r = reduce(v);
  std::size_t p = r.lowest();
  if (p == r.size()) return false;
  pivots_.push_back(p);
  basis_.push_back(std::move(r));
  return true;
}

std::size_t span_dimension(const std::vector<BitVector>& vectors, std::size_t dim) {
  Eliminator e(dim);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

}  // namespace pearl::gf2
