#pragma once

// Dense linear algebra over Z₂ on packed 64-bit words. The word-level kernels
// come in a scalar reference version and an AVX2 version; the active set is
// chosen once at startup from CPUID and can be overridden for testing.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pearl::gf2 {

using Word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

struct Kernels {
  const char* name;
  void (*xor_into)(Word* dst, const Word* src, std::size_t words);
  std::size_t (*popcount)(const Word* src, std::size_t words);
  bool (*any)(const Word* src, std::size_t words);
};

enum class KernelKind { Auto, Scalar, Avx2 };

const Kernels& scalar_kernels() noexcept;
/// Nullptr when the build has no AVX2 variant.
const Kernels* avx2_kernels() noexcept;
bool avx2_supported() noexcept;
const Kernels& active_kernels() noexcept;
/// Returns false (and leaves the selection unchanged) if `kind` is unavailable.
bool select_kernels(KernelKind kind) noexcept;

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true) {
    Word mask = Word{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  bool any() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or size() when zero.
  std::size_t lowest() const;
  /// Inner product over Z₂.
  bool dot(const BitVector& other) const;

  const std::vector<Word>& words() const noexcept { return words_; }
  std::vector<Word>& words() noexcept { return words_; }
  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// rows × cols matrix stored as row bit vectors.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { rows_[r].flip(c); }
  const BitVector& row(std::size_t r) const { return rows_[r]; }
  BitVector& row(std::size_t r) { return rows_[r]; }
  BitVector column(std::size_t c) const;
  void append_row(BitVector r);

  Matrix transpose() const;
  bool is_zero() const;
  BitVector apply(const BitVector& x) const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

std::size_t rank(Matrix m);
/// Basis of {x : m·x = 0}.
std::vector<BitVector> kernel(const Matrix& m);
/// Basis of the column space.
std::vector<BitVector> column_space(const Matrix& m);

/// Incremental echelon basis of a subspace of Z₂^dim.
class Eliminator {
 public:
  explicit Eliminator(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  /// Adds v; returns true when it enlarged the span.
  bool insert(const BitVector& v);
  /// Residue of v after reduction by the current basis (zero iff v is in the span).
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return !reduce(v).any(); }

 private:
  std::size_t dim_;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t span_dimension(const std::vector<BitVector>& vectors, std::size_t dim);

}  // namespace pearl::gf2
