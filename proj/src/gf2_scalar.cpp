// Portable word kernels; the reference the AVX2 variant is tested against.

#include "pearl/gf2.hpp"

namespace pearl::gf2 {

namespace {

void xor_into_scalar(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] ^= src[i];
}

std::size_t popcount_scalar(const Word* src, std::size_t words) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < words; ++i) n += static_cast<std::size_t>(__builtin_popcountll(src[i]));
  return n;
}

bool any_scalar(const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if (src[i]) return true;
  }
  return false;
}

const Kernels kScalar{"scalar", xor_into_scalar, popcount_scalar, any_scalar};

}  // namespace

const Kernels& scalar_kernels() noexcept { return kScalar; }

}  // namespace pearl::gf2
