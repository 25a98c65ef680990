// AVX2 word kernels. This translation unit is compiled with -mavx2 and only
// entered after a runtime CPUID check.

#include "pearl/gf2.hpp"

#include <immintrin.h>

namespace pearl::gf2 {

namespace {

constexpr std::size_t kLane = 4;  // 64-bit words per 256-bit register

void xor_into_avx2(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < words; ++i) dst[i] ^= src[i];
}

// Nibble-table popcount (Mula's method), summed with SAD against zero.
std::size_t popcount_avx2(const Word* src, std::size_t words) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1,
                                         2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + kLane <= words; i += kLane) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[kLane];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t n = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < words; ++i) n += static_cast<std::size_t>(__builtin_popcountll(src[i]));
  return n;
}

bool any_avx2(const Word* src, std::size_t words) {
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + kLane <= words; i += kLane) {
    acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i)));
  }
  if (!_mm256_testz_si256(acc, acc)) return true;
  for (; i < words; ++i) {
    if (src[i]) return true;
  }
  return false;
}

const Kernels kAvx2{"avx2", xor_into_avx2, popcount_avx2, any_avx2};

}  // namespace

const Kernels* avx2_kernels() noexcept { return &kAvx2; }

}  // namespace pearl::gf2
