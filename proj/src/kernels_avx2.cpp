// AVX2 variants.  This translation unit is compiled with -mavx2 and is only
// added to the build on x86-64; everything here stays behind runtime dispatch.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "o3/kernels.hpp"

namespace o3::kernels {

namespace {

// dst[i] = b[a[i]].  The gather pulls 32-bit lanes from b at byte offset
// 2*a[i]; for a[i] == n-1 that touches the pad slot at b[n], which every Perm
// buffer provides.
void compose_avx2(uint16_t* dst, const uint16_t* a, const uint16_t* b,
                  size_t n) {
  const __m256i lowmask = _mm256_set1_epi32(0xFFFF);
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i idx_lo = _mm256_cvtepu16_epi32(_mm256_castsi256_si128(va));
    __m256i idx_hi = _mm256_cvtepu16_epi32(_mm256_extracti128_si256(va, 1));
    __m256i g_lo = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(b), idx_lo, 2);
    __m256i g_hi = _mm256_i32gather_epi32(
        reinterpret_cast<const int*>(b), idx_hi, 2);
    g_lo = _mm256_and_si256(g_lo, lowmask);
    g_hi = _mm256_and_si256(g_hi, lowmask);
    __m256i packed = _mm256_packus_epi32(g_lo, g_hi);
    // packus interleaves 128-bit lanes; restore order.
    packed = _mm256_permute4x64_epi64(packed, 0xD8);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), packed);
  }
  for (; i < n; ++i) dst[i] = b[a[i]];
}

bool is_identity_avx2(const uint16_t* p, size_t n) {
  const __m256i step = _mm256_set1_epi16(16);
  __m256i iota = _mm256_setr_epi16(0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12,
                                   13, 14, 15);
  size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    __m256i eq = _mm256_cmpeq_epi16(v, iota);
    if (_mm256_movemask_epi8(eq) != -1) return false;
    iota = _mm256_add_epi16(iota, step);
  }
  for (; i < n; ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace

const Table& avx2_table() {
  static const Table t{"avx2", &compose_avx2, &is_identity_avx2};
  return t;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

}  // namespace o3::kernels

#endif  // x86-64
