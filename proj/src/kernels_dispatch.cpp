#include <cstdlib>
#include <cstring>

#include "o3/kernels.hpp"

namespace o3::kernels {

namespace {

const Table& resolve() {
  const char* force = std::getenv("O3_KERNEL");
#if defined(__x86_64__) || defined(_M_X64)
  if (force && std::strcmp(force, "scalar") == 0) return scalar_table();
  if (force && std::strcmp(force, "avx2") == 0)
    return avx2_available() ? avx2_table() : scalar_table();
  if (avx2_available()) return avx2_table();
#else
  (void)force;
#endif
  return scalar_table();
}

}  // namespace

const Table& active() {
  static const Table& t = resolve();
  return t;
}

size_t usable_tables(const Table** out, size_t max) {
  size_t k = 0;
  if (k < max) out[k++] = &scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_available() && k < max) out[k++] = &avx2_table();
#endif
  return k;
}

}  // namespace o3::kernels
