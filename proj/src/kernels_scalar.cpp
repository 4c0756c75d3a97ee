#include "o3/kernels.hpp"

namespace o3::kernels {

namespace {

void compose_scalar(uint16_t* dst, const uint16_t* a, const uint16_t* b,
                    size_t n) {
  for (size_t i = 0; i < n; ++i) dst[i] = b[a[i]];
}

bool is_identity_scalar(const uint16_t* p, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (p[i] != i) return false;
  return true;
}

}  // namespace

const Table& scalar_table() {
  static const Table t{"scalar", &compose_scalar, &is_identity_scalar};
  return t;
}

}  // namespace o3::kernels
