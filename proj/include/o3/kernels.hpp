#pragma once

#include <cstddef>
#include <cstdint>

// Image-array kernels behind the permutation machinery.
//
// Every routine operates on raw uint16_t image arrays.  Callers guarantee one
// trailing slot past `n` on any array passed as a gather SOURCE (the AVX2
// compose gathers 32-bit lanes and may touch two bytes past the last image).
// Perm buffers in this codebase are always allocated n+1 wide for that reason.

namespace o3::kernels {

struct Table {
  const char* name;
  // dst[i] = b[a[i]] for i in [0, n).  dst must not alias a or b.
  void (*compose)(uint16_t* dst, const uint16_t* a, const uint16_t* b,
                  size_t n);
  // true iff p[i] == i for all i.
  bool (*is_identity)(const uint16_t* p, size_t n);
};

const Table& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const Table& avx2_table();
bool avx2_available();
#endif

// Active table, resolved once per process: AVX2 when the CPU has it, unless
// O3_KERNEL=scalar|avx2 forces a choice.  Forcing an unavailable ISA falls
// back to scalar.
const Table& active();

// All tables usable on this machine (scalar first).  For equivalence tests.
size_t usable_tables(const Table** out, size_t max);

}  // namespace o3::kernels
