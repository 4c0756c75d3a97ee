#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace o3 {

// Knobs shared by the search and classification layers.  Enumeration beyond
// `cap` elements and conjugacy classes beyond `cap` members are refused, not
// attempted.  threads == 0 means use all hardware threads.
struct RunConfig {
  uint64_t cap = 20'000'000;
  uint32_t threads = 1;
  std::string cache_dir;  // empty disables caching
  bool timing = false;    // timing lines to stderr
};

// Refusal with diagnostics; maps to CLI exit code 2.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace o3
