#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mc {

/// A point of the fiber. The tag is the fiber index in {1..d} for the
/// synthetic backend and 0 when absent (numeric backend). Solver logic never
/// consults tags directly; equality goes through the owning oracle.
struct Solution {
  std::int64_t tag = 0;
  std::vector<std::complex<double>> coords;
};

}  // namespace mc
