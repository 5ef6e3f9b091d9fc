#pragma once

#include <stdexcept>
#include <string>

namespace mc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-supplied values: degrees, indices, config fields.
struct InvalidArgument : Error {
  using Error::Error;
};

// A solution handed to an oracle that is not in its fiber.
struct UnknownSolution : Error {
  using Error::Error;
};

// Query budget exhausted before the stopping criterion fired.
struct BudgetExhausted : Error {
  using Error::Error;
};

// Path tracking step underflow; the caller must resample the loop.
struct TrackingFailure : Error {
  using Error::Error;
};

// Fiber matching violated the nearest/second-nearest gap ratio.
struct AmbiguousMatch : Error {
  using Error::Error;
};

// Operation unsupported by the oracle backend (e.g. slices on numeric).
struct FeatureNotAvailable : Error {
  using Error::Error;
};

// Malformed, truncated, or corrupt serialized tree.
struct FormatError : Error {
  using Error::Error;
};

// Tree and oracle descriptors disagree.
struct DescriptorMismatch : Error {
  using Error::Error;
};

}  // namespace mc
