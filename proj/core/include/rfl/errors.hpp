#pragma once

#include <stdexcept>

namespace rfl {

// A parameter combination outside the regime an operation is defined for
// (e.g. the non-linear growth rate below its threshold probability).
// Distinct from std::domain_error so callers can map it to its own exit code.
struct regime_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A request that would exceed a hard size/depth guard.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numeric construction failed its own verification (raise precision).
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rfl
