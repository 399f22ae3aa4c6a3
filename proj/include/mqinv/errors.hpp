#pragma once

#include <stdexcept>
#include <string>

namespace mqinv {

/// A computation refused to start because its combinatorial size exceeds a
/// configured limit. The message carries the counts.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A random sampler drew only singular candidates up to its retry cap.
class SamplingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mqinv
