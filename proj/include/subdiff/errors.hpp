#pragma once

#include <stdexcept>
#include <string>

namespace subdiff {

/// A numerical procedure (quadrature, root finding, transform inversion)
/// failed to reach its stated tolerance.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unresolvable experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace subdiff
