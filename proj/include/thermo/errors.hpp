#pragma once

#include <stdexcept>
#include <string>

namespace thermo {

// Invalid parameters, data, or scenario configuration. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A computation detected that it cannot certify its own result: sign change
// where a conjugate pair was required, degenerate denominator at a zone
// boundary, quadrature tail that refuses to converge. Maps to CLI exit code 1.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thermo
