#pragma once

#include <stdexcept>
#include <string>

namespace quadrep {

/// Coefficient outside the ten supported values, or an operation that is
/// undefined for the given coefficient (norm-element counts for a = 27).
class UnsupportedCoefficient : public std::invalid_argument {
 public:
  explicit UnsupportedCoefficient(const std::string& what)
      : std::invalid_argument(what) {}

  static UnsupportedCoefficient for_coefficient(long long a) {
    return UnsupportedCoefficient("unsupported coefficient a=" +
                                  std::to_string(a));
  }
};

/// A brute-force enumeration was asked to iterate more states than its guard
/// allows.
class GuardExceeded : public std::runtime_error {
 public:
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quadrep
