#pragma once

#include <stdexcept>
#include <string>

namespace nljc {

// Invalid user-facing configuration (bad parameter domain, malformed grid, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A computed quantity missed its numerical tolerance (e.g. truncated trace deficit).
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested too close to a branch point of the matrix logarithm.
class BranchPointError : public std::domain_error {
 public:
  explicit BranchPointError(const std::string& what) : std::domain_error(what) {}
};

// Root search finished its window without finding a zero.
class SearchExhaustedError : public std::runtime_error {
 public:
  explicit SearchExhaustedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nljc
