#pragma once

#include <stdexcept>
#include <string>

namespace effham {

// Invalid user-supplied parameter (sizes, names, out-of-range values).
class invalid_parameter_error : public std::invalid_argument {
 public:
  explicit invalid_parameter_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// Tensor dimension exceeds the supported dense-matrix budget.
class size_limit_error : public std::length_error {
 public:
  explicit size_limit_error(const std::string& what)
      : std::length_error(what) {}
};

// A ladder representation violates its own structure function.
class representation_inconsistent_error : public std::logic_error {
 public:
  explicit representation_inconsistent_error(const std::string& what)
      : std::logic_error(what) {}
};

// Degenerate frequencies make the expansion parameters undefined.
class division_by_zero_error : public std::domain_error {
 public:
  explicit division_by_zero_error(const std::string& what)
      : std::domain_error(what) {}
};

// Renormalized slow frequency is non-positive: outside the model's regime.
class regime_invalid_error : public std::domain_error {
 public:
  explicit regime_invalid_error(const std::string& what)
      : std::domain_error(what) {}
};

// A matrix expected to be block-diagonal under a parity grading is not.
class not_block_diagonal_error : public std::logic_error {
 public:
  explicit not_block_diagonal_error(const std::string& what)
      : std::logic_error(what) {}
};

// The Fock-cutoff doubling schedule was exhausted without convergence.
class no_convergence_error : public std::runtime_error {
 public:
  explicit no_convergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// A scan interval does not bracket the sought sign change / transition.
class not_bracketed_error : public std::runtime_error {
 public:
  explicit not_bracketed_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace effham
