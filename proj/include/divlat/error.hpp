#pragma once

#include <stdexcept>
#include <string>

namespace divlat {

// Error kinds map one-to-one onto the CLI exit codes (see cli.hpp).

// Malformed or out-of-range input: bad ids, mismatched sizes, parse failures.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A measure or run configuration that cannot be honoured (e.g. abs without usable values).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The instance has no feasible solution (e.g. no s-t path).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An explicit size guard or enumeration cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant or caller contract was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The iterative SFM solver failed to certify optimality within its budget.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, long long best_value)
      : std::runtime_error(what), best_value_(best_value) {}

  long long best_value() const noexcept { return best_value_; }

 private:
  long long best_value_;
};

}  // namespace divlat
