#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

// Bad arguments: invalid item parameters, mode/model mismatch, malformed policy.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Ability estimation was requested before both response outcomes were observed.
class InitializationIncomplete : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The estimating function has no sign change within the search limit.
class DegenerateTranscript : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BankExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A runtime-verified bound of the divergence construction did not hold.
class BoundViolation : public std::runtime_error {
 public:
  BoundViolation(std::size_t step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace catlab
