#pragma once

#include <stdexcept>
#include <string>

namespace hwire {

// Error taxonomy shared by the library and the CLI exit-code mapping.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

// Signed 64-bit arithmetic left the representable range.
struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "overflow"; }
};

// A precondition or input-format violation (bad file, bad flag value, bad pair).
struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "validation"; }
};

// Request outside the defined domain of an operation (element not in ball, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
  const char* kind() const noexcept override { return "domain"; }
};

// A configured memory or size cap was hit; carries the count reached.
struct ResourceError : Error {
  ResourceError(const std::string& what, std::size_t reached)
      : Error(what), count_reached(reached) {}
  const char* kind() const noexcept override { return "resource"; }
  std::size_t count_reached;
};

// Randomized construction exhausted its attempt budget.
struct GenerationError : Error {
  GenerationError(const std::string& what, int attempts)
      : Error(what), attempts(attempts) {}
  const char* kind() const noexcept override { return "generation"; }
  int attempts;
};

}  // namespace hwire
