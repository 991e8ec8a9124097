#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sbmp {

/// Violation of a documented precondition (dimension mismatch, bad argument
/// range, lookup of a node id that does not exist, ...).
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Any problem with user-supplied input: config files, map files, start/goal
/// placement. CLI maps this family to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed map file. `offset` is the byte position the parser choked on.
struct ParseError : InputError {
  ParseError(const std::string& what, std::size_t offset)
      : InputError(what + " (byte offset " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

/// Semantic problem in a config file; the message names the offending field.
struct ConfigError : InputError {
  using InputError::InputError;
};

/// Lookup of a planner/sampler name that is not registered.
struct UnknownNameError : InputError {
  using InputError::InputError;
};

/// Attempt to register a duplicate or malformed name.
struct RegistrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A sampler gave up after too many consecutive out-of-bounds rejections.
struct SamplerExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sbmp
