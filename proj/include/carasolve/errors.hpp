#pragma once

#include <stdexcept>
#include <string>

namespace carasolve {

/// Bad construction parameters: unknown builtin, unusable sampler, ...
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the declared domain (grid window, partition span).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated operation precondition (initial value mismatch, divergent input).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally incompatible grid functions (mismatched partitions).
class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace carasolve
