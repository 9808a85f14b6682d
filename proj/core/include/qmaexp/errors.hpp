// Copyright 2026 The qmaexp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace qmaexp {

/// Index or parameter outside the valid domain of an operation.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A desk-scale cap (dense dimension, qubit count, brute-force size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition on the inputs does not hold.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Requested numerical configuration is not representable in double precision.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance, machine, or circuit description.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The protocol outcome falls outside the promise it is defined under.
class PromiseViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
[[noreturn]] void throw_contract(const std::string& what);
}  // namespace detail

}  // namespace qmaexp
