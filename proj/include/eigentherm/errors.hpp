// Copyright 2026 The eigentherm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eigentherm {

/// Invalid argument or inconsistent inputs.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested object would not fit in addressable memory.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical routine (eigensolver, root finder) failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but outside the domain where the quantity is defined
/// (e.g. engine analysis at negative temperature).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace eigentherm
