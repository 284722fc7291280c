// Copyright 2026 The nlbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace nlbox {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that cannot be interpreted at all (wrong shape, non-finite entries).
class MalformedInputError : public Error {
 public:
  using Error::Error;
};

/// A box that fails positivity, normalization or no-signaling where a valid
/// box is required.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InfeasibleCorrelatorError : public Error {
 public:
  using Error::Error;
};

/// Convex weights that are negative or do not sum to one.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The two marginal computations of a party disagree.
class SignalingError : public Error {
 public:
  SignalingError(const std::string& what, double first, double second)
      : Error(what), first_(first), second_(second) {}

  double first() const { return first_; }
  double second() const { return second_; }

 private:
  double first_;
  double second_;
};

class CoefficientError : public Error {
 public:
  using Error::Error;
};

/// Measurement angles at which the Cabello completion is undefined.
class DegenerateConstraintError : public Error {
 public:
  using Error::Error;
};

/// Search domain that is empty or inconsistent.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SamplingFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlbox
