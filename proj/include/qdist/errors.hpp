// Copyright 2026 The qdist developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qdist {

/// Base class for every failure the library reports.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape / domain problems on inputs.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};

// Numerical-kernel failures.
class NotHermitian : public Error {
 public:
  using Error::Error;
};
class NotPSD : public Error {
 public:
  using Error::Error;
};
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// State-level constraint violations.
class ValidationFailure : public Error {
 public:
  using Error::Error;
};
class BlochNormExceeded : public Error {
 public:
  using Error::Error;
};
class NegativeProbability : public Error {
 public:
  using Error::Error;
};

// Relative entropy is only defined when supp(rho) is inside supp(sigma).
class SupportViolation : public Error {
 public:
  using Error::Error;
};

// Purification-specific failures.
class PurityViolation : public Error {
 public:
  using Error::Error;
};
class NotSamePurified : public Error {
 public:
  using Error::Error;
};
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

// State text format.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdist
