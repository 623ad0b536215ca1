// Copyright 2026 The aldp Authors
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

namespace aldp {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidBudget : public Error {
 public:
  using Error::Error;
};

// A derived mechanism parameter violates a feasibility condition
// (for example the hypercube mechanism requires C_d * delta < 1).
class ConstraintViolated : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class Overflow : public Error {
 public:
  using Error::Error;
};

class InvalidQ : public Error {
 public:
  using Error::Error;
};

class NoRootInBracket : public Error {
 public:
  using Error::Error;
};

class NegativeDiscriminant : public Error {
 public:
  using Error::Error;
};

class MixedProtocolReports : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InsufficientUsers : public Error {
 public:
  using Error::Error;
};

class DomainTooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace aldp
