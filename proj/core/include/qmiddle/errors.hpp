// Copyright 2026 The qmiddle Authors
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

namespace qmiddle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad q, non-coprime shift, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A requested field table exceeds the configured memory bound.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Integer arithmetic left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A supplied modulus polynomial does not generate the full multiplicative group.
class NotPrimitiveError : public Error {
 public:
  using Error::Error;
};

/// Span of coincident points was requested.
class DegenerateSpanError : public Error {
 public:
  using Error::Error;
};

/// A structural fact the construction relies on did not hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The cycle construction could not complete.
class ConstructionFailure : public Error {
 public:
  using Error::Error;
};

/// A certificate could not be parsed or does not follow the schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmiddle
