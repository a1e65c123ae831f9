// Copyright 2026 The Negentropy Authors
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

namespace negentropy {

/// Base class for every error raised by the library. The CLI maps the
/// concrete subclasses onto disjoint exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A register block name or subsystem index does not exist.
class AddressingError : public Error {
 public:
  using Error::Error;
};

/// The request exceeds the dense-matrix capacity of the library.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A convex solve did not reach its target gap within the iteration cap.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Input document could not be parsed or does not follow its schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace negentropy
