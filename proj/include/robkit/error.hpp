// Copyright 2026 The robkit Authors
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

namespace robkit {

enum class ErrorKind {
  kInvalidDimension,
  kDimensionMismatch,
  kSizeCap,
  kInvalidArgument,
  kNumeric,
  kConstruction,
  kCertificateQuality,
  kNotApplicable,
  kParse,
};

/// Base exception for every failure raised by the library. The kind is what
/// the C API maps onto its status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numeric failure that carries the quantity it failed on (a residual or a
/// duality gap).
class NumericError : public Error {
 public:
  NumericError(ErrorKind kind, const std::string& what, double measured)
      : Error(kind, what), measured_(measured) {}

  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace robkit
