// Copyright 2026 The qcl Authors
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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qcl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Qubit or element index outside the valid range.
class IndexError : public Error {
  public:
    using Error::Error;
};

/// Caller passed arguments that violate a precondition.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

/// Input object fails a structural check (e.g. non-Hermitian matrix).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Malformed dataset or checkpoint file.
class FormatError : public Error {
  public:
    using Error::Error;
};

/// Non-finite value encountered during a numeric computation.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Iterative routine hit its iteration limit.
class ConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Bad experiment configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Missing or unusable input data.
class DataError : public Error {
  public:
    using Error::Error;
};

namespace detail {

/// "%.3e" formatting for error messages.
inline std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

} // namespace detail

} // namespace qcl
