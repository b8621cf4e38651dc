// Copyright 2026 The qgd Authors
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

namespace qgd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A size guard (dense tensor, qubit count) was exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An argument violated a documented precondition.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// x - eta*D*x vanished, so the next iterate is undefined.
class DegenerateStep : public Error {
public:
    using Error::Error;
};

class PostSelectionFailure : public Error {
public:
    using Error::Error;
};

/// Dominant eigenvalue is degenerate; purification has no unique answer.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

namespace detail {
[[noreturn]] void throw_dimension(const std::string& where, long expected, long actual);
}  // namespace detail

}  // namespace qgd
