// Copyright 2026 The subcomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBCOMP_ERRORS_H_
#define SUBCOMP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace subcomp {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::string const& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value or file violates an invariant of its type.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Shapes of matrices or vectors do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A lookup key is absent from an embedding store.
class MissingKeyError : public Error {
 public:
  explicit MissingKeyError(std::string key, std::string const& context = {})
      : Error((context.empty() ? "" : context + ": ") + "MissingKey(\"" + key + "\")"),
        key_(std::move(key)) {}
  std::string const& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace subcomp

#endif  // SUBCOMP_ERRORS_H_
