// Copyright 2026 The kcrag Authors.
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

#ifndef KCRAG_ERROR_HPP_
#define KCRAG_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kcrag {

// Exit codes used by the command-line front end.
enum class ErrorKind {
  kConfig = 2,
  kInput = 3,
  kVerification = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what)
      : Error(ErrorKind::kInput, what) {}
};

// Malformed record in an input file. `line` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& what)
      : InputError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what)
      : Error(ErrorKind::kVerification, what) {}
};

}  // namespace kcrag

#endif  // KCRAG_ERROR_HPP_
