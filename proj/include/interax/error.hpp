// Copyright 2026 The Interax Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace interax {

// Base of every error raised by the library. The CLI maps all of these to
// exit code 1 (domain error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (overlapping sets, bad order,
// out-of-range parameters).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A computation was requested on more players than its backend supports.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A game file could not be parsed or failed validation.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An external evaluator misbehaved. `raw_line()` holds the offending reply
// when there was one.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::string raw_line = {})
      : Error(what), raw_line_(std::move(raw_line)) {}
  const std::string& raw_line() const { return raw_line_; }

 private:
  std::string raw_line_;
};

}  // namespace interax
