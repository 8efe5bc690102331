// Copyright 2026 The Leadfollow Authors
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

#ifndef LEADFOLLOW_ERROR_H_
#define LEADFOLLOW_ERROR_H_

#include <stdexcept>
#include <string>

namespace leadfollow {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a documented invariant (shape, range, finiteness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file or text payload could not be decoded. `field()` names the offending
// field (or line) so callers can point the user at it.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& detail)
      : Error("parse error in '" + field + "': " + detail),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace leadfollow

#endif  // LEADFOLLOW_ERROR_H_
