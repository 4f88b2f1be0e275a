// Copyright 2026 The capmix Authors
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

#ifndef CAPMIX_ERROR_HPP
#define CAPMIX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace capmix {

// Base for every error raised by the library. The CLI maps all of them to
// exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid domain value: negative or non-finite coordinate, empty set, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

class ProbabilityError : public Error {
 public:
  using Error::Error;
};

// Raised instead of truncating an enumeration that would exceed its cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}

  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

}  // namespace capmix

#endif  // CAPMIX_ERROR_HPP
