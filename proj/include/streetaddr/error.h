// Copyright 2026 The Streetaddr Authors
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

#ifndef STREETADDR_ERROR_H_
#define STREETADDR_ERROR_H_

#include <stdexcept>
#include <string>

namespace streetaddr {

// Root of every error the library throws. Subclasses map onto the CLI exit
// codes in cli.cc.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input (PGM, world file, OSM XML, address string,
// ADDRMAP file).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int field = 0)
      : Error(what), field_(field) {}

  // 1-based address field for codec errors, 0 otherwise.
  int field() const { return field_; }

 private:
  int field_;
};

// Well-formed input that breaks a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Input from which no road graph can be built.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateCut : public Error {
 public:
  using Error::Error;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

// A quadrant holds more regions than a two-letter region label can name.
class RegionOverflow : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Lookup failures during forward geocoding.
class NotFound : public Error {
 public:
  using Error::Error;
};

class UnknownRoad : public NotFound {
 public:
  using NotFound::NotFound;
};

class UnknownRegion : public NotFound {
 public:
  using NotFound::NotFound;
};

class CityMismatch : public NotFound {
 public:
  using NotFound::NotFound;
};

}  // namespace streetaddr

#endif  // STREETADDR_ERROR_H_
