// Copyright 2026 The Mimic Toolkit Authors
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

#ifndef MIMIC_ERRORS_H_
#define MIMIC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace mimic {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed (malformed JSON, bad numbers, ...).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Parsed input does not match the expected structure or skeleton.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Array sizes disagree between arguments.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A named preset or landmark does not exist.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Geometric degeneracy, e.g. parallel decomposition axes or zero-length bones.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mimic

#endif  // MIMIC_ERRORS_H_
