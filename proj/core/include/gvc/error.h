// Copyright 2026 The gvc-lab Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gvc {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto its exit-code contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class TruncationError : public ParseError {
 public:
  TruncationError(const std::string& what, std::size_t offset)
      : ParseError(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnsupportedFormat : public ParseError {
 public:
  using ParseError::ParseError;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class EncodeError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class SerializeError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProfileError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, std::string binding_constraint)
      : Error(what), binding_constraint_(std::move(binding_constraint)) {}
  // One of "empty-ladder", "latency", "rate".
  const std::string& binding_constraint() const { return binding_constraint_; }

 private:
  std::string binding_constraint_;
};

}  // namespace gvc
