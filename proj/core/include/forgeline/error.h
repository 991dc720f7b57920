// Copyright 2026 The Forgeline Authors.
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

#ifndef FORGELINE_ERROR_H_
#define FORGELINE_ERROR_H_

#include <stdexcept>
#include <string>

namespace forgeline {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates a documented precondition or data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Mask or image payload could not be encoded or decoded.
class CodecError : public Error {
 public:
  using Error::Error;
};

// Operands have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Backend configuration is unusable (missing endpoint, bad mock kind...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A backend could not be reached, timed out or answered with a non-2xx
// status. Carries the endpoint identity ("analyzer@http://host:port").
class TransportError : public Error {
 public:
  TransportError(std::string endpoint, const std::string& what)
      : Error(endpoint + ": " + what), endpoint_(std::move(endpoint)) {}
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

// A backend answered, but the payload does not follow the wire protocol.
class ProtocolError : public Error {
 public:
  ProtocolError(std::string endpoint, const std::string& what)
      : Error(endpoint + ": " + what), endpoint_(std::move(endpoint)) {}
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
};

}  // namespace forgeline

#endif  // FORGELINE_ERROR_H_
