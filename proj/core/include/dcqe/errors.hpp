// Copyright 2026 The dcqe Authors
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

namespace dcqe {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register layouts conflict (duplicate names in a tensor product) or do not
/// match where they must (inner products, phase comparison).
class LayoutError : public Error {
 public:
  using Error::Error;
};

class MissingRegisterError : public Error {
 public:
  using Error::Error;
};

/// Unknown basis label or outcome label.
class LabelError : public Error {
 public:
  using Error::Error;
};

class NonIsometricMapError : public Error {
 public:
  using Error::Error;
};

class NonOrthonormalBasisError : public Error {
 public:
  using Error::Error;
};

/// Collapse was requested onto an outcome of (numerically) zero probability.
class ImpossibleOutcomeError : public Error {
 public:
  using Error::Error;
};

/// Two measurements that must act on distinct registers share one.
class RegisterConflictError : public Error {
 public:
  using Error::Error;
};

/// Invalid run or command configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class UndefinedVisibilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcqe
