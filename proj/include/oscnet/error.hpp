/* Copyright 2026 The oscnet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <stdexcept>
#include <string>

namespace oscnet {

// Base of every error thrown by the library. The C API maps each subclass to
// one status code; see oscnet.h.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, unknown names, violated preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Tensor or layer shapes that do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed, truncated or missing input files.
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss during training.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// An operation called in the wrong order (e.g. backward before forward).
class StateError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscnet
