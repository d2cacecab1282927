// Copyright 2026 The nstkit Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace nst {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor or image dimensions do not agree with what an operation needs.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A caller-supplied argument is out of its documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Statistics cannot be computed from the input (too few samples, zero rank).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Image file could not be decoded or encoded.
class ImageError : public Error {
 public:
  using Error::Error;
};

/// Weight file does not follow the NSTW layout.
class FormatError : public Error {
 public:
  enum class Kind { kIo, kBadMagic, kBadVersion, kTruncated, kTrailingData, kBadHeader };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Weight tensor uses a dtype other than f32.
class UnsupportedDtypeError : public Error {
 public:
  using Error::Error;
};

/// A tensor required by the network architecture is missing or misshapen.
class ManifestError : public Error {
 public:
  using Error::Error;
};

}  // namespace nst
