// lmaug/error.h

// Copyright 2026  lmaug authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LMAUG_ERROR_H_
#define LMAUG_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lmaug {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Invalid UTF-8 in corpus input.
class DecodingError : public Error {
 public:
  DecodingError(const std::string &what, std::size_t byte_offset)
      : Error(what + " at byte offset " + std::to_string(byte_offset)),
        byte_offset_(byte_offset) {}
  std::size_t ByteOffset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Malformed text input (ARPA files, lattice files, policies, configs).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &what) : Error(what) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string &what) : Error(what) {}
};

// Lattice violates the acyclic / connected / has-a-path contract.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string &what) : Error(what) {}
};

}  // namespace lmaug

#endif  // LMAUG_ERROR_H_
