// Copyright 2026 The feasmass Authors
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

namespace feasmass {

/// Malformed input text. The message carries the offending line number.
class ParseError : public std::runtime_error {
   public:
    ParseError(const std::string &what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {
    }
    int line() const {
        return line_;
    }

   private:
    int line_;
};

/// Shapes that do not agree (non-square matrix, wrong bit count, ...).
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds what the dense representation is allowed to allocate.
class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace feasmass
