// Copyright 2026 The entcert Authors
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

#ifndef ENTCERT_ERROR_HPP
#define ENTCERT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace entcert {

/// Operand shapes do not fit together (mismatched dimensions, bad site index).
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation was not met by the caller.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An internal postcondition failed. Indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Statistical input carries no information for the requested test.
class DegenerateSampleError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace entcert

#endif  // ENTCERT_ERROR_HPP
