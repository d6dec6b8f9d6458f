// Copyright 2026 The oodlab Authors.
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

#ifndef OODLAB_ERRORS_H_
#define OODLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace oodlab {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on caller-supplied parameters or inputs was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A sample does not live in the sample space of the distribution.
class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class UnsupportedAnalyticEntropy : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// p/q is not integrable, so no distribution proportional to it exists.
class NonIntegrableRatio : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace oodlab

#endif  // OODLAB_ERRORS_H_
