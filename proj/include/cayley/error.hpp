// Copyright 2026 The Cayley Automata Authors
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

namespace cayley {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word or tuple that is not a well-formed convolution, or an encoding that
// is not canonical.
class ValidityError : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

// unique_member() on an empty language. Signals a relation that is not total.
class EmptyLanguage : public Error {
 public:
  using Error::Error;
};

// unique_member() on a language with two or more words. Signals a relation
// that is not functional.
class AmbiguousLanguage : public Error {
 public:
  using Error::Error;
};

// Malformed user input: files, word syntax, matrices.
class InputError : public Error {
 public:
  using Error::Error;
};

// An exact check on a constructed structure failed.
class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace cayley
