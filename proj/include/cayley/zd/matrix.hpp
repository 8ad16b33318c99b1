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

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cayley::zd {

// Expression templates off, so `auto` always yields a value.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

// Row vector in Z^d.
using ZVector = std::vector<BigInt>;

// Square integer matrix, row-major. Vectors act on the right: v * M.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t d) : d_(d), a_(d * d) {}
  IntMatrix(std::size_t d, std::vector<BigInt> entries);
  static IntMatrix identity(std::size_t d);
  // Nested rows; throws InputError unless square.
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t dim() const { return d_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
  const std::vector<BigInt>& entries() const { return a_; }

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t d_ = 0;
  std::vector<BigInt> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
ZVector operator*(const ZVector& v, const IntMatrix& m);
ZVector operator+(const ZVector& a, const ZVector& b);
ZVector operator-(const ZVector& a);

BigInt determinant(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);
// Exact inverse of a unimodular matrix; throws InputError otherwise.
IntMatrix inverse(const IntMatrix& m);
IntMatrix power(const IntMatrix& m, long long k);

// Block-diagonal assembly; off-diagonal blocks are zero.
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);
// Square sub-block starting at (first, first).
IntMatrix block(const IntMatrix& m, std::size_t first, std::size_t size);

ZVector zero_vector(std::size_t d);
ZVector unit_vector(std::size_t d, std::size_t i);

std::string to_string(const IntMatrix& m);
std::string to_string(const ZVector& v);

}  // namespace cayley::zd
