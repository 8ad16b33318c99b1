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

#include "cayley/zd/matrix.hpp"

#include <sstream>

#include "cayley/error.hpp"

namespace cayley::zd {

IntMatrix::IntMatrix(std::size_t d, std::vector<BigInt> entries) : d_(d), a_(std::move(entries)) {
  if (a_.size() != d * d) throw InputError("matrix needs " + std::to_string(d * d) + " entries");
}

IntMatrix IntMatrix::identity(std::size_t d) {
  IntMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  const std::size_t d = rows.size();
  IntMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (rows[i].size() != d) throw InputError("matrix is not square");
    for (std::size_t j = 0; j < d; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("matrix dimension mismatch");
  const std::size_t d = a.dim();
  IntMatrix c(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < d; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

ZVector operator*(const ZVector& v, const IntMatrix& m) {
  if (v.size() != m.dim()) throw InputError("vector dimension does not match matrix");
  ZVector out(m.dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

ZVector operator+(const ZVector& a, const ZVector& b) {
  if (a.size() != b.size()) throw InputError("vector dimension mismatch");
  ZVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

ZVector operator-(const ZVector& a) {
  ZVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

// Bareiss fraction-free elimination.
BigInt determinant(const IntMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return 1;
  std::vector<BigInt> a = m.entries();
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  const BigInt det = determinant(m);
  return det == 1 || det == -1;
}

IntMatrix inverse(const IntMatrix& m) {
  const std::size_t n = m.dim();
  const BigInt det = determinant(m);
  if (det != 1 && det != -1) throw InputError("matrix is not invertible over Z (det " + det.str() + ")");
  if (n == 1) return IntMatrix(1, {det});
  IntMatrix inv(n);
  IntMatrix minor(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      const BigInt cof = ((i + j) % 2 ? -1 : 1) * determinant(minor);
      inv(j, i) = cof * det;  // det is ±1, so dividing by it is multiplying.
    }
  }
  return inv;
}

IntMatrix power(const IntMatrix& m, long long k) {
  IntMatrix base = k < 0 ? inverse(m) : m;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
  IntMatrix out = IntMatrix::identity(m.dim());
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.dim() + b.dim();
  IntMatrix m(n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a(i, j);
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) m(a.dim() + i, a.dim() + j) = b(i, j);
  }
  return m;
}

IntMatrix block(const IntMatrix& m, std::size_t first, std::size_t size) {
  if (first + size > m.dim()) throw InputError("block out of range");
  IntMatrix b(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) b(i, j) = m(first + i, first + j);
  }
  return b;
}

ZVector zero_vector(std::size_t d) { return ZVector(d); }

ZVector unit_vector(std::size_t d, std::size_t i) {
  ZVector v(d);
  v.at(i) = 1;
  return v;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) out << (j ? "," : "") << m(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string to_string(const ZVector& v) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace cayley::zd
