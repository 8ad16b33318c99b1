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

#include <compare>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cayley/fg/free_group.hpp"
#include "cayley/fsa/alphabet.hpp"
#include "cayley/zd/matrix.hpp"

namespace cayley::sd {

using fg::FreeWord;
using zd::BigInt;
using zd::IntMatrix;
using zd::ZVector;
using zd::operator*;
using zd::operator+;
using zd::operator-;

// G = Z^d ⋊ F_n with τ(f_i) = M_i. Construction checks shapes and that every
// M_i is invertible over Z.
class GroupSpec {
 public:
  GroupSpec() = default;
  GroupSpec(std::size_t d, std::size_t n, std::vector<IntMatrix> matrices, std::string name = "");

  std::size_t d() const { return d_; }
  std::size_t n() const { return n_; }
  const std::string& name() const { return name_; }
  const IntMatrix& matrix(std::size_t i) const { return matrices_.at(i); }
  const IntMatrix& matrix_inverse(std::size_t i) const { return inverses_.at(i); }
  const std::vector<IntMatrix>& matrices() const { return matrices_; }
  // τ of the signed generator g.
  const IntMatrix& tau_generator(int g) const;

  // {"d": 2, "n": 1, "matrices": [[[1,1],[0,1]]], "name": "..."}. Matrices
  // may also be flat row-major arrays of d*d integers.
  static GroupSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  bool operator==(const GroupSpec& o) const { return d_ == o.d_ && n_ == o.n_ && matrices_ == o.matrices_; }

 private:
  std::size_t d_ = 0;
  std::size_t n_ = 0;
  std::vector<IntMatrix> matrices_;
  std::vector<IntMatrix> inverses_;
  std::string name_;
};

GroupSpec load_spec(const std::string& path);
void save_spec(const GroupSpec& spec, const std::string& path);

// Reference specs used by tests and benchmarks.
GroupSpec unipotent_spec();  // d=2, n=1, M = [[1,1],[0,1]]
GroupSpec sanov_spec();      // d=2, n=2, the Sanov pair

// (b, a) with b reduced.
struct GElement {
  FreeWord b;
  ZVector a;
  bool operator==(const GElement&) const = default;
  std::weak_ordering operator<=>(const GElement& o) const {
    if (auto c = b <=> o.b; c != 0) return c;
    return a <=> o.a;
  }
};

GElement identity(const GroupSpec& spec);
// (b1, a1)(b2, a2) = (b1 b2, a1 τ(b2) + a2).
GElement multiply(const GElement& x, const GElement& y, const GroupSpec& spec);
// (b, a)^-1 = (b^-1, -a τ(b)^-1).
GElement inverse(const GElement& x, const GroupSpec& spec);
IntMatrix tau_of(std::span<const int> b, const GroupSpec& spec);
// a τ(b), without forming τ(b).
ZVector act(const ZVector& a, std::span<const int> b, const GroupSpec& spec);

std::string format_element(const GElement& g, const GroupSpec& spec);

// A generator of S = {f_i^±1} ∪ {e_j^±1}. index is signed and 1-based.
struct Gen {
  bool translation = false;
  int index = 1;
  bool operator==(const Gen&) const = default;
};

std::size_t num_generators(const GroupSpec& spec);
// Position in the order f1, F1, ..., fn, Fn, e1, E1, ..., ed, Ed. The inverse
// of generator k is k ^ 1.
std::size_t gen_id(const Gen& g, const GroupSpec& spec);
Gen gen_at(std::size_t id, const GroupSpec& spec);
Gen inverse(const Gen& g);
GElement element(const Gen& g, const GroupSpec& spec);
std::string gen_name(const Gen& g);

using GroupWord = std::vector<Gen>;

// Names f1, F1, e1, E1 (capital = inverse), separated by spaces or not.
// A bare f (e) means f1 (e1) when n = 1 (d = 1). "" and "1" are the empty
// word. Throws InputError.
GroupWord parse_group_word(std::string_view text, const GroupSpec& spec);
std::string format_group_word(const GroupWord& w);
GroupWord inverse(const GroupWord& w);
GElement evaluate(const GroupWord& w, const GroupSpec& spec);
GroupWord random_group_word(std::mt19937_64& rng, const GroupSpec& spec, std::size_t length);

// Track 0 holds the free word over [f1, F1, ...], tracks 1..d the integer
// encodings. The identity encodes as the single column (_, 0, ..., 0).
fsa::ConvAlphabet element_alphabet(const GroupSpec& spec);
std::vector<fsa::TrackWord> encode_tracks(const GElement& g);
fsa::ConvWord encode(const GElement& g, const GroupSpec& spec);
// Throws ValidityError unless track 0 is reduced and the others canonical.
GElement decode_tracks(std::span<const fsa::TrackWord> tracks, const GroupSpec& spec);
GElement decode(std::span<const fsa::Symbol> word, const GroupSpec& spec);

// Elements of word length <= radius over S, in breadth-first order with
// generators tried in S order.
std::vector<GElement> ball(const GroupSpec& spec, std::size_t radius);

}  // namespace cayley::sd
