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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/fsa/factored.hpp"
#include "cayley/fsa/relation.hpp"
#include "cayley/zd/matrix.hpp"

namespace cayley::zd {

// Integers are written in two's complement, least significant digit first,
// in the shortest form: a single digit, or a word whose last two digits
// differ. value(d_0 ... d_{k-1}) = sum_{i<k-1} d_i 2^i - d_{k-1} 2^{k-1}.
//
//   0 -> "0", -1 -> "1", 1 -> "10", 2 -> "010", 6 -> "0110"
fsa::TrackWord enc_int(const BigInt& n);
// Throws ValidityError on empty or non-canonical input.
BigInt dec_int(std::span<const fsa::Letter> digits);

std::string enc_int_string(const BigInt& n);
BigInt dec_int_string(std::string_view digits);

bool is_canonical_int(std::span<const fsa::Letter> digits);

// d binary tracks.
fsa::ConvAlphabet int_alphabet(std::size_t d);

// Track i carries enc_int(v[i]).
fsa::ConvWord enc_vec(const ZVector& v);
ZVector dec_vec(std::size_t d, std::span<const fsa::Symbol> word);

// All enc_vec(v), v in Z^d.
fsa::Fsa canonical_language(std::size_t d);

// {(enc_vec(v), enc_vec(v M + t))}. Entries of M and t must fit in 32 bits.
//
// The recognizer adds the columns digit by digit from the least significant
// end. Its state holds one carry per output track and, per track, whether the
// track has ended and what its last digit was. An ended input track keeps
// contributing its sign digit. An output track may end once its remaining
// digits all equal its sign.
fsa::RegularRelation affine_relation(const IntMatrix& m, const ZVector& t);

// Tracks of Z^d grouped so that M only couples tracks within a group: the
// connected components of the graph with an edge {i, j} for each M_ij != 0.
// Groups are sorted by smallest member.
std::vector<std::vector<std::size_t>> coupled_blocks(const IntMatrix& m);

// affine_relation(M, t) as a product of one affine factor per coupled block.
fsa::FactoredRelation factored_affine(const IntMatrix& m, const ZVector& t);

// canonical_language(d) with one factor per track.
fsa::FactoredRelation factored_canonical(std::size_t d);

}  // namespace cayley::zd
