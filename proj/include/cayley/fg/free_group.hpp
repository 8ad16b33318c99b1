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

#include "cayley/fsa/relation.hpp"

namespace cayley::fg {

// A word in F_n as signed generator indices: +i is f_i, -i its inverse.
using FreeWord = std::vector<int>;

FreeWord reduce(std::span<const int> raw);
FreeWord inverse(std::span<const int> w);
// reduce(a b) without reducing a and b separately first.
FreeWord multiply(std::span<const int> a, std::span<const int> b);
bool is_reduced(std::span<const int> w);

// Generator names: prefix + index for f_i, upper-case prefix + index for its
// inverse. With one generator the index may be dropped. Words print as
// concatenated names ("f1F2f1", or "fff" when n = 1); the empty word prints
// as "1".
std::string format_word(std::span<const int> w, std::size_t n, char prefix = 'a');
// Accepts the printed form, names separated by spaces, and "" or "1" for the
// empty word. Does not reduce. Throws InputError on unknown names or indices
// above n.
FreeWord parse_word(std::string_view text, std::size_t n, char prefix = 'a');

// Track alphabet [p1, P1, p2, P2, ...]: f_i is letter 2(i-1), its inverse
// letter 2(i-1)+1.
fsa::Alphabet alphabet(std::size_t n, char prefix = 'a');
fsa::Letter to_letter(int g);
int from_letter(fsa::Letter l);
fsa::TrackWord to_track(std::span<const int> w);
FreeWord from_track(std::span<const fsa::Letter> t);

// Reduced words; 2n+1 states remembering the last letter.
fsa::Fsa reduced_language(std::size_t n, char prefix = 'a');

// {(w, reduce(w s)) : w reduced}.
fsa::RegularRelation right_mult_relation(std::size_t n, int s, char prefix = 'a');
// {(w, reduce(s w)) : w reduced}: a one-column delay that writes s first,
// united with the converse delay for words starting with s^-1.
fsa::RegularRelation left_mult_relation(std::size_t n, int s, char prefix = 'a');
// {(w, w) : w reduced}.
fsa::RegularRelation identity_relation(std::size_t n, char prefix = 'a');

}  // namespace cayley::fg
