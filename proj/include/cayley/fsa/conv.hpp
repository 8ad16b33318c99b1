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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/fsa/alphabet.hpp"

namespace cayley::fsa {

// ⊗(w_1, ..., w_k): column j holds the j-th letter of each track, or padding
// once that track has ended. Length is the maximum track length.
ConvWord convolve(const ConvAlphabet& alphabet, std::span<const TrackWord> words);

// Inverse of convolve. Throws ValidityError when a track resumes after
// padding or a symbol is out of range.
std::vector<TrackWord> deconvolve(const ConvAlphabet& alphabet, std::span<const Symbol> word);

bool is_valid_conv_word(const ConvAlphabet& alphabet, std::span<const Symbol> word);

// Columns separated by single spaces, letters within a column by commas, the
// padding symbol as "_". The empty word prints as the empty string.
std::string format_word(const ConvAlphabet& alphabet, std::span<const Symbol> word);
ConvWord parse_word(const ConvAlphabet& alphabet, std::string_view text);

std::string format_column(const ConvAlphabet& alphabet, Symbol column);
Symbol parse_column(const ConvAlphabet& alphabet, std::string_view text);

// A single-track word. Letters are concatenated when every symbol name is a
// single character and separated by spaces otherwise.
std::string format_track_word(const Alphabet& alphabet, std::span<const Letter> word);

}  // namespace cayley::fsa
