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

#include "cayley/fsa/conv.hpp"

#include <algorithm>
#include <sstream>

#include "cayley/error.hpp"

namespace cayley::fsa {

ConvWord convolve(const ConvAlphabet& alphabet, std::span<const TrackWord> words) {
  if (words.size() != alphabet.tracks()) throw AlphabetMismatch("convolve: track count mismatch");
  std::size_t len = 0;
  for (const auto& w : words) len = std::max(len, w.size());
  ConvWord out(len);
  std::vector<Letter> col(words.size());
  for (std::size_t j = 0; j < len; ++j) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (j < words[i].size()) {
        if (words[i][j] >= alphabet.track(i).size()) throw AlphabetMismatch("convolve: letter out of range");
        col[i] = words[i][j];
      } else {
        col[i] = alphabet.track(i).pad();
      }
    }
    out[j] = alphabet.encode(col);
  }
  return out;
}

std::vector<TrackWord> deconvolve(const ConvAlphabet& alphabet, std::span<const Symbol> word) {
  const std::size_t k = alphabet.tracks();
  std::vector<TrackWord> out(k);
  std::vector<bool> ended(k, false);
  for (Symbol s : word) {
    if (s >= alphabet.size()) throw ValidityError("deconvolve: all-padding or out-of-range column");
    for (std::size_t i = 0; i < k; ++i) {
      const Letter l = alphabet.letter(s, i);
      if (l == alphabet.track(i).pad()) {
        ended[i] = true;
      } else if (ended[i]) {
        throw ValidityError("deconvolve: track " + std::to_string(i) + " resumes after padding");
      } else {
        out[i].push_back(l);
      }
    }
  }
  return out;
}

bool is_valid_conv_word(const ConvAlphabet& alphabet, std::span<const Symbol> word) {
  try {
    deconvolve(alphabet, word);
    return true;
  } catch (const ValidityError&) {
    return false;
  }
}

std::string format_column(const ConvAlphabet& alphabet, Symbol column) {
  std::string out;
  for (std::size_t i = 0; i < alphabet.tracks(); ++i) {
    if (i) out += ',';
    out += alphabet.track(i).name(alphabet.letter(column, i));
  }
  return out;
}

Symbol parse_column(const ConvAlphabet& alphabet, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    auto part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (letters.size() >= alphabet.tracks()) throw InputError("column has too many entries: " + std::string(text));
    letters.push_back(alphabet.track(letters.size()).letter(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (letters.size() != alphabet.tracks()) throw InputError("column has too few entries: " + std::string(text));
  const Symbol s = alphabet.encode(letters);
  if (s == alphabet.all_pad()) throw ValidityError("all-padding column");
  return s;
}

std::string format_word(const ConvAlphabet& alphabet, std::span<const Symbol> word) {
  std::string out;
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (j) out += ' ';
    out += format_column(alphabet, word[j]);
  }
  return out;
}

ConvWord parse_word(const ConvAlphabet& alphabet, std::string_view text) {
  ConvWord out;
  std::istringstream in{std::string(text)};
  std::string col;
  while (in >> col) out.push_back(parse_column(alphabet, col));
  return out;
}

std::string format_track_word(const Alphabet& alphabet, std::span<const Letter> word) {
  const bool compact = std::all_of(alphabet.symbols().begin(), alphabet.symbols().end(),
                                   [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t j = 0; j < word.size(); ++j) {
    if (j && !compact) out += ' ';
    out += alphabet.name(word[j]);
  }
  return out;
}

}  // namespace cayley::fsa
