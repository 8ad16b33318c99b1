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

#include "cayley/fsa/alphabet.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "cayley/error.hpp"

namespace cayley::fsa {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw InputError("alphabet must be non-empty");
  std::set<std::string_view> seen;
  for (const auto& s : symbols_) {
    if (s.empty() || s == kPadName) throw InputError("invalid alphabet symbol '" + s + "'");
    if (s.find_first_of(" \t\n,") != std::string::npos) {
      throw InputError("alphabet symbol contains a separator: '" + s + "'");
    }
    if (!seen.insert(s).second) throw InputError("duplicate alphabet symbol '" + s + "'");
  }
}

Alphabet Alphabet::binary() { return Alphabet({"0", "1"}); }

std::string_view Alphabet::name(Letter letter) const {
  if (letter == pad()) return kPadName;
  return symbols_.at(letter);
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  if (name == kPadName) return pad();
  auto it = std::find(symbols_.begin(), symbols_.end(), name);
  if (it == symbols_.end()) return std::nullopt;
  return static_cast<Letter>(it - symbols_.begin());
}

Letter Alphabet::letter(std::string_view name) const {
  auto l = find(name);
  if (!l) throw InputError("unknown symbol '" + std::string(name) + "'");
  return *l;
}

ConvAlphabet::ConvAlphabet(std::vector<Alphabet> tracks) : tracks_(std::move(tracks)) {
  if (tracks_.empty()) throw InputError("convolution alphabet needs at least one track");
  const std::size_t k = tracks_.size();
  stride_.assign(k, 1);
  suffix_.assign(k, 1);
  Symbol acc = 1;
  for (std::size_t i = k; i-- > 0;) {
    stride_[i] = acc;
    const Symbol r = tracks_[i].size() + 1;
    if (acc > std::numeric_limits<Symbol>::max() / r) {
      throw InputError("convolution alphabet too large");
    }
    acc *= r;
    suffix_[i] = acc;
  }
  total_ = acc;
}

std::vector<Letter> ConvAlphabet::column(Symbol column) const {
  std::vector<Letter> out(tracks_.size());
  for (std::size_t i = tracks_.size(); i-- > 0;) {
    const Symbol r = radix(i);
    out[i] = static_cast<Letter>(column % r);
    column /= r;
  }
  return out;
}

Symbol ConvAlphabet::encode(std::span<const Letter> letters) const {
  if (letters.size() != tracks_.size()) throw AlphabetMismatch("column width does not match track count");
  Symbol id = 0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (letters[i] > tracks_[i].pad()) throw AlphabetMismatch("letter out of range");
    id = id * radix(i) + letters[i];
  }
  return id;
}

ConvAlphabet ConvAlphabet::select(std::span<const std::size_t> which) const {
  std::vector<Alphabet> out;
  out.reserve(which.size());
  for (auto t : which) out.push_back(tracks_.at(t));
  return ConvAlphabet(std::move(out));
}

ConvAlphabet ConvAlphabet::concat(const ConvAlphabet& other) const {
  std::vector<Alphabet> out = tracks_;
  out.insert(out.end(), other.tracks_.begin(), other.tracks_.end());
  return ConvAlphabet(std::move(out));
}

TrackSelector::TrackSelector(const ConvAlphabet& source, std::vector<std::size_t> tracks)
    : target_(source.select(tracks)) {
  for (auto t : tracks) {
    Symbol stride = 1;
    for (std::size_t j = t + 1; j < source.tracks(); ++j) stride *= source.radix(j);
    source_stride_.push_back(stride);
    source_radix_.push_back(source.radix(t));
  }
}

Symbol TrackSelector::operator()(Symbol column) const {
  Symbol id = 0;
  for (std::size_t i = 0; i < source_stride_.size(); ++i) {
    id = id * source_radix_[i] + (column / source_stride_[i]) % source_radix_[i];
  }
  return id;
}

}  // namespace cayley::fsa
