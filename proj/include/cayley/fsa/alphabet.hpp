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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cayley::fsa {

using Letter = std::uint32_t;
using Symbol = std::uint64_t;
using State = std::uint32_t;

// A word on a single track, as letter indices into that track's Alphabet.
using TrackWord = std::vector<Letter>;
// A word over a ConvAlphabet: one symbol id per column.
using ConvWord = std::vector<Symbol>;

// Printed name of the padding symbol.
inline constexpr std::string_view kPadName = "_";

// A finite ordered set of symbol names. Letter i names symbols()[i]; the
// padding symbol is the extra letter size().
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  static Alphabet binary();

  std::size_t size() const { return symbols_.size(); }
  Letter pad() const { return static_cast<Letter>(symbols_.size()); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  // Name of a letter; the padding letter prints as "_".
  std::string_view name(Letter letter) const;
  std::optional<Letter> find(std::string_view name) const;
  // Throws InputError for unknown names.
  Letter letter(std::string_view name) const;

  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<std::string> symbols_;
};

// The product alphabet (Σ_1⋄ × ... × Σ_k⋄) minus the all-padding column.
//
// Symbol ids are mixed-radix with track 0 most significant, so the symbols
// sharing a value on a leading group of tracks form one contiguous id range.
// The all-padding column would be id size(); it is not a symbol.
class ConvAlphabet {
 public:
  ConvAlphabet() = default;
  explicit ConvAlphabet(std::vector<Alphabet> tracks);

  std::size_t tracks() const { return tracks_.size(); }
  const Alphabet& track(std::size_t i) const { return tracks_[i]; }
  const std::vector<Alphabet>& track_alphabets() const { return tracks_; }

  Symbol size() const { return total_ - 1; }
  Symbol all_pad() const { return total_ - 1; }
  Symbol radix(std::size_t i) const { return tracks_[i].size() + 1; }
  // Number of distinct column values (including all-padding) on tracks
  // [first, tracks()).
  Symbol block(std::size_t first) const { return first < tracks_.size() ? suffix_[first] : 1; }

  Letter letter(Symbol column, std::size_t track) const {
    return static_cast<Letter>((column / stride_[track]) % radix(track));
  }
  std::vector<Letter> column(Symbol column) const;
  // Id of a column given per-track letters. The all-padding column maps to
  // all_pad(); callers must check.
  Symbol encode(std::span<const Letter> letters) const;
  bool is_pad(Symbol column, std::size_t track) const {
    return letter(column, track) == tracks_[track].pad();
  }

  // Alphabet over a subset of tracks, in the given order.
  ConvAlphabet select(std::span<const std::size_t> which) const;
  ConvAlphabet concat(const ConvAlphabet& other) const;

  bool operator==(const ConvAlphabet& o) const { return tracks_ == o.tracks_; }

 private:
  std::vector<Alphabet> tracks_;
  std::vector<Symbol> stride_;
  std::vector<Symbol> suffix_;
  Symbol total_ = 1;
};

// Maps columns of one ConvAlphabet to columns of a sub-selection of its
// tracks. The result may be the all-padding value of the target alphabet.
class TrackSelector {
 public:
  TrackSelector(const ConvAlphabet& source, std::vector<std::size_t> tracks);
  const ConvAlphabet& target() const { return target_; }
  Symbol operator()(Symbol column) const;

 private:
  std::vector<Symbol> source_stride_;
  std::vector<Symbol> source_radix_;
  ConvAlphabet target_;
};

}  // namespace cayley::fsa
