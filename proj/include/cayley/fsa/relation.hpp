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
#include <vector>

#include "cayley/fsa/fsa.hpp"

namespace cayley::fsa {

// An n-ary synchronous relation, recognized by an automaton over the
// convolution of its components. Each component ("side") may itself span
// several tracks; side i owns the contiguous tracks
// [offset(i), offset(i) + width(i)). Convolving sides track by track is the
// same as nesting convolutions, because a side ends exactly when its longest
// track ends.
class RegularRelation {
 public:
  RegularRelation() = default;
  RegularRelation(std::vector<std::size_t> widths, Fsa recognizer);

  std::size_t arity() const { return widths_.size(); }
  std::size_t width(std::size_t side) const { return widths_[side]; }
  const std::vector<std::size_t>& widths() const { return widths_; }
  std::size_t offset(std::size_t side) const;
  const Fsa& fsa() const { return fsa_; }
  const ConvAlphabet& alphabet() const { return fsa_.alphabet(); }
  ConvAlphabet side_alphabet(std::size_t side) const;

  // Membership of a tuple given as one track word per track.
  bool accepts(std::span<const TrackWord> tracks) const;

  bool operator==(const RegularRelation&) const = default;

 private:
  std::vector<std::size_t> widths_;
  Fsa fsa_;
};

// Existential projection removing one side. All-padding columns that result
// are treated as ε-moves, which strips the trailing columns where only the
// removed side was still running.
RegularRelation project(const RegularRelation& r, std::size_t side);

// Side i of the result is side perm[i] of r.
RegularRelation converse(const RegularRelation& r, std::span<const std::size_t> perm);
// Swap of a binary relation.
RegularRelation converse(const RegularRelation& r);

// The section {w' : (w, w') ∈ r} for side 0 fixed to `first` (a word over
// side_alphabet(0)). The result ranges over the remaining tracks.
Fsa restrict_first(const RegularRelation& r, std::span<const Symbol> first);

// unique_member(restrict_first(r, first)) without building the section as a
// separate automaton. For a deterministic recognizer, accepting paths are in
// bijection with output words, so counting paths is exact; otherwise this
// falls back to the generic route.
ConvWord restrict_unique(const RegularRelation& r, std::span<const Symbol> first);

// One operand of conjoin(): a relation whose track t is read from global
// track track_map[t].
struct Conjunct {
  const RegularRelation* relation;
  std::vector<std::size_t> track_map;
};

// The relation over the global tracks whose tuples restrict, on every
// conjunct's tracks, to a member of that conjunct. Once a conjunct's tracks
// are all padded it must be accepting and is frozen. Every global track must
// be read by some conjunct. Deterministic conjuncts give a deterministic
// product.
RegularRelation conjoin(const ConvAlphabet& global, std::vector<std::size_t> widths,
                        std::span<const Conjunct> conjuncts);

// {(x, z) : ∃y (x, y) ∈ a, (y, z) ∈ b}.
RegularRelation compose(const RegularRelation& a, const RegularRelation& b);

// {(x, x) : x ∈ L(language)}.
RegularRelation diagonal(const Fsa& language);

// No x has two distinct images; decided as emptiness of
// {(x, y, z) : (x, y) ∈ r, (x, z) ∈ r, y ≠ z}.
bool is_functional(const RegularRelation& r);

// Every accepted word is a valid convolution (no track resumes after
// padding).
bool verify_validity(const RegularRelation& r);

// domain ⊆ project(r, 1) for a binary relation.
bool is_total_on(const RegularRelation& r, const Fsa& domain);

// project(r, 1) ⊆ domain and project(r, 0) ⊆ domain.
bool stays_within(const RegularRelation& r, const Fsa& domain);

}  // namespace cayley::fsa
