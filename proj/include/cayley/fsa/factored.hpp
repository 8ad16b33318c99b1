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

#include "cayley/fsa/relation.hpp"

namespace cayley::fsa {

// One factor of a FactoredRelation: a relation that reads, on each side, the
// listed side-local tracks of the product.
struct Factor {
  RegularRelation relation;
  std::vector<std::vector<std::size_t>> tracks;
};

// A relation given as a conjunction of factors on disjoint groups of tracks:
// a tuple belongs to it iff every factor accepts the tuple's restriction to
// its tracks. On each side the factors' track lists partition the side.
//
// This is the coupling of automata on separate track groups. Each factor
// stops once its own tracks are all padded, so the product never needs to be
// built. materialize() builds it when it is small enough to be useful.
class FactoredRelation {
 public:
  FactoredRelation() = default;
  FactoredRelation(std::vector<ConvAlphabet> sides, std::vector<Factor> factors);

  std::size_t arity() const { return sides_.size(); }
  const ConvAlphabet& side(std::size_t i) const { return sides_[i]; }
  const std::vector<ConvAlphabet>& sides() const { return sides_; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::vector<Factor>& mutable_factors() { return factors_; }

  // sides[i][t] is track t of side i.
  bool accepts(std::span<const std::vector<TrackWord>> sides) const;
  // For a binary relation: the unique image of the side-0 tuple, computed
  // factor by factor with restrict_unique.
  std::vector<TrackWord> image(std::span<const TrackWord> input) const;

  // The monolithic recognizer, via conjoin.
  RegularRelation materialize() const;

  // Sides swapped (binary).
  FactoredRelation converse() const;

  std::size_t total_states() const;

 private:
  std::vector<ConvAlphabet> sides_;
  std::vector<Factor> factors_;
};

// The language of `unary` restricted to the given tracks, built from the
// factors whose tracks lie inside that set. Throws if the factorization of
// `unary` does not refine the track set.
Fsa language_on(const FactoredRelation& unary, std::span<const std::size_t> tracks);

// Exact checks, factor by factor. For a conjunction over disjoint track
// groups: it is functional iff each factor is; it is total on a product
// domain iff each factor is total on the domain's restriction; its language
// consists of valid convolutions iff each factor's does.
bool is_functional(const FactoredRelation& r);
bool verify_validity(const FactoredRelation& r);
bool is_total_on(const FactoredRelation& r, const FactoredRelation& domain);
bool stays_within(const FactoredRelation& r, const FactoredRelation& domain);

// Factor-wise composition; b's factors must read, on side 0, exactly the
// tracks a's factors write on side 1.
FactoredRelation compose(const FactoredRelation& a, const FactoredRelation& b);

// Each factor maps its tracks to the same tracks and equals the diagonal of
// the domain there.
bool is_identity_on(const FactoredRelation& r, const FactoredRelation& domain);

}  // namespace cayley::fsa
