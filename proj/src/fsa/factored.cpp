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

#include "cayley/fsa/factored.hpp"

#include <algorithm>
#include <numeric>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"

namespace cayley::fsa {

FactoredRelation::FactoredRelation(std::vector<ConvAlphabet> sides, std::vector<Factor> factors)
    : sides_(std::move(sides)), factors_(std::move(factors)) {
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    std::vector<int> seen(sides_[i].tracks(), 0);
    for (const auto& f : factors_) {
      if (f.tracks.size() != sides_.size() || f.relation.arity() != sides_.size()) {
        throw AlphabetMismatch("factor arity does not match");
      }
      if (f.tracks[i].size() != f.relation.width(i)) throw AlphabetMismatch("factor track list has wrong width");
      for (std::size_t t = 0; t < f.tracks[i].size(); ++t) {
        const auto g = f.tracks[i][t];
        if (g >= seen.size()) throw AlphabetMismatch("factor track out of range");
        if (!(sides_[i].track(g) == f.relation.alphabet().track(f.relation.offset(i) + t))) {
          throw AlphabetMismatch("factor track alphabet mismatch");
        }
        ++seen[g];
      }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
      throw AlphabetMismatch("factors do not partition the tracks of a side");
    }
  }
}

bool FactoredRelation::accepts(std::span<const std::vector<TrackWord>> sides) const {
  if (sides.size() != arity()) throw AlphabetMismatch("tuple arity mismatch");
  for (const auto& f : factors_) {
    std::vector<TrackWord> tracks;
    for (std::size_t i = 0; i < arity(); ++i) {
      for (auto t : f.tracks[i]) tracks.push_back(sides[i].at(t));
    }
    if (!f.relation.accepts(tracks)) return false;
  }
  return true;
}

std::vector<TrackWord> FactoredRelation::image(std::span<const TrackWord> input) const {
  if (arity() != 2) throw Error("image: relation must be binary");
  if (input.size() != sides_[0].tracks()) throw AlphabetMismatch("image: input width mismatch");
  std::vector<TrackWord> out(sides_[1].tracks());
  for (const auto& f : factors_) {
    std::vector<TrackWord> in;
    in.reserve(f.tracks[0].size());
    for (auto t : f.tracks[0]) in.push_back(input[t]);
    const ConvWord w = convolve(f.relation.side_alphabet(0), in);
    const ConvWord img = restrict_unique(f.relation, w);
    auto tracks = deconvolve(f.relation.side_alphabet(1), img);
    for (std::size_t t = 0; t < tracks.size(); ++t) out[f.tracks[1][t]] = std::move(tracks[t]);
  }
  return out;
}

RegularRelation FactoredRelation::materialize() const {
  ConvAlphabet global = sides_[0];
  std::vector<std::size_t> widths{sides_[0].tracks()};
  std::vector<std::size_t> offset{0};
  for (std::size_t i = 1; i < arity(); ++i) {
    offset.push_back(global.tracks());
    global = global.concat(sides_[i]);
    widths.push_back(sides_[i].tracks());
  }
  std::vector<Conjunct> parts;
  for (const auto& f : factors_) {
    Conjunct c{&f.relation, {}};
    for (std::size_t i = 0; i < arity(); ++i) {
      for (auto t : f.tracks[i]) c.track_map.push_back(offset[i] + t);
    }
    parts.push_back(std::move(c));
  }
  RegularRelation joined = conjoin(global, widths, parts);
  return RegularRelation(widths, determinize_minimize(joined.fsa()));
}

FactoredRelation FactoredRelation::converse() const {
  if (arity() != 2) throw Error("converse: relation must be binary");
  std::vector<Factor> out;
  for (const auto& f : factors_) out.push_back({fsa::converse(f.relation), {f.tracks[1], f.tracks[0]}});
  return FactoredRelation({sides_[1], sides_[0]}, std::move(out));
}

std::size_t FactoredRelation::total_states() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.relation.fsa().num_states();
  return n;
}

Fsa language_on(const FactoredRelation& unary, std::span<const std::size_t> tracks) {
  if (unary.arity() != 1) throw Error("language_on: expected a unary relation");
  std::vector<Conjunct> parts;
  std::size_t covered = 0;
  for (const auto& f : unary.factors()) {
    const auto& ft = f.tracks[0];
    const auto inside = std::count_if(ft.begin(), ft.end(), [&](std::size_t t) {
      return std::find(tracks.begin(), tracks.end(), t) != tracks.end();
    });
    if (inside == 0) continue;
    if (static_cast<std::size_t>(inside) != ft.size()) {
      throw Error("language_on: domain factorization does not refine the track set");
    }
    Conjunct c{&f.relation, {}};
    for (auto t : ft) {
      c.track_map.push_back(static_cast<std::size_t>(std::find(tracks.begin(), tracks.end(), t) - tracks.begin()));
    }
    covered += ft.size();
    parts.push_back(std::move(c));
  }
  if (covered != tracks.size()) throw Error("language_on: track set not covered");
  ConvAlphabet global = unary.side(0).select(tracks);
  return determinize_minimize(conjoin(global, {tracks.size()}, parts).fsa());
}

bool is_functional(const FactoredRelation& r) {
  return std::all_of(r.factors().begin(), r.factors().end(),
                     [](const Factor& f) { return is_functional(f.relation); });
}

bool verify_validity(const FactoredRelation& r) {
  return std::all_of(r.factors().begin(), r.factors().end(),
                     [](const Factor& f) { return verify_validity(f.relation); });
}

bool is_total_on(const FactoredRelation& r, const FactoredRelation& domain) {
  for (const auto& f : r.factors()) {
    if (!is_total_on(f.relation, language_on(domain, f.tracks[0]))) return false;
  }
  return true;
}

bool stays_within(const FactoredRelation& r, const FactoredRelation& domain) {
  for (const auto& f : r.factors()) {
    const Fsa in = language_on(domain, f.tracks[0]);
    const Fsa out = language_on(domain, f.tracks[1]);
    if (!includes(project(f.relation, 1).fsa(), in)) return false;
    if (!includes(project(f.relation, 0).fsa(), out)) return false;
  }
  return true;
}

FactoredRelation compose(const FactoredRelation& a, const FactoredRelation& b) {
  if (a.arity() != 2 || b.arity() != 2) throw Error("compose: relations must be binary");
  std::vector<Factor> out;
  for (const auto& fa : a.factors()) {
    auto it = std::find_if(b.factors().begin(), b.factors().end(),
                           [&](const Factor& fb) { return fb.tracks[0] == fa.tracks[1]; });
    if (it == b.factors().end()) throw Error("compose: factorizations are not aligned");
    out.push_back({compose(fa.relation, it->relation), {fa.tracks[0], it->tracks[1]}});
  }
  return FactoredRelation({a.side(0), b.side(1)}, std::move(out));
}

bool is_identity_on(const FactoredRelation& r, const FactoredRelation& domain) {
  for (const auto& f : r.factors()) {
    if (f.tracks[0] != f.tracks[1]) return false;
    const RegularRelation id = diagonal(language_on(domain, f.tracks[0]));
    if (!equivalent(f.relation.fsa(), id.fsa())) return false;
  }
  return true;
}

}  // namespace cayley::fsa
