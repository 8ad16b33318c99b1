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
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley/fsa/alphabet.hpp"
#include "cayley/sd/structure.hpp"

namespace cayley::np {

using sd::Gen;
using sd::GroupSpec;

// Right: {(g, g s)}. Left: {(g, s g)}.
enum class Side { kRight, kLeft };

std::string relation_name(Side side, const Gen& s);  // "E_e1", "L_e1"

// Pairs of element encodings over concat(A, A), A = element_alphabet(spec)
// (or its restriction to `tracks`), labelled by membership in a relation.
struct ClassifiedSample {
  fsa::ConvAlphabet alphabet;
  std::set<fsa::ConvWord> positives;
  std::set<fsa::ConvWord> negatives;
  std::string relation;
  std::size_t radius = 0;
};

struct SampleOptions {
  std::size_t negatives_per_positive = 10;
  std::uint64_t seed = 1;
  // Element tracks to keep on both sides (0 = free track); all by default.
  // The relation must then be a factor on exactly these tracks.
  std::optional<std::vector<std::size_t>> tracks;
};

// Positives (encode(g), encode(g s)) or (encode(g), encode(s g)) for g in
// the ball. Negatives (encode(g), encode(h)) with h in the ball and h not
// the image: first the ball neighbours of the image, then pseudorandom picks,
// at most negatives_per_positive per g. A negative whose restricted
// encoding coincides with a positive is dropped.
ClassifiedSample generate_sample(const GroupSpec& spec, const Gen& s, Side side, std::size_t radius,
                                 const SampleOptions& options = {});
ClassifiedSample generate_left_sample(const GroupSpec& spec, const Gen& s, std::size_t radius,
                                      const SampleOptions& options = {});
// Adds everything in `smaller` to `larger`, so consecutive radii nest.
void absorb(ClassifiedSample& larger, const ClassifiedSample& smaller);

struct NerodeBound {
  std::size_t bound = 0;
  // Pairwise distinguished prefixes.
  std::vector<fsa::ConvWord> witnesses;
  std::size_t candidates = 0;
};

// p and q are distinguished when some e has p e positive and q e negative,
// or the reverse. Returns such an e, searching the sample sets directly.
std::optional<fsa::ConvWord> find_distinguisher(const ClassifiedSample& sample, const fsa::ConvWord& p,
                                                const fsa::ConvWord& q);

// Greedy pairwise-distinguished set. Candidates are the seeds still present
// as prefixes, then prefixes of sample words (a fixed pseudorandom subset when
// there are more than max_candidates), shortest first. Every DFA consistent
// with the sample, counting a dead state, has at least `bound` states.
// Throws InputError on an empty sample.
NerodeBound serial_nerode_lower_bound(const ClassifiedSample& sample, const std::vector<fsa::ConvWord>& seeds = {},
                                      std::size_t max_candidates = 2000);
NerodeBound para_nerode_lower_bound(const ClassifiedSample& sample, const std::vector<fsa::ConvWord>& seeds = {},
                                    std::size_t max_candidates = 2000);
NerodeBound nerode_lower_bound(const ClassifiedSample& sample, const std::vector<fsa::ConvWord>& seeds = {},
                               std::size_t max_candidates = 2000);

inline constexpr const char* kProbeFraming =
    "a plateau is evidence, never proof, of regularity; growth is evidence, never proof, of non-regularity";

struct ProbeRow {
  std::size_t radius = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::size_t bound = 0;
};

struct ProbeSeries {
  std::string relation;
  bool control = false;
  // Size of the minimal complete DFA, when a monolithic recognizer exists.
  std::optional<std::size_t> minimal_size;
  std::vector<ProbeRow> rows;
};

struct ProbeReport {
  std::string spec_name;
  std::vector<ProbeSeries> series;

  // Header lines start with '#'; the first states the framing.
  std::string tsv() const;
  nlohmann::json to_json() const;
};

struct ProbeOptions {
  SampleOptions sample;
  std::size_t max_candidates = 2000;
  bool controls = true;
  bool parallel = true;
};

// The target series is L_s. Controls are E_s and L_f1, with their exact
// minimal sizes when s has monolithic recognizers. Radii must ascend.
ProbeReport probe_report(const sd::CayleyStructure& s, const Gen& target, const std::vector<std::size_t>& radii,
                         const ProbeOptions& options = {});

}  // namespace cayley::np
