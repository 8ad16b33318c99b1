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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cayley/sd/group.hpp"

namespace cayley::ud {

using fg::FreeWord;
using sd::GroupSpec;
using zd::IntMatrix;
using zd::ZVector;

// Words over {a, b}: a = 1, b = 2 in FreeWord terms. Printed as "abAB"
// (capital = inverse).
std::string format_ab(const FreeWord& w);
// Accepts "abAB", the free-group syntax "a1a2A1A2", "1" and "" for the empty
// word. Does not reduce. Throws InputError.
FreeWord parse_ab(std::string_view text);

// <a, b | relators>.
struct Presentation {
  std::vector<FreeWord> relators;

  // {"relators": ["abAB"]}; an optional "generators" field must be 2.
  static Presentation from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

Presentation load_presentation(const std::string& path);
// <a, b | a b a^-1 b^-1>.
Presentation z2_presentation();

// An element of F2 x F2.
using Pair = std::pair<FreeWord, FreeWord>;
Pair multiply(const Pair& x, const Pair& y);
Pair inverse(const Pair& x);
std::string format_pair(const Pair& x);

// (a,a), (b,b), then (1, r_k) in relator order.
std::vector<Pair> mikhailova_generators(const Presentation& p);

// A word over a generator list: +k is generator k (1-based), -k its inverse.
using GenWord = std::vector<int>;
Pair evaluate(const GenWord& w, const std::vector<Pair>& gens);
std::string format_gen_word(const GenWord& w);

// Meet in the middle: all products of at most ceil(depth/2) generators are
// indexed once, then a query x = z y is a lookup of x y^-1 for each indexed y
// with |y| <= floor(depth/2). Returns a shortest witness.
class MembershipIndex {
 public:
  MembershipIndex(std::vector<Pair> gens, std::size_t depth);

  std::size_t depth() const { return depth_; }
  std::size_t size() const { return words_.size(); }
  std::optional<GenWord> serial_find(const Pair& x) const;
  std::optional<GenWord> para_find(const Pair& x) const;

 private:
  std::vector<Pair> gens_;
  std::size_t depth_;
  std::map<Pair, std::size_t> index_;  // element -> position in words_
  std::vector<Pair> elements_;
  std::vector<GenWord> words_;  // breadth-first, so lengths are nondecreasing
  std::size_t half_end_ = 0;    // words_[0, half_end_) have length <= depth/2
};

// Semi-decision: a witness of length <= depth, or nothing. Never claims
// non-membership.
std::optional<GenWord> mikhailova_membership_semidecide(const Pair& x, const std::vector<Pair>& gens,
                                                        std::size_t depth);

// Images of a and b in GL2(Z).
struct EmbeddingSpec {
  IntMatrix a;
  IntMatrix b;
};

IntMatrix sanov_a();  // [[1,2],[0,1]]
IntMatrix sanov_b();  // [[1,0],[2,1]]
EmbeddingSpec sanov_embedding();

// Product of the generator matrices along w (any dimension).
IntMatrix matrix_of(const FreeWord& w, const std::vector<IntMatrix>& gens);
// All reduced words of length <= max_length map to distinct matrices. A
// necessary condition for freeness. Returns the first colliding pair found.
std::optional<std::pair<FreeWord, FreeWord>> find_collision(const std::vector<IntMatrix>& gens,
                                                            std::size_t max_length);
// Throws InputError if the matrices are not unimodular or collide on words
// of length <= max_length.
void check_freeness(const EmbeddingSpec& e, std::size_t max_length = 8);

// blockdiag(image of x.first, image of x.second) in GL4(Z).
IntMatrix embed_pair(const Pair& x, const EmbeddingSpec& e);

struct InjectivizedTau {
  std::vector<IntMatrix> base;       // g_i in GL_d
  std::vector<IntMatrix> auxiliary;  // g'_i in GL_2
  std::vector<IntMatrix> assembled;  // blockdiag(g_i, g'_i) in GL_{d+2}
};

// g'_i = S1^i S2 S1^-i for i = 1..n.
std::vector<IntMatrix> default_auxiliary(std::size_t n);
// Throws InputError on a length or dimension mismatch.
InjectivizedTau injectivize(const std::vector<IntMatrix>& base, std::size_t n,
                            std::optional<std::vector<IntMatrix>> auxiliary = std::nullopt);
// The diagonal blocks are recovered exactly and everything else is zero.
bool has_block_structure(const InjectivizedTau& t);
GroupSpec to_spec(const InjectivizedTau& t, std::string name = "");

// Reduced words b with |b| <= depth and u τ(b) = v, breadth-first with
// letters in the order f1, F1, f2, F2, ...; vectors already reached are not
// expanded again.
std::optional<FreeWord> orbit_semidecide(const ZVector& u, const ZVector& v, const GroupSpec& spec,
                                         std::size_t depth);

struct ConjugacyReport {
  std::optional<FreeWord> orbit_witness;
  std::optional<sd::GElement> conjugator;  // c^-1 (1,u) c = (1,v)
  bool orbit_verified = false;
  bool conjugator_verified = false;
  // A witness on one side implies one on the other, and every witness checks.
  bool consistent() const;
};

// Orbit search against a brute-force conjugator search over (b, a) with
// |b| <= depth and |a|_inf <= bound.
ConjugacyReport conjugacy_cross_check(const ZVector& u, const ZVector& v, const GroupSpec& spec, std::size_t depth,
                                      long long bound = 1);

struct OrbitInstance {
  ZVector u;
  ZVector v;
};

struct ReductionArtifacts;
// Maps a word-problem instance to an orbit instance. No default is shipped.
using InstanceMap = std::function<OrbitInstance(const ReductionArtifacts&)>;

struct ReductionArtifacts {
  Presentation presentation;
  FreeWord word;
  std::vector<Pair> generators;
  EmbeddingSpec embedding;
  std::vector<IntMatrix> embedded;  // GL4 image of each generator
  InjectivizedTau tau;
  GroupSpec spec;                   // Z^6 ⋊ F_n with n = number of generators
  Pair query;                       // (1, w)
  std::optional<GenWord> membership_witness;
  bool embedding_multiplicative = false;
  bool tau_injective = false;
  std::optional<OrbitInstance> instance;

  nlohmann::json to_json() const;
};

struct PipelineOptions {
  EmbeddingSpec embedding = sanov_embedding();
  std::size_t membership_depth = 12;  // 0 skips the search
  std::size_t multiplicativity_samples = 1000;
  std::size_t injectivity_length = 6;
  std::uint64_t seed = 1;
  InstanceMap instance_map;
};

ReductionArtifacts wp_instance_pipeline(const Presentation& p, const FreeWord& w, const PipelineOptions& options = {});

}  // namespace cayley::ud
