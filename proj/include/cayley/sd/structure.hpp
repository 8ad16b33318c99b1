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
#include <string>
#include <vector>

#include "cayley/fsa/factored.hpp"
#include "cayley/sd/group.hpp"

namespace cayley::sd {

// The automatic structure of G = Z^d ⋊ F_n over element_alphabet(spec).
//
// Every relation is a FactoredRelation: the free-group track is one factor
// and the integer tracks split into the coupled blocks of the matrix. The
// monolithic recognizers are optional; they are built when the product is
// small enough (d <= 2 by default) and serve as a cross-check.
struct CayleyStructure {
  GroupSpec spec;
  fsa::FactoredRelation domain;
  // Indexed by gen_id: E_s = {(g, g s)}.
  std::vector<fsa::FactoredRelation> right;
  // Indexed by the free generators' gen_id (f1, F1, ..., fn, Fn):
  // E^l_s = {(g, s g)}.
  std::vector<fsa::FactoredRelation> left;

  std::optional<fsa::Fsa> mono_domain;
  std::vector<fsa::RegularRelation> mono_right;
  std::vector<fsa::RegularRelation> mono_left;

  bool has_monolithic() const { return mono_domain.has_value(); }
};

std::string right_name(std::size_t gen_id, const GroupSpec& spec);  // "E_f1"
std::string left_name(std::size_t gen_id, const GroupSpec& spec);   // "L_f1"

enum class Materialize { kAuto, kAlways, kNever };

struct BuildOptions {
  // Run the exact checks and throw StructureError on the first failure.
  bool check = true;
  Materialize materialize = Materialize::kAuto;
};

CayleyStructure build_structure(const GroupSpec& spec, const BuildOptions& options = {});
// Fills the monolithic recognizers from the factored ones.
void materialize(CayleyStructure& s);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Validity, functionality, totality on the domain and image inside the
// domain, for every relation (and its monolithic twin when present).
std::vector<CheckResult> exact_checks(const CayleyStructure& s);
// compose(E_s, E_{s^-1}) is the identity on the domain, for every s.
std::vector<CheckResult> axiom_checks(const CayleyStructure& s);

// Applies the relations letter by letter from encode(identity). Each step is
// restrict_unique on every factor; a missing or second image means the
// structure is broken and throws EmptyLanguage or AmbiguousLanguage.
std::vector<fsa::TrackWord> word_problem_tracks(const CayleyStructure& s, const GroupWord& w);
fsa::ConvWord word_problem(const CayleyStructure& s, const GroupWord& w);
// The same stepping through the monolithic recognizers.
fsa::ConvWord word_problem_monolithic(const CayleyStructure& s, const GroupWord& w);
bool is_identity(const CayleyStructure& s, const GroupWord& w);
bool equal(const CayleyStructure& s, const GroupWord& a, const GroupWord& b);

// Batch word problem: serial reference and OpenMP version.
std::vector<fsa::ConvWord> serial_word_problems(const CayleyStructure& s, const std::vector<GroupWord>& words);
std::vector<fsa::ConvWord> para_word_problems(const CayleyStructure& s, const std::vector<GroupWord>& words);

// Compares every relation's image of every ball element with the algebraic
// product. Serial reference and OpenMP version; both return the failures.
std::vector<std::string> serial_ball_check(const CayleyStructure& s, const std::vector<GElement>& ball);
std::vector<std::string> para_ball_check(const CayleyStructure& s, const std::vector<GElement>& ball);

struct VerifyOptions {
  std::size_t random_words = 20000;
  // Upper bound on words enumerated exhaustively for the domain check.
  std::size_t exhaustive_budget = 200000;
  std::uint64_t seed = 1;
  bool parallel = true;
  bool axioms = true;
};

struct VerifyReport {
  std::size_t radius = 0;
  std::size_t ball_size = 0;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// (a) encode is injective on the ball and decode inverts it; (b) the domain
// accepts a word iff it decodes, over short words exhaustively, random
// words, and mutations of ball encodings, and accepts every ball encoding;
// (c) every relation agrees with the algebraic oracle on the ball; (d) the
// exact checks and the group axioms.
VerifyReport verify_structure(const CayleyStructure& s, std::size_t radius, const VerifyOptions& options = {});

// A directory with manifest.json and one .fsa file per factor.
void export_structure(const CayleyStructure& s, const std::string& dir);
CayleyStructure import_structure(const std::string& dir);
// One .dot file per factor, next to the .fsa files.
std::vector<std::string> export_dot(const CayleyStructure& s, const std::string& dir);

}  // namespace cayley::sd
