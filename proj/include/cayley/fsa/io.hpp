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

#include <string>
#include <string_view>

#include "cayley/fsa/relation.hpp"

namespace cayley::fsa {

// Line-oriented text form:
//
//   cayley-fsa 1
//   sides <width_0> ... <width_{n-1}>
//   track <symbol> ...            (one line per track)
//   states <count>
//   initial <state> ...
//   accepting <state> ...
//   deterministic <0|1>
//   transitions <count>
//   <src>\t<letter>,<letter>,...\t<dst>   (padding written as "_")
//
// Transitions are listed by source state, then symbol id, then target, so
// parse followed by serialize reproduces the input byte for byte.
std::string serialize(const RegularRelation& r);
RegularRelation parse_relation(std::string_view text);

// A plain automaton serializes as a relation with a single side.
std::string serialize(const Fsa& a);
Fsa parse_fsa(std::string_view text);

// Graphviz rendering; edge labels use the same column syntax.
std::string to_dot(const RegularRelation& r, std::string_view name = "fsa");

}  // namespace cayley::fsa
