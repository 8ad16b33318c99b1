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

#include "cayley/fsa/alphabet.hpp"

namespace cayley::fsa {

struct Edge {
  Symbol symbol;
  State target;
  auto operator<=>(const Edge&) const = default;
};

// Finite automaton over a ConvAlphabet, read left to right. A one-track
// alphabet is an ordinary alphabet.
//
// Transitions are stored sparsely and sorted by symbol; a missing transition
// goes to an implicit rejecting sink. Build with add_state/add_edge, then call
// finalize(); after that the automaton is treated as an immutable value.
class Fsa {
 public:
  Fsa() = default;
  explicit Fsa(ConvAlphabet alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state(bool accepting = false);
  void add_initial(State s);
  void set_accepting(State s, bool accepting);
  void add_edge(State from, Symbol symbol, State to);
  // Sorts and deduplicates edges and initial states and recomputes the
  // deterministic flag.
  void finalize();
  void remove_edge(State from, std::size_t index);

  const ConvAlphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return edges_.size(); }
  std::size_t num_edges() const;
  std::span<const Edge> edges(State s) const { return edges_[s]; }
  // Edges of s with symbol in [lo, hi).
  std::span<const Edge> edges_in(State s, Symbol lo, Symbol hi) const;
  const std::vector<State>& initial() const { return initial_; }
  bool is_accepting(State s) const { return accepting_[s]; }
  // Exactly one initial state and at most one edge per (state, symbol).
  bool deterministic() const { return deterministic_; }
  // Successor under a symbol in a deterministic automaton, or -1.
  long long step(State s, Symbol symbol) const;

  bool operator==(const Fsa&) const = default;

 private:
  ConvAlphabet alphabet_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<State> initial_;
  std::vector<bool> accepting_;
  bool deterministic_ = false;
};

bool accepts(const Fsa& a, std::span<const Symbol> word);

// Removes states that are unreachable or cannot reach an accepting state.
Fsa trim(const Fsa& a);
// Subset construction restricted to reachable subsets.
Fsa determinize(const Fsa& a);
// Minimizes a deterministic automaton. The result is trim and numbered in
// breadth-first order from the initial state, visiting edges by symbol, so
// equal languages give identical automata. The empty language is one
// non-accepting state without edges.
Fsa minimize(const Fsa& dfa);
Fsa determinize_minimize(const Fsa& a);

// Number of states of the minimal complete DFA: the trim minimal automaton
// plus the sink whenever some state lacks some symbol.
std::size_t minimal_complete_size(const Fsa& a);

// Adds an explicit sink so every state has every symbol. Throws Error when
// the alphabet is too large to enumerate.
Fsa complete(const Fsa& a);
Fsa complement(const Fsa& a);
Fsa intersect(const Fsa& a, const Fsa& b);
Fsa unite(const Fsa& a, const Fsa& b);

bool is_empty(const Fsa& a);
// L(a) ⊆ L(b), decided on the fly as emptiness of L(a) ∩ ¬L(b).
bool includes(const Fsa& a, const Fsa& b);
bool equivalent(const Fsa& a, const Fsa& b);

// The single accepted word. Throws EmptyLanguage or AmbiguousLanguage.
ConvWord unique_member(const Fsa& a);

// Every word of length <= max_len over the alphabet, in length-lex order.
// Intended for exhaustive oracles over small alphabets.
std::vector<ConvWord> all_words(const ConvAlphabet& alphabet, std::size_t max_len);

}  // namespace cayley::fsa
