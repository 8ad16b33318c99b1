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

#include "cayley/fsa/fsa.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "cayley/error.hpp"
#include "cayley/fsa/hash.hpp"

namespace cayley::fsa {

State Fsa::add_state(bool accepting) {
  edges_.emplace_back();
  accepting_.push_back(accepting);
  return static_cast<State>(edges_.size() - 1);
}

void Fsa::add_initial(State s) { initial_.push_back(s); }

void Fsa::set_accepting(State s, bool accepting) { accepting_[s] = accepting; }

void Fsa::add_edge(State from, Symbol symbol, State to) {
  if (symbol >= alphabet_.size()) throw AlphabetMismatch("edge symbol outside alphabet");
  edges_[from].push_back({symbol, to});
}

void Fsa::remove_edge(State from, std::size_t index) {
  edges_[from].erase(edges_[from].begin() + static_cast<std::ptrdiff_t>(index));
  finalize();
}

void Fsa::finalize() {
  std::sort(initial_.begin(), initial_.end());
  initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
  deterministic_ = initial_.size() == 1;
  for (auto& out : edges_) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i].symbol == out[i - 1].symbol) deterministic_ = false;
    }
  }
}

std::size_t Fsa::num_edges() const {
  std::size_t n = 0;
  for (const auto& out : edges_) n += out.size();
  return n;
}

std::span<const Edge> Fsa::edges_in(State s, Symbol lo, Symbol hi) const {
  const auto& out = edges_[s];
  auto first = std::lower_bound(out.begin(), out.end(), lo,
                                [](const Edge& e, Symbol v) { return e.symbol < v; });
  auto last = std::lower_bound(first, out.end(), hi,
                               [](const Edge& e, Symbol v) { return e.symbol < v; });
  return {first, last};
}

long long Fsa::step(State s, Symbol symbol) const {
  auto r = edges_in(s, symbol, symbol + 1);
  return r.empty() ? -1 : static_cast<long long>(r.front().target);
}

bool accepts(const Fsa& a, std::span<const Symbol> word) {
  std::vector<State> cur = a.initial();
  std::vector<State> next;
  for (Symbol s : word) {
    next.clear();
    for (State q : cur) {
      for (const Edge& e : a.edges_in(q, s, s + 1)) next.push_back(e.target);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur.swap(next);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](State q) { return a.is_accepting(q); });
}

namespace {

std::vector<bool> reachable(const Fsa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q : a.initial()) {
    if (!seen[q]) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.edges(q)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return seen;
}

std::vector<bool> coreachable(const Fsa& a) {
  std::vector<std::vector<State>> rev(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) rev[e.target].push_back(q);
  }
  std::vector<bool> seen(a.num_states(), false);
  std::vector<State> stack;
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) {
      seen[q] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (State p : rev[q]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

Fsa empty_language(const ConvAlphabet& alphabet) {
  Fsa out(alphabet);
  out.add_initial(out.add_state(false));
  out.finalize();
  return out;
}

}  // namespace

Fsa trim(const Fsa& a) {
  auto fwd = reachable(a);
  auto bwd = coreachable(a);
  std::vector<long long> id(a.num_states(), -1);
  Fsa out(a.alphabet());
  for (State q = 0; q < a.num_states(); ++q) {
    if (fwd[q] && bwd[q]) id[q] = out.add_state(a.is_accepting(q));
  }
  for (State q : a.initial()) {
    if (id[q] >= 0) out.add_initial(static_cast<State>(id[q]));
  }
  for (State q = 0; q < a.num_states(); ++q) {
    if (id[q] < 0) continue;
    for (const Edge& e : a.edges(q)) {
      if (id[e.target] >= 0) out.add_edge(static_cast<State>(id[q]), e.symbol, static_cast<State>(id[e.target]));
    }
  }
  out.finalize();
  return out;
}

Fsa determinize(const Fsa& a) {
  Fsa out(a.alphabet());
  std::unordered_map<std::vector<State>, State, VectorHash<State>> ids;
  std::vector<std::vector<State>> subsets;
  auto intern = [&](std::vector<State> set) -> State {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    bool acc = std::any_of(set.begin(), set.end(), [&](State q) { return a.is_accepting(q); });
    State id = out.add_state(acc);
    ids.emplace(set, id);
    subsets.push_back(std::move(set));
    return id;
  };
  std::vector<State> start = a.initial();
  out.add_initial(intern(start));
  std::vector<Edge> gathered;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    gathered.clear();
    for (State q : subsets[i]) {
      auto es = a.edges(q);
      gathered.insert(gathered.end(), es.begin(), es.end());
    }
    std::sort(gathered.begin(), gathered.end());
    std::size_t j = 0;
    while (j < gathered.size()) {
      std::size_t k = j;
      std::vector<State> target;
      while (k < gathered.size() && gathered[k].symbol == gathered[j].symbol) {
        if (target.empty() || target.back() != gathered[k].target) target.push_back(gathered[k].target);
        ++k;
      }
      State t = intern(std::move(target));
      out.add_edge(static_cast<State>(i), gathered[j].symbol, t);
      j = k;
    }
  }
  out.finalize();
  return out;
}

Fsa minimize(const Fsa& dfa) {
  if (!dfa.deterministic()) throw Error("minimize: automaton is not deterministic");
  const Fsa t = trim(dfa);
  if (t.num_states() == 0 || t.initial().empty()) return empty_language(dfa.alphabet());
  const std::size_t n = t.num_states();

  // Moore refinement. The signature of a state is its current class followed
  // by (symbol, class of target) for each edge; missing edges lead to the
  // implicit sink, which no trim state is equivalent to.
  std::vector<std::uint64_t> cls(n);
  for (State q = 0; q < n; ++q) cls[q] = t.is_accepting(q) ? 1 : 0;
  std::size_t classes = 0;
  {
    bool a = false, r = false;
    for (State q = 0; q < n; ++q) (t.is_accepting(q) ? a : r) = true;
    classes = static_cast<std::size_t>(a) + static_cast<std::size_t>(r);
  }
  std::vector<std::uint64_t> sig;
  while (true) {
    std::unordered_map<std::vector<std::uint64_t>, std::uint64_t, VectorHash<std::uint64_t>> table;
    table.reserve(n * 2);
    std::vector<std::uint64_t> next(n);
    for (State q = 0; q < n; ++q) {
      sig.clear();
      sig.push_back(cls[q]);
      for (const Edge& e : t.edges(q)) {
        sig.push_back(e.symbol);
        sig.push_back(cls[e.target]);
      }
      auto [it, inserted] = table.try_emplace(sig, table.size());
      next[q] = it->second;
    }
    const std::size_t count = table.size();
    cls.swap(next);
    if (count == classes) break;
    classes = count;
  }

  // Breadth-first renumbering from the initial class.
  std::vector<State> rep(classes, 0);
  std::vector<bool> has_rep(classes, false);
  for (State q = 0; q < n; ++q) {
    if (!has_rep[cls[q]]) {
      has_rep[cls[q]] = true;
      rep[cls[q]] = q;
    }
  }
  std::vector<long long> order(classes, -1);
  std::vector<std::uint64_t> queue;
  const std::uint64_t c0 = cls[t.initial().front()];
  order[c0] = 0;
  queue.push_back(c0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Edge& e : t.edges(rep[queue[i]])) {
      const auto c = cls[e.target];
      if (order[c] < 0) {
        order[c] = static_cast<long long>(queue.size());
        queue.push_back(c);
      }
    }
  }
  Fsa out(dfa.alphabet());
  for (auto c : queue) out.add_state(t.is_accepting(rep[c]));
  out.add_initial(0);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const Edge& e : t.edges(rep[queue[i]])) {
      out.add_edge(static_cast<State>(i), e.symbol, static_cast<State>(order[cls[e.target]]));
    }
  }
  out.finalize();
  return out;
}

Fsa determinize_minimize(const Fsa& a) {
  if (a.deterministic()) return minimize(a);
  return minimize(determinize(trim(a)));
}

std::size_t minimal_complete_size(const Fsa& a) {
  const Fsa m = determinize_minimize(a);
  if (is_empty(m)) return 1;
  for (State q = 0; q < m.num_states(); ++q) {
    if (m.edges(q).size() < m.alphabet().size()) return m.num_states() + 1;
  }
  return m.num_states();
}

Fsa complete(const Fsa& a) {
  const Symbol sigma = a.alphabet().size();
  if (sigma > (1u << 20) || sigma * (a.num_states() + 1) > 50'000'000) {
    throw Error("complete: alphabet too large to enumerate");
  }
  Fsa out(a.alphabet());
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.is_accepting(q));
  const State sink = out.add_state(false);
  for (State q : a.initial()) out.add_initial(q);
  if (a.initial().empty()) out.add_initial(sink);
  for (State q = 0; q <= a.num_states(); ++q) {
    std::vector<bool> present(sigma, false);
    if (q < a.num_states()) {
      for (const Edge& e : a.edges(q)) {
        out.add_edge(q, e.symbol, e.target);
        present[e.symbol] = true;
      }
    }
    for (Symbol s = 0; s < sigma; ++s) {
      if (!present[s]) out.add_edge(q, s, sink);
    }
  }
  out.finalize();
  return out;
}

Fsa complement(const Fsa& a) {
  Fsa c = complete(determinize_minimize(a));
  Fsa out(c.alphabet());
  for (State q = 0; q < c.num_states(); ++q) out.add_state(!c.is_accepting(q));
  for (State q : c.initial()) out.add_initial(q);
  for (State q = 0; q < c.num_states(); ++q) {
    for (const Edge& e : c.edges(q)) out.add_edge(q, e.symbol, e.target);
  }
  out.finalize();
  return out;
}

Fsa intersect(const Fsa& a, const Fsa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("intersect: alphabets differ");
  Fsa out(a.alphabet());
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs;
  auto intern = [&](State p, State q) -> State {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    State id = out.add_state(a.is_accepting(p) && b.is_accepting(q));
    ids.emplace(key, id);
    pairs.emplace_back(p, q);
    return id;
  };
  for (State p : a.initial()) {
    for (State q : b.initial()) out.add_initial(intern(p, q));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    auto ea = a.edges(p);
    auto eb = b.edges(q);
    std::size_t x = 0, y = 0;
    while (x < ea.size() && y < eb.size()) {
      if (ea[x].symbol < eb[y].symbol) {
        ++x;
      } else if (eb[y].symbol < ea[x].symbol) {
        ++y;
      } else {
        const Symbol s = ea[x].symbol;
        std::size_t x2 = x, y2 = y;
        while (x2 < ea.size() && ea[x2].symbol == s) ++x2;
        while (y2 < eb.size() && eb[y2].symbol == s) ++y2;
        for (std::size_t u = x; u < x2; ++u) {
          for (std::size_t v = y; v < y2; ++v) {
            out.add_edge(static_cast<State>(i), s, intern(ea[u].target, eb[v].target));
          }
        }
        x = x2;
        y = y2;
      }
    }
  }
  out.finalize();
  return out;
}

Fsa unite(const Fsa& a, const Fsa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("unite: alphabets differ");
  Fsa out(a.alphabet());
  const State off = static_cast<State>(a.num_states());
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.is_accepting(q));
  for (State q = 0; q < b.num_states(); ++q) out.add_state(b.is_accepting(q));
  for (State q : a.initial()) out.add_initial(q);
  for (State q : b.initial()) out.add_initial(q + off);
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out.add_edge(q, e.symbol, e.target);
  }
  for (State q = 0; q < b.num_states(); ++q) {
    for (const Edge& e : b.edges(q)) out.add_edge(q + off, e.symbol, e.target + off);
  }
  out.finalize();
  return out;
}

bool is_empty(const Fsa& a) {
  auto seen = reachable(a);
  for (State q = 0; q < a.num_states(); ++q) {
    if (seen[q] && a.is_accepting(q)) return false;
  }
  return true;
}

bool includes(const Fsa& a, const Fsa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("includes: alphabets differ");
  using Set = std::vector<State>;
  struct PairHash {
    std::size_t operator()(const std::pair<Set, Set>& p) const {
      return VectorHash<State>{}(p.first) * 31 + VectorHash<State>{}(p.second);
    }
  };
  auto any_acc = [](const Fsa& f, const Set& s) {
    return std::any_of(s.begin(), s.end(), [&](State q) { return f.is_accepting(q); });
  };
  std::unordered_map<std::pair<Set, Set>, bool, PairHash> seen;
  std::deque<std::pair<Set, Set>> work;
  auto visit = [&](Set sa, Set sb) -> bool {
    if (any_acc(a, sa) && !any_acc(b, sb)) return false;
    auto key = std::make_pair(std::move(sa), std::move(sb));
    if (seen.emplace(key, true).second) work.push_back(std::move(key));
    return true;
  };
  if (!visit(a.initial(), b.initial())) return false;
  std::vector<Edge> gathered;
  while (!work.empty()) {
    auto [sa, sb] = std::move(work.front());
    work.pop_front();
    gathered.clear();
    for (State q : sa) {
      auto es = a.edges(q);
      gathered.insert(gathered.end(), es.begin(), es.end());
    }
    std::sort(gathered.begin(), gathered.end());
    std::size_t j = 0;
    while (j < gathered.size()) {
      const Symbol s = gathered[j].symbol;
      Set ta;
      while (j < gathered.size() && gathered[j].symbol == s) {
        if (ta.empty() || ta.back() != gathered[j].target) ta.push_back(gathered[j].target);
        ++j;
      }
      Set tb;
      for (State q : sb) {
        for (const Edge& e : b.edges_in(q, s, s + 1)) tb.push_back(e.target);
      }
      std::sort(tb.begin(), tb.end());
      tb.erase(std::unique(tb.begin(), tb.end()), tb.end());
      if (!visit(std::move(ta), std::move(tb))) return false;
    }
  }
  return true;
}

bool equivalent(const Fsa& a, const Fsa& b) { return includes(a, b) && includes(b, a); }

ConvWord unique_member(const Fsa& a) {
  const Fsa m = determinize_minimize(a);
  if (is_empty(m)) throw EmptyLanguage("language is empty");
  // m is trim, so any cycle yields infinitely many words.
  const std::size_t n = m.num_states();
  std::vector<int> color(n, 0);
  std::vector<int> count(n, 0);
  std::vector<std::pair<State, std::size_t>> stack{{m.initial().front(), 0}};
  color[m.initial().front()] = 1;
  while (!stack.empty()) {
    auto& [q, i] = stack.back();
    auto es = m.edges(q);
    if (i < es.size()) {
      State t = es[i++].target;
      if (color[t] == 1) throw AmbiguousLanguage("language is infinite");
      if (color[t] == 0) {
        color[t] = 1;
        stack.emplace_back(t, 0);
      }
      continue;
    }
    int c = m.is_accepting(q) ? 1 : 0;
    for (const Edge& e : es) c = std::min(2, c + count[e.target]);
    count[q] = c;
    color[q] = 2;
    stack.pop_back();
  }
  State q = m.initial().front();
  if (count[q] != 1) throw AmbiguousLanguage("language has more than one word");
  ConvWord out;
  while (!m.is_accepting(q)) {
    for (const Edge& e : m.edges(q)) {
      if (count[e.target] == 1) {
        out.push_back(e.symbol);
        q = e.target;
        break;
      }
    }
  }
  return out;
}

std::vector<ConvWord> all_words(const ConvAlphabet& alphabet, std::size_t max_len) {
  std::vector<ConvWord> out{ConvWord{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Symbol s = 0; s < alphabet.size(); ++s) {
        ConvWord w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace cayley::fsa
