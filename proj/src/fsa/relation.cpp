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

#include "cayley/fsa/relation.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <unordered_map>
#include <unordered_set>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/fsa/hash.hpp"

namespace cayley::fsa {

RegularRelation::RegularRelation(std::vector<std::size_t> widths, Fsa recognizer)
    : widths_(std::move(widths)), fsa_(std::move(recognizer)) {
  if (widths_.empty()) throw AlphabetMismatch("relation needs at least one side");
  const std::size_t total = std::accumulate(widths_.begin(), widths_.end(), std::size_t{0});
  if (total != fsa_.alphabet().tracks()) throw AlphabetMismatch("side widths do not cover the alphabet's tracks");
  for (auto w : widths_) {
    if (w == 0) throw AlphabetMismatch("relation side without tracks");
  }
}

std::size_t RegularRelation::offset(std::size_t side) const {
  return std::accumulate(widths_.begin(), widths_.begin() + static_cast<std::ptrdiff_t>(side), std::size_t{0});
}

ConvAlphabet RegularRelation::side_alphabet(std::size_t side) const {
  std::vector<std::size_t> tracks(widths_[side]);
  std::iota(tracks.begin(), tracks.end(), offset(side));
  return alphabet().select(tracks);
}

bool RegularRelation::accepts(std::span<const TrackWord> tracks) const {
  return fsa::accepts(fsa_, convolve(alphabet(), tracks));
}

RegularRelation project(const RegularRelation& r, std::size_t side) {
  if (r.arity() < 2) throw Error("project: arity must be at least 2");
  std::vector<std::size_t> keep;
  for (std::size_t t = 0; t < r.alphabet().tracks(); ++t) {
    if (t < r.offset(side) || t >= r.offset(side) + r.width(side)) keep.push_back(t);
  }
  TrackSelector sel(r.alphabet(), keep);
  const Fsa& a = r.fsa();
  const Symbol pad = sel.target().all_pad();
  const std::size_t n = a.num_states();

  // ε-closures over edges whose remaining columns are all padding.
  std::vector<std::vector<State>> closure(n);
  for (State q = 0; q < n; ++q) {
    std::vector<State> stack{q};
    std::unordered_set<State> seen{q};
    while (!stack.empty()) {
      State p = stack.back();
      stack.pop_back();
      closure[q].push_back(p);
      for (const Edge& e : a.edges(p)) {
        if (sel(e.symbol) == pad && seen.insert(e.target).second) stack.push_back(e.target);
      }
    }
  }
  Fsa out(sel.target());
  for (State q = 0; q < n; ++q) {
    bool acc = std::any_of(closure[q].begin(), closure[q].end(), [&](State p) { return a.is_accepting(p); });
    out.add_state(acc);
  }
  for (State q : a.initial()) out.add_initial(q);
  for (State q = 0; q < n; ++q) {
    for (State p : closure[q]) {
      for (const Edge& e : a.edges(p)) {
        const Symbol s = sel(e.symbol);
        if (s != pad) out.add_edge(q, s, e.target);
      }
    }
  }
  out.finalize();
  std::vector<std::size_t> widths = r.widths();
  widths.erase(widths.begin() + static_cast<std::ptrdiff_t>(side));
  return RegularRelation(std::move(widths), trim(out));
}

RegularRelation converse(const RegularRelation& r, std::span<const std::size_t> perm) {
  if (perm.size() != r.arity()) throw Error("converse: permutation size mismatch");
  std::vector<bool> used(r.arity(), false);
  std::vector<std::size_t> order;
  std::vector<std::size_t> widths;
  for (auto s : perm) {
    if (s >= r.arity() || used[s]) throw Error("converse: not a permutation");
    used[s] = true;
    widths.push_back(r.width(s));
    for (std::size_t t = 0; t < r.width(s); ++t) order.push_back(r.offset(s) + t);
  }
  TrackSelector sel(r.alphabet(), order);
  const Fsa& a = r.fsa();
  Fsa out(sel.target());
  for (State q = 0; q < a.num_states(); ++q) out.add_state(a.is_accepting(q));
  for (State q : a.initial()) out.add_initial(q);
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out.add_edge(q, sel(e.symbol), e.target);
  }
  out.finalize();
  return RegularRelation(std::move(widths), std::move(out));
}

RegularRelation converse(const RegularRelation& r) {
  if (r.arity() != 2) throw Error("converse: relation is not binary");
  const std::size_t perm[] = {1, 0};
  return converse(r, perm);
}

namespace {

struct SectionShape {
  Symbol rest_block;  // column values on the non-first tracks, incl. all-pad
  Symbol in_pad;      // all-padding value on the first side
  Symbol rest_pad;
};

SectionShape section_shape(const RegularRelation& r, std::span<const Symbol> first) {
  if (r.arity() < 2) throw Error("restrict_first: arity must be at least 2");
  const Symbol rest_block = r.alphabet().block(r.width(0));
  const Symbol in_block = (r.alphabet().size() + 1) / rest_block;
  for (Symbol s : first) {
    if (s >= in_block - 1) throw AlphabetMismatch("restrict_first: symbol outside the first side's alphabet");
  }
  return {rest_block, in_block - 1, rest_block - 1};
}

}  // namespace

Fsa restrict_first(const RegularRelation& r, std::span<const Symbol> first) {
  const auto [rb, in_pad, rest_pad] = section_shape(r, first);
  const Fsa& a = r.fsa();
  const std::size_t n = a.num_states();
  const std::size_t len = first.size();
  std::vector<std::size_t> rest(r.alphabet().tracks() - r.width(0));
  std::iota(rest.begin(), rest.end(), r.width(0));
  Fsa out(r.alphabet().select(rest));

  // ok[k][q]: from q, the remaining first-side columns with the output
  // already ended lead to acceptance.
  std::vector<std::vector<bool>> ok(len + 1, std::vector<bool>(n, false));
  for (State q = 0; q < n; ++q) ok[len][q] = a.is_accepting(q);
  for (std::size_t k = len; k-- > 0;) {
    const Symbol s = first[k] * rb + rest_pad;
    for (State q = 0; q < n; ++q) {
      for (const Edge& e : a.edges_in(q, s, s + 1)) {
        if (ok[k + 1][e.target]) ok[k][q] = true;
      }
    }
  }

  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<std::size_t, State>> nodes;
  auto intern = [&](std::size_t k, State q) -> State {
    const std::uint64_t key = static_cast<std::uint64_t>(k) * n + q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    State id = out.add_state(ok[k][q]);
    ids.emplace(key, id);
    nodes.emplace_back(k, q);
    return id;
  };
  for (State q : a.initial()) out.add_initial(intern(0, q));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [k, q] = nodes[i];
    const Symbol in = k < len ? first[k] : in_pad;
    const std::size_t next = k < len ? k + 1 : len;
    for (const Edge& e : a.edges_in(q, in * rb, in * rb + rest_pad)) {
      out.add_edge(static_cast<State>(i), e.symbol % rb, intern(next, e.target));
    }
  }
  out.finalize();
  return trim(out);
}

ConvWord restrict_unique(const RegularRelation& r, std::span<const Symbol> first) {
  const Fsa& a = r.fsa();
  if (!a.deterministic()) return unique_member(restrict_first(r, first));
  const auto [rb, in_pad, rest_pad] = section_shape(r, first);
  const std::size_t len = first.size();

  // Forward layers of states reachable while reading `first`, stored flat:
  // layer k is states[begin[k], begin[k + 1]).
  std::vector<State> states(a.initial().begin(), a.initial().end());
  std::vector<std::size_t> begin{0, states.size()};
  begin.reserve(len + 2);
  for (std::size_t k = 0; k < len; ++k) {
    const std::size_t lo = begin[k], hi = begin[k + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      for (const Edge& e : a.edges_in(states[i], first[k] * rb, (first[k] + 1) * rb)) states.push_back(e.target);
    }
    std::sort(states.begin() + hi, states.end());
    states.erase(std::unique(states.begin() + hi, states.end()), states.end());
    begin.push_back(states.size());
  }
  auto layer = [&](std::size_t k) { return std::span<const State>(states).subspan(begin[k], begin[k + 1] - begin[k]); };

  // Past the end of `first`, the first side is padding. Count accepting
  // continuations (capped at 2) on that tail graph; a cycle that can still
  // reach acceptance means infinitely many outputs.
  const Symbol tail_lo = in_pad * rb;
  const Symbol tail_hi = in_pad * rb + rest_pad;
  std::unordered_map<State, int> tail;
  {
    std::vector<State> nodes;
    std::unordered_set<State> seen;
    for (State q : layer(len)) {
      if (seen.insert(q).second) nodes.push_back(q);
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const Edge& e : a.edges_in(nodes[i], tail_lo, tail_hi)) {
        if (seen.insert(e.target).second) nodes.push_back(e.target);
      }
    }
    std::unordered_map<State, std::vector<State>> rev;
    for (State q : nodes) {
      for (const Edge& e : a.edges_in(q, tail_lo, tail_hi)) rev[e.target].push_back(q);
    }
    std::unordered_set<State> live;
    std::vector<State> stack;
    for (State q : nodes) {
      if (a.is_accepting(q)) {
        live.insert(q);
        stack.push_back(q);
      }
    }
    while (!stack.empty()) {
      State q = stack.back();
      stack.pop_back();
      for (State p : rev[q]) {
        if (live.insert(p).second) stack.push_back(p);
      }
    }
    std::unordered_map<State, int> color;
    for (State root : nodes) {
      if (color[root] != 0) continue;
      std::vector<std::pair<State, std::size_t>> dfs{{root, 0}};
      color[root] = 1;
      while (!dfs.empty()) {
        State q = dfs.back().first;
        auto es = a.edges_in(q, tail_lo, tail_hi);
        std::size_t& i = dfs.back().second;
        if (i < es.size()) {
          State t = es[i++].target;
          if (!live.count(t)) continue;
          if (color[t] == 1) {
            tail[t] = 2;  // on a live cycle
            continue;
          }
          if (color[t] == 0) {
            color[t] = 1;
            dfs.emplace_back(t, 0);
          }
          continue;
        }
        int c = a.is_accepting(q) ? 1 : 0;
        if (tail.count(q) && tail[q] == 2) c = 2;
        for (const Edge& e : es) {
          if (live.count(e.target)) c = std::min(2, c + tail[e.target]);
        }
        tail[q] = live.count(q) ? c : 0;
        color[q] = 2;
        dfs.pop_back();
      }
    }
  }

  // Backward counts over the layers, capped at 2.
  std::vector<std::uint8_t> count(states.size());
  auto count_of = [&](std::size_t k, State q) -> std::uint8_t& {
    const auto l = layer(k);
    return count[begin[k] + static_cast<std::size_t>(std::lower_bound(l.begin(), l.end(), q) - l.begin())];
  };
  for (std::size_t i = begin[len]; i < begin[len + 1]; ++i) count[i] = static_cast<std::uint8_t>(tail[states[i]]);
  for (std::size_t k = len; k-- > 0;) {
    for (std::size_t i = begin[k]; i < begin[k + 1]; ++i) {
      int c = 0;
      for (const Edge& e : a.edges_in(states[i], first[k] * rb, (first[k] + 1) * rb)) {
        c = std::min(2, c + count_of(k + 1, e.target));
      }
      count[i] = static_cast<std::uint8_t>(c);
    }
  }
  if (layer(0).empty() || count[0] == 0) throw EmptyLanguage("section is empty");
  if (count[0] > 1) throw AmbiguousLanguage("section has more than one word");

  ConvWord out;
  bool ended = false;
  auto emit = [&](Symbol rest) {
    if (rest == rest_pad) {
      ended = true;
    } else {
      if (ended) throw ValidityError("restrict_unique: output track resumes after padding");
      out.push_back(rest);
    }
  };
  State q = states[0];
  for (std::size_t k = 0; k < len; ++k) {
    for (const Edge& e : a.edges_in(q, first[k] * rb, (first[k] + 1) * rb)) {
      if (count_of(k + 1, e.target) == 1) {
        emit(e.symbol % rb);
        q = e.target;
        break;
      }
    }
  }
  while (!a.is_accepting(q)) {
    for (const Edge& e : a.edges_in(q, tail_lo, tail_hi)) {
      if (tail[e.target] == 1) {
        emit(e.symbol % rb);
        q = e.target;
        break;
      }
    }
  }
  return out;
}

RegularRelation conjoin(const ConvAlphabet& global, std::vector<std::size_t> widths,
                        std::span<const Conjunct> conjuncts) {
  constexpr Letter kUnset = std::numeric_limits<Letter>::max();
  constexpr State kDone = std::numeric_limits<State>::max();
  const std::size_t m = conjuncts.size();
  std::vector<bool> covered(global.tracks(), false);
  for (const auto& c : conjuncts) {
    const ConvAlphabet& ca = c.relation->alphabet();
    if (c.track_map.size() != ca.tracks()) throw AlphabetMismatch("conjoin: track map size mismatch");
    for (std::size_t t = 0; t < ca.tracks(); ++t) {
      if (c.track_map[t] >= global.tracks() || !(global.track(c.track_map[t]) == ca.track(t))) {
        throw AlphabetMismatch("conjoin: track alphabet mismatch");
      }
      covered[c.track_map[t]] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw AlphabetMismatch("conjoin: a global track is not read by any conjunct");
  }

  Fsa out(global);
  std::unordered_map<std::vector<State>, State, VectorHash<State>> ids;
  std::vector<std::vector<State>> tuples;
  auto intern = [&](const std::vector<State>& t) -> State {
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    bool acc = true;
    for (std::size_t k = 0; k < m; ++k) {
      if (t[k] != kDone && !conjuncts[k].relation->fsa().is_accepting(t[k])) acc = false;
    }
    State id = out.add_state(acc);
    ids.emplace(t, id);
    tuples.push_back(t);
    return id;
  };

  {
    std::vector<State> start(m);
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == m) {
        out.add_initial(intern(start));
        return;
      }
      for (State q : conjuncts[k].relation->fsa().initial()) {
        start[k] = q;
        self(self, k + 1);
      }
    };
    rec(rec, 0);
  }

  std::vector<Letter> col(global.tracks(), kUnset);
  std::vector<State> next(m);
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const std::vector<State> cur = tuples[i];
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == m) {
        const Symbol s = global.encode(col);
        if (s != global.all_pad()) out.add_edge(static_cast<State>(i), s, intern(next));
        return;
      }
      const auto& c = conjuncts[k];
      const Fsa& a = c.relation->fsa();
      const ConvAlphabet& ca = a.alphabet();
      std::vector<std::size_t> assigned;
      auto try_assign = [&](std::size_t t, Letter l) {
        const std::size_t g = c.track_map[t];
        if (col[g] == kUnset) {
          col[g] = l;
          assigned.push_back(g);
          return true;
        }
        return col[g] == l;
      };
      auto undo = [&] {
        for (auto g : assigned) col[g] = kUnset;
        assigned.clear();
      };
      if (cur[k] != kDone) {
        for (const Edge& e : a.edges(cur[k])) {
          bool fits = true;
          for (std::size_t t = 0; t < ca.tracks() && fits; ++t) fits = try_assign(t, ca.letter(e.symbol, t));
          if (fits) {
            next[k] = e.target;
            self(self, k + 1);
          }
          undo();
        }
      }
      if (cur[k] == kDone || a.is_accepting(cur[k])) {
        bool fits = true;
        for (std::size_t t = 0; t < ca.tracks() && fits; ++t) fits = try_assign(t, ca.track(t).pad());
        if (fits) {
          next[k] = kDone;
          self(self, k + 1);
        }
        undo();
      }
    };
    rec(rec, 0);
  }
  out.finalize();
  return RegularRelation(std::move(widths), std::move(out));
}

RegularRelation compose(const RegularRelation& a, const RegularRelation& b) {
  if (a.arity() != 2 || b.arity() != 2) throw Error("compose: relations must be binary");
  if (!(a.side_alphabet(1) == b.side_alphabet(0))) throw AlphabetMismatch("compose: middle alphabets differ");
  const std::size_t wx = a.width(0), wy = a.width(1), wz = b.width(1);
  const ConvAlphabet global = a.alphabet().concat(b.side_alphabet(1));
  std::vector<std::size_t> ma(wx + wy), mb(wy + wz);
  std::iota(ma.begin(), ma.end(), 0);
  std::iota(mb.begin(), mb.end(), wx);
  const Conjunct parts[] = {{&a, ma}, {&b, mb}};
  RegularRelation joined = conjoin(global, {wx, wy, wz}, parts);
  RegularRelation p = project(joined, 1);
  return RegularRelation(p.widths(), determinize_minimize(p.fsa()));
}

RegularRelation diagonal(const Fsa& language) {
  const ConvAlphabet& a = language.alphabet();
  Fsa out(a.concat(a));
  const Symbol block = a.size() + 1;
  for (State q = 0; q < language.num_states(); ++q) out.add_state(language.is_accepting(q));
  for (State q : language.initial()) out.add_initial(q);
  for (State q = 0; q < language.num_states(); ++q) {
    for (const Edge& e : language.edges(q)) out.add_edge(q, e.symbol * block + e.symbol, e.target);
  }
  out.finalize();
  return RegularRelation({a.tracks(), a.tracks()}, std::move(out));
}

bool is_functional(const RegularRelation& r) {
  if (r.arity() != 2) throw Error("is_functional: relation must be binary");
  const Fsa& a = r.fsa();
  const std::size_t n = a.num_states();
  const State done = static_cast<State>(n);
  const Symbol rb = r.alphabet().block(r.width(0));
  const Symbol x_pad = (r.alphabet().size() + 1) / rb - 1;
  auto live = [&](State q) { return q == done || a.is_accepting(q); };
  auto key = [&](State p, State q, bool neq) {
    return (static_cast<std::uint64_t>(p) * (n + 1) + q) * 2 + (neq ? 1 : 0);
  };
  std::unordered_set<std::uint64_t> seen;
  struct Node {
    State p, q;
    bool neq;
  };
  std::vector<Node> work;
  auto visit = [&](State p, State q, bool neq) {
    if (neq && live(p) && live(q)) return false;
    if (seen.insert(key(p, q, neq)).second) work.push_back({p, q, neq});
    return true;
  };
  for (State p : a.initial()) {
    for (State q : a.initial()) visit(p, q, false);
  }
  while (!work.empty()) {
    Node cur = work.back();
    work.pop_back();
    if (cur.p != done && cur.q != done) {
      for (const Edge& e1 : a.edges(cur.p)) {
        const Symbol x = e1.symbol / rb;
        for (const Edge& e2 : a.edges_in(cur.q, x * rb, (x + 1) * rb)) {
          if (!visit(e1.target, e2.target, cur.neq || e1.symbol != e2.symbol)) return false;
        }
      }
    }
    if (live(cur.p) && cur.q != done) {
      for (const Edge& e2 : a.edges_in(cur.q, x_pad * rb, (x_pad + 1) * rb)) {
        if (!visit(done, e2.target, true)) return false;
      }
    }
    if (live(cur.q) && cur.p != done) {
      for (const Edge& e1 : a.edges_in(cur.p, x_pad * rb, (x_pad + 1) * rb)) {
        if (!visit(e1.target, done, true)) return false;
      }
    }
  }
  return true;
}

bool verify_validity(const RegularRelation& r) {
  const Fsa& a = r.fsa();
  const ConvAlphabet& al = r.alphabet();
  if (al.tracks() > 63) throw Error("verify_validity: too many tracks");
  // (state, ended-track mask); mask bit 63 marks a path that already broke
  // the convolution shape.
  constexpr std::uint64_t kBad = 1ull << 63;
  struct PairHash {
    std::size_t operator()(const std::pair<State, std::uint64_t>& p) const {
      return std::hash<std::uint64_t>{}(p.second * 0x9e3779b97f4a7c15ull + p.first);
    }
  };
  std::unordered_set<std::pair<State, std::uint64_t>, PairHash> seen;
  std::vector<std::pair<State, std::uint64_t>> work;
  auto visit = [&](State q, std::uint64_t mask) {
    if ((mask & kBad) && a.is_accepting(q)) return false;
    if (seen.emplace(q, mask).second) work.emplace_back(q, mask);
    return true;
  };
  for (State q : a.initial()) {
    if (!visit(q, 0)) return false;
  }
  while (!work.empty()) {
    auto [q, mask] = work.back();
    work.pop_back();
    for (const Edge& e : a.edges(q)) {
      std::uint64_t m = mask;
      if (!(m & kBad)) {
        for (std::size_t t = 0; t < al.tracks(); ++t) {
          const bool pad = al.is_pad(e.symbol, t);
          if (pad) {
            m |= 1ull << t;
          } else if (m & (1ull << t)) {
            m = kBad;
            break;
          }
        }
      }
      if (!visit(e.target, m)) return false;
    }
  }
  return true;
}

bool is_total_on(const RegularRelation& r, const Fsa& domain) {
  if (r.arity() != 2) throw Error("is_total_on: relation must be binary");
  return includes(domain, project(r, 1).fsa());
}

bool stays_within(const RegularRelation& r, const Fsa& domain) {
  if (r.arity() != 2) throw Error("stays_within: relation must be binary");
  return includes(project(r, 1).fsa(), domain) && includes(project(r, 0).fsa(), domain);
}

}  // namespace cayley::fsa
