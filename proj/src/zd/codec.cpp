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

#include "cayley/zd/codec.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_map>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/fsa/hash.hpp"

namespace cayley::zd {

using fsa::ConvAlphabet;
using fsa::Fsa;
using fsa::Letter;
using fsa::State;
using fsa::Symbol;

namespace {

constexpr Letter kPad = 2;

// Per-track phase: 0 before the first column, 1 + 2*last + ok while the track
// is running (ok: the digits so far form a canonical word), 5 + sign once it
// has ended.
constexpr std::int64_t kFresh = 0;
std::int64_t act(int last, bool ok) { return 1 + 2 * last + (ok ? 1 : 0); }
std::int64_t ended(int sign) { return 5 + sign; }
bool is_act(std::int64_t p) { return p >= 1 && p <= 4; }
bool is_ended(std::int64_t p) { return p >= 5; }
int last_digit(std::int64_t p) { return is_act(p) ? static_cast<int>((p - 1) / 2) : static_cast<int>(p - 5); }
bool act_ok(std::int64_t p) { return is_act(p) && (p - 1) % 2 == 1; }
bool may_stop(std::int64_t p) { return act_ok(p) || is_ended(p); }

std::int64_t floor_div2(std::int64_t s) { return s >= 0 ? s / 2 : -((-s + 1) / 2); }

// One way a track can advance: the letter written and the resulting phase.
struct Move {
  Letter letter;
  int digit;
  std::int64_t phase;
};

// Moves of an input-like track that may pick its digit.
std::vector<Move> free_moves(std::int64_t p) {
  std::vector<Move> out;
  if (p == kFresh) {
    out.push_back({0, 0, act(0, true)});
    out.push_back({1, 1, act(1, true)});
  } else if (is_act(p)) {
    const int last = last_digit(p);
    out.push_back({0, 0, act(0, last != 0)});
    out.push_back({1, 1, act(1, last != 1)});
    if (act_ok(p)) out.push_back({kPad, last, ended(last)});
  } else {
    out.push_back({kPad, last_digit(p), p});
  }
  return out;
}

// Moves of an output track whose digit is forced to z.
std::vector<Move> forced_moves(std::int64_t p, int z) {
  std::vector<Move> out;
  if (p == kFresh) {
    out.push_back({static_cast<Letter>(z), z, act(z, true)});
  } else if (is_act(p)) {
    const int last = last_digit(p);
    out.push_back({static_cast<Letter>(z), z, act(z, z != last)});
    if (act_ok(p) && z == last) out.push_back({kPad, z, ended(z)});
  } else if (z == last_digit(p)) {
    out.push_back({kPad, z, p});
  }
  return out;
}

// Calls f(choice) for every element of the product of the option lists.
template <typename F>
void for_each_choice(const std::vector<std::vector<Move>>& options, F&& f) {
  std::vector<std::size_t> idx(options.size(), 0);
  for (const auto& o : options) {
    if (o.empty()) return;
  }
  std::vector<const Move*> pick(options.size());
  while (true) {
    for (std::size_t i = 0; i < options.size(); ++i) pick[i] = &options[i][idx[i]];
    f(pick);
    std::size_t i = options.size();
    while (i > 0) {
      --i;
      if (++idx[i] < options[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (options.empty()) return;
  }
}

std::int64_t small(const BigInt& x) {
  if (x > INT32_MAX || x < INT32_MIN) throw InputError("affine_relation: entry too large: " + x.str());
  return static_cast<std::int64_t>(x);
}

// Generic breadth-first construction of a deterministic automaton from a
// successor function on vector states.
template <typename Succ, typename Acc>
Fsa explore(ConvAlphabet alphabet, std::vector<std::int64_t> start, Succ&& successors, Acc&& accepting) {
  Fsa a(std::move(alphabet));
  std::unordered_map<std::vector<std::int64_t>, State, fsa::VectorHash<std::int64_t>> index;
  std::deque<std::vector<std::int64_t>> queue;
  auto intern = [&](const std::vector<std::int64_t>& s) {
    auto [it, fresh] = index.emplace(s, static_cast<State>(a.num_states()));
    if (fresh) {
      a.add_state(accepting(s));
      queue.push_back(s);
    }
    return it->second;
  };
  a.add_initial(intern(start));
  while (!queue.empty()) {
    auto s = std::move(queue.front());
    queue.pop_front();
    const State from = index.at(s);
    successors(s, [&](Symbol sym, const std::vector<std::int64_t>& next) { a.add_edge(from, sym, intern(next)); });
  }
  a.finalize();
  return fsa::minimize(a);
}

}  // namespace

fsa::TrackWord enc_int(const BigInt& n) {
  if (n == 0) return {0};
  if (n == -1) return {1};
  fsa::TrackWord out;
  BigInt v = n;
  while (true) {
    BigInt r = v % 2;
    if (r < 0) r += 2;
    const Letter d = r == 0 ? 0 : 1;
    out.push_back(d);
    v = (v - r) / 2;
    if ((v == 0 && d == 0) || (v == -1 && d == 1)) break;
  }
  return out;
}

bool is_canonical_int(std::span<const Letter> digits) {
  if (digits.empty()) return false;
  for (Letter d : digits) {
    if (d > 1) return false;
  }
  return digits.size() == 1 || digits[digits.size() - 1] != digits[digits.size() - 2];
}

BigInt dec_int(std::span<const Letter> digits) {
  if (!is_canonical_int(digits)) throw ValidityError("not a canonical integer encoding");
  BigInt v = 0;
  const std::size_t k = digits.size();
  for (std::size_t i = k - 1; i-- > 0;) v = v * 2 + digits[i];
  if (digits[k - 1]) v -= BigInt(1) << (k - 1);
  return v;
}

std::string enc_int_string(const BigInt& n) {
  std::string s;
  for (Letter d : enc_int(n)) s.push_back(d ? '1' : '0');
  return s;
}

BigInt dec_int_string(std::string_view digits) {
  fsa::TrackWord w;
  for (char c : digits) {
    if (c != '0' && c != '1') throw InputError("integer encoding must use digits 0 and 1");
    w.push_back(c == '1');
  }
  return dec_int(w);
}

ConvAlphabet int_alphabet(std::size_t d) {
  return ConvAlphabet(std::vector<fsa::Alphabet>(d, fsa::Alphabet::binary()));
}

fsa::ConvWord enc_vec(const ZVector& v) {
  std::vector<fsa::TrackWord> tracks;
  tracks.reserve(v.size());
  for (const auto& x : v) tracks.push_back(enc_int(x));
  return fsa::convolve(int_alphabet(v.size()), tracks);
}

ZVector dec_vec(std::size_t d, std::span<const Symbol> word) {
  auto tracks = fsa::deconvolve(int_alphabet(d), word);
  ZVector v;
  v.reserve(d);
  for (const auto& t : tracks) v.push_back(dec_int(t));
  return v;
}

Fsa canonical_language(std::size_t d) {
  if (d == 0) throw InputError("canonical_language: d must be positive");
  const ConvAlphabet al = int_alphabet(d);
  auto succ = [&](const std::vector<std::int64_t>& s, auto&& emit) {
    std::vector<std::vector<Move>> options;
    for (auto p : s) options.push_back(free_moves(p));
    for_each_choice(options, [&](const std::vector<const Move*>& pick) {
      std::vector<Letter> letters;
      std::vector<std::int64_t> next;
      for (const Move* m : pick) {
        letters.push_back(m->letter);
        next.push_back(m->phase);
      }
      const Symbol sym = al.encode(letters);
      if (sym != al.all_pad()) emit(sym, next);
    });
  };
  auto acc = [](const std::vector<std::int64_t>& s) {
    return std::all_of(s.begin(), s.end(), may_stop);
  };
  return explore(al, std::vector<std::int64_t>(d, kFresh), succ, acc);
}

fsa::RegularRelation affine_relation(const IntMatrix& m, const ZVector& t) {
  const std::size_t d = m.dim();
  if (d == 0 || t.size() != d) throw InputError("affine_relation: dimension mismatch");
  std::vector<std::int64_t> mm(d * d), tt(d), bound(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) mm[i * d + j] = small(m(i, j));
  }
  for (std::size_t j = 0; j < d; ++j) {
    tt[j] = small(t[j]);
    bound[j] = std::abs(tt[j]) + 1;
    for (std::size_t i = 0; i < d; ++i) bound[j] += std::abs(mm[i * d + j]);
  }
  const ConvAlphabet al = int_alphabet(2 * d);

  // State layout: carries [0, d), input phases [d, 2d), output phases [2d, 3d).
  auto succ = [&](const std::vector<std::int64_t>& s, auto&& emit) {
    std::vector<std::vector<Move>> in_options;
    for (std::size_t i = 0; i < d; ++i) in_options.push_back(free_moves(s[d + i]));
    for_each_choice(in_options, [&](const std::vector<const Move*>& in) {
      std::vector<std::int64_t> carry(d);
      std::vector<std::vector<Move>> out_options;
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t sum = s[j];
        for (std::size_t i = 0; i < d; ++i) sum += in[i]->digit * mm[i * d + j];
        const int z = static_cast<int>(sum & 1);
        carry[j] = floor_div2(sum - z);
        if (std::abs(carry[j]) > bound[j]) throw Error("affine_relation: carry bound exceeded");
        out_options.push_back(forced_moves(s[2 * d + j], z));
      }
      for_each_choice(out_options, [&](const std::vector<const Move*>& out) {
        std::vector<Letter> letters(2 * d);
        std::vector<std::int64_t> next(3 * d);
        for (std::size_t j = 0; j < d; ++j) next[j] = carry[j];
        for (std::size_t i = 0; i < d; ++i) {
          letters[i] = in[i]->letter;
          next[d + i] = in[i]->phase;
        }
        for (std::size_t j = 0; j < d; ++j) {
          letters[d + j] = out[j]->letter;
          next[2 * d + j] = out[j]->phase;
        }
        const Symbol sym = al.encode(letters);
        if (sym != al.all_pad()) emit(sym, next);
      });
    });
  };

  // Accepting: every track could stop here, and running the sign digits of
  // the inputs through the adder forever only produces the output signs.
  auto acc = [&](const std::vector<std::int64_t>& s) {
    for (std::size_t k = d; k < 3 * d; ++k) {
      if (!may_stop(s[k])) return false;
    }
    std::vector<std::int64_t> carry(s.begin(), s.begin() + d);
    std::set<std::vector<std::int64_t>> seen;
    while (seen.insert(carry).second) {
      for (std::size_t j = 0; j < d; ++j) {
        std::int64_t sum = carry[j];
        for (std::size_t i = 0; i < d; ++i) sum += last_digit(s[d + i]) * mm[i * d + j];
        const int z = static_cast<int>(sum & 1);
        if (z != last_digit(s[2 * d + j])) return false;
        carry[j] = floor_div2(sum - z);
      }
    }
    return true;
  };

  std::vector<std::int64_t> start(3 * d, kFresh);
  for (std::size_t j = 0; j < d; ++j) start[j] = tt[j];
  return fsa::RegularRelation({d, d}, explore(al, start, succ, acc));
}

std::vector<std::vector<std::size_t>> coupled_blocks(const IntMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (m(i, j) != 0) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<long> slot(d, -1);
  for (std::size_t i = 0; i < d; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[r]].push_back(i);
  }
  return blocks;
}

fsa::FactoredRelation factored_affine(const IntMatrix& m, const ZVector& t) {
  const std::size_t d = m.dim();
  if (t.size() != d) throw InputError("factored_affine: dimension mismatch");
  std::vector<fsa::Factor> factors;
  for (const auto& b : coupled_blocks(m)) {
    IntMatrix sub(b.size());
    ZVector st(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
      st[i] = t[b[i]];
      for (std::size_t j = 0; j < b.size(); ++j) sub(i, j) = m(b[i], b[j]);
    }
    factors.push_back({affine_relation(sub, st), {b, b}});
  }
  return fsa::FactoredRelation({int_alphabet(d), int_alphabet(d)}, std::move(factors));
}

fsa::FactoredRelation factored_canonical(std::size_t d) {
  const fsa::RegularRelation one({1}, canonical_language(1));
  std::vector<fsa::Factor> factors;
  for (std::size_t i = 0; i < d; ++i) factors.push_back({one, {{i}}});
  return fsa::FactoredRelation({int_alphabet(d)}, std::move(factors));
}

}  // namespace cayley::zd
