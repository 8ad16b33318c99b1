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

#include "cayley/fg/free_group.hpp"

#include <cctype>

#include "cayley/error.hpp"

namespace cayley::fg {

using fsa::ConvAlphabet;
using fsa::Fsa;
using fsa::Letter;
using fsa::State;

FreeWord reduce(std::span<const int> raw) {
  FreeWord out;
  out.reserve(raw.size());
  for (int g : raw) {
    if (!out.empty() && out.back() == -g) {
      out.pop_back();
    } else {
      out.push_back(g);
    }
  }
  return out;
}

FreeWord inverse(std::span<const int> w) {
  FreeWord out(w.rbegin(), w.rend());
  for (int& g : out) g = -g;
  return out;
}

FreeWord multiply(std::span<const int> a, std::span<const int> b) {
  FreeWord raw(a.begin(), a.end());
  raw.insert(raw.end(), b.begin(), b.end());
  return reduce(raw);
}

bool is_reduced(std::span<const int> w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == -w[i + 1]) return false;
  }
  return true;
}

std::string format_word(std::span<const int> w, std::size_t n, char prefix) {
  if (w.empty()) return "1";
  std::string out;
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(prefix)));
  for (int g : w) {
    out.push_back(g > 0 ? prefix : upper);
    if (n > 1) out += std::to_string(g > 0 ? g : -g);
  }
  return out;
}

FreeWord parse_word(std::string_view text, std::size_t n, char prefix) {
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(prefix)));
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(prefix)));
  FreeWord out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "1") return out;
  while (skip(), i < text.size()) {
    const char c = text[i++];
    if (c != lower && c != upper) throw InputError("unknown generator '" + std::string(1, c) + "' in '" + std::string(text) + "'");
    std::size_t idx = 0;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + static_cast<std::size_t>(text[i++] - '0');
      digits = true;
      if (idx > 1000000) throw InputError("generator index too large");
    }
    if (!digits) {
      if (n != 1) throw InputError("generator index required when n > 1");
      idx = 1;
    }
    if (idx == 0 || idx > n) throw InputError("generator index out of range in '" + std::string(text) + "'");
    out.push_back(c == lower ? static_cast<int>(idx) : -static_cast<int>(idx));
  }
  return out;
}

fsa::Alphabet alphabet(std::size_t n, char prefix) {
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(prefix)));
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) {
    names.push_back(prefix + std::to_string(i));
    names.push_back(upper + std::to_string(i));
  }
  return fsa::Alphabet(std::move(names));
}

Letter to_letter(int g) { return g > 0 ? static_cast<Letter>(2 * (g - 1)) : static_cast<Letter>(2 * (-g - 1) + 1); }

int from_letter(Letter l) { return l % 2 == 0 ? static_cast<int>(l / 2 + 1) : -static_cast<int>(l / 2 + 1); }

fsa::TrackWord to_track(std::span<const int> w) {
  fsa::TrackWord t;
  t.reserve(w.size());
  for (int g : w) t.push_back(to_letter(g));
  return t;
}

FreeWord from_track(std::span<const Letter> t) {
  FreeWord w;
  w.reserve(t.size());
  for (Letter l : t) w.push_back(from_letter(l));
  return w;
}

namespace {

void check_generator(std::size_t n, int s) {
  if (s == 0 || static_cast<std::size_t>(s > 0 ? s : -s) > n) throw InputError("generator out of range");
}

}  // namespace

Fsa reduced_language(std::size_t n, char prefix) {
  if (n == 0) throw InputError("free group rank must be positive");
  const Letter k = static_cast<Letter>(2 * n);
  Fsa a(ConvAlphabet({alphabet(n, prefix)}));
  // State 0: nothing read; state 1 + x: last letter x.
  for (Letter q = 0; q <= k; ++q) a.add_state(true);
  a.add_initial(0);
  for (Letter q = 0; q <= k; ++q) {
    for (Letter x = 0; x < k; ++x) {
      if (q > 0 && x == ((q - 1) ^ 1)) continue;
      a.add_edge(q, x, 1 + x);
    }
  }
  a.finalize();
  return a;
}

fsa::RegularRelation right_mult_relation(std::size_t n, int s, char prefix) {
  check_generator(n, s);
  const fsa::Alphabet al = alphabet(n, prefix);
  const ConvAlphabet c({al, al});
  const Letter k = static_cast<Letter>(2 * n), pad = al.pad();
  const Letter ls = to_letter(s), linv = ls ^ 1;
  Fsa a(c);
  // 0: start, 1 + x: copied with last letter x, k + 1: done.
  for (Letter q = 0; q <= k; ++q) a.add_state(false);
  const State done = a.add_state(true);
  a.add_initial(0);
  for (Letter q = 0; q <= k; ++q) {
    const bool has_last = q > 0;
    const Letter last = q - 1;
    for (Letter x = 0; x < k; ++x) {
      if (has_last && x == (last ^ 1)) continue;
      std::vector<Letter> col{x, x};
      a.add_edge(q, c.encode(col), 1 + x);
    }
    if (!has_last || last != linv) {
      std::vector<Letter> col{pad, ls};
      a.add_edge(q, c.encode(col), done);
    }
    if (!has_last || last != ls) {
      std::vector<Letter> col{linv, pad};
      a.add_edge(q, c.encode(col), done);
    }
  }
  a.finalize();
  return fsa::RegularRelation({1, 1}, fsa::minimize(a));
}

namespace {

// {(w, s w) : w reduced, w does not start with s^-1}.
fsa::RegularRelation prepend_shift(std::size_t n, int s, char prefix) {
  const fsa::Alphabet al = alphabet(n, prefix);
  const ConvAlphabet c({al, al});
  const Letter k = static_cast<Letter>(2 * n), pad = al.pad();
  Fsa a(c);
  // State p: the output owes letter p, which is also the last letter read
  // (or s before anything is read).
  for (Letter p = 0; p < k; ++p) a.add_state(false);
  const State done = a.add_state(true);
  a.add_initial(to_letter(s));
  for (Letter p = 0; p < k; ++p) {
    for (Letter x = 0; x < k; ++x) {
      if (x == (p ^ 1)) continue;
      std::vector<Letter> col{x, p};
      a.add_edge(p, c.encode(col), x);
    }
    std::vector<Letter> col{pad, p};
    a.add_edge(p, c.encode(col), done);
  }
  a.finalize();
  return fsa::RegularRelation({1, 1}, a);
}

}  // namespace

fsa::RegularRelation left_mult_relation(std::size_t n, int s, char prefix) {
  check_generator(n, s);
  const Fsa both = fsa::unite(prepend_shift(n, s, prefix).fsa(), fsa::converse(prepend_shift(n, -s, prefix)).fsa());
  return fsa::RegularRelation({1, 1}, fsa::determinize_minimize(both));
}

fsa::RegularRelation identity_relation(std::size_t n, char prefix) {
  return fsa::diagonal(reduced_language(n, prefix));
}

}  // namespace cayley::fg
