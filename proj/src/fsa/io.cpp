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

#include "cayley/fsa/io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"

namespace cayley::fsa {

namespace {

constexpr std::string_view kMagic = "cayley-fsa 1";

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) pos = line.size();
    if (pos > start) out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::size_t to_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw InputError("expected a number, got '" + std::string(s) + "'");
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}
  bool done() const { return pos_ >= text_.size(); }
  std::string_view next() {
    if (done()) throw InputError("unexpected end of automaton file");
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }
  // Words after a keyword; throws if the keyword does not match.
  std::vector<std::string_view> keyed(std::string_view key) {
    auto line = next();
    auto words = split(line, ' ');
    if (words.empty() || words[0] != key) throw InputError("expected '" + std::string(key) + "' line");
    words.erase(words.begin());
    return words;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const RegularRelation& r) {
  const Fsa& a = r.fsa();
  const ConvAlphabet& al = r.alphabet();
  std::ostringstream out;
  out << kMagic << '\n' << "sides";
  for (auto w : r.widths()) out << ' ' << w;
  out << '\n';
  for (std::size_t t = 0; t < al.tracks(); ++t) {
    out << "track";
    for (const auto& s : al.track(t).symbols()) out << ' ' << s;
    out << '\n';
  }
  out << "states " << a.num_states() << '\n' << "initial";
  for (State q : a.initial()) out << ' ' << q;
  out << '\n' << "accepting";
  for (State q = 0; q < a.num_states(); ++q) {
    if (a.is_accepting(q)) out << ' ' << q;
  }
  out << '\n' << "deterministic " << (a.deterministic() ? 1 : 0) << '\n';
  out << "transitions " << a.num_edges() << '\n';
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) out << q << '\t' << format_column(al, e.symbol) << '\t' << e.target << '\n';
  }
  return out.str();
}

RegularRelation parse_relation(std::string_view text) {
  LineReader in(text);
  if (in.next() != kMagic) throw InputError("not a cayley-fsa file");
  std::vector<std::size_t> widths;
  for (auto w : in.keyed("sides")) widths.push_back(to_size(w));
  std::size_t tracks = 0;
  for (auto w : widths) tracks += w;
  std::vector<Alphabet> alphabets;
  for (std::size_t t = 0; t < tracks; ++t) {
    std::vector<std::string> names;
    for (auto w : in.keyed("track")) names.emplace_back(w);
    alphabets.emplace_back(std::move(names));
  }
  Fsa a{ConvAlphabet(std::move(alphabets))};
  auto st = in.keyed("states");
  if (st.size() != 1) throw InputError("malformed 'states' line");
  const std::size_t n = to_size(st[0]);
  for (std::size_t q = 0; q < n; ++q) a.add_state(false);
  auto check = [&](std::size_t q) {
    if (q >= n) throw InputError("state index out of range");
    return static_cast<State>(q);
  };
  for (auto w : in.keyed("initial")) a.add_initial(check(to_size(w)));
  for (auto w : in.keyed("accepting")) a.set_accepting(check(to_size(w)), true);
  auto det = in.keyed("deterministic");
  if (det.size() != 1 || (det[0] != "0" && det[0] != "1")) throw InputError("malformed 'deterministic' line");
  auto tr = in.keyed("transitions");
  if (tr.size() != 1) throw InputError("malformed 'transitions' line");
  const std::size_t m = to_size(tr[0]);
  for (std::size_t i = 0; i < m; ++i) {
    auto parts = split(in.next(), '\t');
    if (parts.size() != 3) throw InputError("malformed transition line");
    a.add_edge(check(to_size(parts[0])), parse_column(a.alphabet(), parts[1]), check(to_size(parts[2])));
  }
  while (!in.done()) {
    if (!in.next().empty()) throw InputError("trailing content after transitions");
  }
  a.finalize();
  if ((det[0] == "1") != a.deterministic()) throw InputError("deterministic flag does not match transitions");
  return RegularRelation(std::move(widths), std::move(a));
}

std::string serialize(const Fsa& a) { return serialize(RegularRelation({a.alphabet().tracks()}, a)); }

Fsa parse_fsa(std::string_view text) { return parse_relation(text).fsa(); }

std::string to_dot(const RegularRelation& r, std::string_view name) {
  const Fsa& a = r.fsa();
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (State q = 0; q < a.num_states(); ++q) {
    out << "  " << q << (a.is_accepting(q) ? " [shape=doublecircle];\n" : ";\n");
  }
  std::size_t i = 0;
  for (State q : a.initial()) {
    out << "  init" << i << " [shape=point];\n  init" << i << " -> " << q << ";\n";
    ++i;
  }
  for (State q = 0; q < a.num_states(); ++q) {
    for (const Edge& e : a.edges(q)) {
      out << "  " << q << " -> " << e.target << " [label=\"" << format_column(r.alphabet(), e.symbol) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace cayley::fsa
