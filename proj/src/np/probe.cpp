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

#include "cayley/np/probe.hpp"

#include <omp.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"

namespace cayley::np {

using fsa::ConvWord;
using fsa::Symbol;

std::string relation_name(Side side, const Gen& s) { return (side == Side::kRight ? "E_" : "L_") + sd::gen_name(s); }

namespace {

std::vector<fsa::TrackWord> restrict(std::vector<fsa::TrackWord> tracks, const std::optional<std::vector<std::size_t>>& which) {
  if (!which) return tracks;
  std::vector<fsa::TrackWord> out;
  for (std::size_t t : *which) out.push_back(std::move(tracks.at(t)));
  return out;
}

ConvWord pair_word(const fsa::ConvAlphabet& alphabet, std::vector<fsa::TrackWord> in, std::vector<fsa::TrackWord> out) {
  in.insert(in.end(), std::make_move_iterator(out.begin()), std::make_move_iterator(out.end()));
  return fsa::convolve(alphabet, in);
}

}  // namespace

ClassifiedSample generate_sample(const GroupSpec& spec, const Gen& s, Side side, std::size_t radius,
                                 const SampleOptions& options) {
  const fsa::ConvAlphabet element = sd::element_alphabet(spec);
  const fsa::ConvAlphabet one = options.tracks ? element.select(*options.tracks) : element;
  ClassifiedSample out;
  out.alphabet = one.concat(one);
  out.relation = relation_name(side, s);
  out.radius = radius;

  const auto ball = sd::ball(spec, radius);
  const std::set<sd::GElement> in_ball(ball.begin(), ball.end());
  const sd::GElement gs = sd::element(s, spec);
  std::vector<sd::GElement> gens;
  for (std::size_t k = 0; k < sd::num_generators(spec); ++k) gens.push_back(sd::element(sd::gen_at(k, spec), spec));
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pick(0, ball.size() - 1);

  for (const auto& g : ball) {
    const sd::GElement image = side == Side::kRight ? sd::multiply(g, gs, spec) : sd::multiply(gs, g, spec);
    const auto in = restrict(sd::encode_tracks(g), options.tracks);
    const auto image_tracks = restrict(sd::encode_tracks(image), options.tracks);
    out.positives.insert(pair_word(out.alphabet, in, image_tracks));

    std::size_t added = 0;
    auto try_negative = [&](const sd::GElement& h) {
      if (added >= options.negatives_per_positive || h == image || !in_ball.count(h)) return;
      auto h_tracks = restrict(sd::encode_tracks(h), options.tracks);
      if (h_tracks == image_tracks) return;
      if (out.negatives.insert(pair_word(out.alphabet, in, std::move(h_tracks))).second) ++added;
    };
    for (const auto& t : gens) try_negative(sd::multiply(image, t, spec));
    for (std::size_t attempt = 0; attempt < 4 * options.negatives_per_positive && added < options.negatives_per_positive;
         ++attempt) {
      try_negative(ball[pick(rng)]);
    }
  }
  for (const auto& w : out.positives) out.negatives.erase(w);
  return out;
}

ClassifiedSample generate_left_sample(const GroupSpec& spec, const Gen& s, std::size_t radius,
                                      const SampleOptions& options) {
  return generate_sample(spec, s, Side::kLeft, radius, options);
}

void absorb(ClassifiedSample& larger, const ClassifiedSample& smaller) {
  if (!(larger.alphabet == smaller.alphabet)) throw AlphabetMismatch("absorb: samples over different alphabets");
  larger.positives.insert(smaller.positives.begin(), smaller.positives.end());
  larger.negatives.insert(smaller.negatives.begin(), smaller.negatives.end());
  for (const auto& w : larger.positives) larger.negatives.erase(w);
}

std::optional<ConvWord> find_distinguisher(const ClassifiedSample& sample, const ConvWord& p, const ConvWord& q) {
  auto scan = [&](const ConvWord& a, const ConvWord& b) -> std::optional<ConvWord> {
    auto it = sample.positives.lower_bound(a);
    for (; it != sample.positives.end() && it->size() >= a.size() && std::equal(a.begin(), a.end(), it->begin()); ++it) {
      ConvWord e(it->begin() + static_cast<std::ptrdiff_t>(a.size()), it->end());
      ConvWord be = b;
      be.insert(be.end(), e.begin(), e.end());
      if (sample.negatives.count(be)) return e;
    }
    return std::nullopt;
  };
  if (auto e = scan(p, q)) return e;
  return scan(q, p);
}

namespace {

// Prefix tree of the sample; label +1 positive, -1 negative.
class Trie {
 public:
  struct Node {
    std::vector<std::pair<Symbol, std::uint32_t>> kids;  // sorted by symbol
    std::uint32_t parent = 0;
    Symbol symbol = 0;
    std::uint32_t depth = 0;
    std::int8_t label = 0;
  };

  explicit Trie(const ClassifiedSample& sample) : nodes_(1) {
    for (const auto& w : sample.positives) insert(w, 1);
    for (const auto& w : sample.negatives) insert(w, -1);
  }

  const Node& node(std::uint32_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<std::uint32_t> find(const ConvWord& w) const {
    std::uint32_t cur = 0;
    for (Symbol x : w) {
      auto c = child(cur, x);
      if (!c) return std::nullopt;
      cur = *c;
    }
    return cur;
  }

  std::optional<std::uint32_t> child(std::uint32_t n, Symbol x) const {
    const auto& k = nodes_[n].kids;
    auto it = std::lower_bound(k.begin(), k.end(), x, [](const auto& e, Symbol v) { return e.first < v; });
    if (it == k.end() || it->first != x) return std::nullopt;
    return it->second;
  }

  ConvWord word(std::uint32_t n) const {
    ConvWord w;
    for (; n != 0; n = nodes_[n].parent) w.push_back(nodes_[n].symbol);
    std::reverse(w.begin(), w.end());
    return w;
  }

  // Some common extension is positive below one and negative below the other.
  bool distinguished(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{a, b}};
    while (!stack.empty()) {
      auto [u, v] = stack.back();
      stack.pop_back();
      if (nodes_[u].label * nodes_[v].label < 0) return true;
      const auto& ku = nodes_[u].kids;
      const auto& kv = nodes_[v].kids;
      // Merge walk over the two sorted child lists.
      std::size_t i = 0, j = 0;
      while (i < ku.size() && j < kv.size()) {
        if (ku[i].first < kv[j].first) {
          ++i;
        } else if (kv[j].first < ku[i].first) {
          ++j;
        } else {
          stack.push_back({ku[i++].second, kv[j++].second});
        }
      }
    }
    return false;
  }

 private:
  void insert(const ConvWord& w, std::int8_t label) {
    std::uint32_t cur = 0;
    for (Symbol x : w) {
      auto& k = nodes_[cur].kids;
      auto it = std::lower_bound(k.begin(), k.end(), x, [](const auto& e, Symbol v) { return e.first < v; });
      if (it != k.end() && it->first == x) {
        cur = it->second;
        continue;
      }
      const auto id = static_cast<std::uint32_t>(nodes_.size());
      k.insert(it, {x, id});
      Node n;
      n.parent = cur;
      n.symbol = x;
      n.depth = nodes_[cur].depth + 1;
      nodes_.push_back(std::move(n));
      cur = id;
    }
    nodes_[cur].label = label;
  }

  std::vector<Node> nodes_;
};

std::vector<std::uint32_t> candidates(const Trie& trie, const ClassifiedSample& sample, const std::vector<ConvWord>& seeds,
                                      std::size_t max_candidates) {
  std::vector<std::uint32_t> out;
  std::set<std::uint32_t> taken;
  for (const auto& s : seeds) {
    auto n = trie.find(s);
    if (n && taken.insert(*n).second) out.push_back(*n);
  }
  std::vector<std::uint32_t> rest;
  std::set<std::uint32_t> seen;
  auto add_prefixes = [&](const ConvWord& w) {
    std::uint32_t cur = 0;
    for (std::size_t i = 0;; ++i) {
      if (!taken.count(cur) && seen.insert(cur).second) rest.push_back(cur);
      if (i == w.size()) break;
      cur = *trie.child(cur, w[i]);
    }
  };
  for (const auto& w : sample.positives) add_prefixes(w);
  for (const auto& w : sample.negatives) add_prefixes(w);
  const std::size_t room = max_candidates > out.size() ? max_candidates - out.size() : 0;
  if (rest.size() > room) {
    std::mt19937_64 rng(7);
    std::shuffle(rest.begin(), rest.end(), rng);
    rest.resize(room);
  }
  std::sort(rest.begin(), rest.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::pair(trie.node(a).depth, a) < std::pair(trie.node(b).depth, b);
  });
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

NerodeBound greedy(const ClassifiedSample& sample, const std::vector<ConvWord>& seeds, std::size_t max_candidates,
                   bool parallel) {
  if (sample.positives.empty() && sample.negatives.empty()) throw InputError("nerode bound of an empty sample");
  const Trie trie(sample);
  const auto cands = candidates(trie, sample, seeds, max_candidates);
  std::vector<std::uint32_t> chosen;
  for (std::uint32_t c : cands) {
    bool all = true;
    const auto m = static_cast<std::ptrdiff_t>(chosen.size());
    if (parallel) {
#pragma omp parallel for reduction(&& : all) schedule(dynamic, 8)
      for (std::ptrdiff_t i = 0; i < m; ++i) {
        all = all && trie.distinguished(c, chosen[static_cast<std::size_t>(i)]);
      }
    } else {
      for (std::ptrdiff_t i = 0; i < m && all; ++i) all = trie.distinguished(c, chosen[static_cast<std::size_t>(i)]);
    }
    if (all) chosen.push_back(c);
  }
  NerodeBound out;
  out.bound = chosen.size();
  out.candidates = cands.size();
  for (auto c : chosen) out.witnesses.push_back(trie.word(c));
  return out;
}

}  // namespace

NerodeBound serial_nerode_lower_bound(const ClassifiedSample& sample, const std::vector<ConvWord>& seeds,
                                      std::size_t max_candidates) {
  return greedy(sample, seeds, max_candidates, false);
}

NerodeBound para_nerode_lower_bound(const ClassifiedSample& sample, const std::vector<ConvWord>& seeds,
                                    std::size_t max_candidates) {
  return greedy(sample, seeds, max_candidates, true);
}

NerodeBound nerode_lower_bound(const ClassifiedSample& sample, const std::vector<ConvWord>& seeds,
                               std::size_t max_candidates) {
  return para_nerode_lower_bound(sample, seeds, max_candidates);
}

std::string ProbeReport::tsv() const {
  std::ostringstream out;
  out << "# " << kProbeFraming << "\n";
  out << "# spec\t" << spec_name << "\n";
  out << "relation\tcontrol\tminimal\tradius\tpositives\tnegatives\tbound\n";
  for (const auto& s : series) {
    for (const auto& r : s.rows) {
      out << s.relation << '\t' << (s.control ? 1 : 0) << '\t'
          << (s.minimal_size ? std::to_string(*s.minimal_size) : std::string("-")) << '\t' << r.radius << '\t'
          << r.positives << '\t' << r.negatives << '\t' << r.bound << '\n';
    }
  }
  return out.str();
}

nlohmann::json ProbeReport::to_json() const {
  nlohmann::json j;
  j["framing"] = kProbeFraming;
  j["spec"] = spec_name;
  j["series"] = nlohmann::json::array();
  for (const auto& s : series) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : s.rows) {
      rows.push_back({{"radius", r.radius}, {"positives", r.positives}, {"negatives", r.negatives}, {"bound", r.bound}});
    }
    j["series"].push_back({{"relation", s.relation},
                           {"control", s.control},
                           {"minimal_size", s.minimal_size ? nlohmann::json(*s.minimal_size) : nlohmann::json()},
                           {"rows", rows}});
  }
  return j;
}

ProbeReport probe_report(const sd::CayleyStructure& s, const Gen& target, const std::vector<std::size_t>& radii,
                         const ProbeOptions& options) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw InputError("probe radii must ascend");
  const auto& spec = s.spec;
  sd::gen_id(target, spec);  // validates the generator

  struct Plan {
    Side side;
    Gen gen;
    bool control;
  };
  std::vector<Plan> plans{{Side::kLeft, target, false}};
  if (options.controls) {
    plans.push_back({Side::kRight, target, true});
    if (!(target == Gen{false, 1})) plans.push_back({Side::kLeft, Gen{false, 1}, true});
  }

  ProbeReport report;
  report.spec_name = spec.name();
  for (const auto& plan : plans) {
    ProbeSeries series;
    series.relation = relation_name(plan.side, plan.gen);
    series.control = plan.control;
    if (s.has_monolithic()) {
      const std::size_t k = sd::gen_id(plan.gen, spec);
      if (plan.side == Side::kRight) {
        series.minimal_size = fsa::minimal_complete_size(s.mono_right.at(k).fsa());
      } else if (!plan.gen.translation) {
        series.minimal_size = fsa::minimal_complete_size(s.mono_left.at(k).fsa());
      }
    }
    std::optional<ClassifiedSample> prev;
    std::vector<ConvWord> seeds;
    for (std::size_t r : radii) {
      ClassifiedSample sample = generate_sample(spec, plan.gen, plan.side, r, options.sample);
      if (prev) absorb(sample, *prev);
      auto nb = options.parallel ? para_nerode_lower_bound(sample, seeds, options.max_candidates)
                                 : serial_nerode_lower_bound(sample, seeds, options.max_candidates);
      series.rows.push_back({r, sample.positives.size(), sample.negatives.size(), nb.bound});
      seeds = std::move(nb.witnesses);
      prev = std::move(sample);
    }
    report.series.push_back(std::move(series));
  }
  return report;
}

}  // namespace cayley::np
