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

#include "cayley/ud/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <limits>
#include <random>
#include <set>

#include "cayley/error.hpp"

namespace cayley::ud {

using zd::operator*;

std::string format_ab(const FreeWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int g : w) {
    if (g == 0 || g > 2 || g < -2) throw InputError("not a word over {a, b}");
    const char c = std::abs(g) == 1 ? 'a' : 'b';
    out += g > 0 ? c : static_cast<char>(std::toupper(c));
  }
  return out;
}

FreeWord parse_ab(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.empty() || compact == "1") return {};
  if (std::any_of(compact.begin(), compact.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return fg::parse_word(compact, 2, 'a');
  }
  FreeWord out;
  for (char c : compact) {
    switch (c) {
      case 'a': out.push_back(1); break;
      case 'A': out.push_back(-1); break;
      case 'b': out.push_back(2); break;
      case 'B': out.push_back(-2); break;
      default: throw InputError("unknown letter '" + std::string(1, c) + "' in '" + std::string(text) + "'");
    }
  }
  return out;
}

Presentation Presentation::from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("presentation must be a JSON object");
    if (j.contains("generators") && j.at("generators").get<long long>() != 2) {
      throw InputError("only two-generator presentations are supported");
    }
    Presentation p;
    for (const auto& r : j.at("relators")) {
      FreeWord w = fg::reduce(parse_ab(r.get<std::string>()));
      if (w.empty()) throw InputError("relator '" + r.get<std::string>() + "' reduces to the empty word");
      p.relators.push_back(std::move(w));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed presentation: ") + e.what());
  }
}

nlohmann::json Presentation::to_json() const {
  nlohmann::json j;
  j["generators"] = 2;
  j["relators"] = nlohmann::json::array();
  for (const auto& r : relators) j["relators"].push_back(format_ab(r));
  return j;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("presentation file " + path + " is not valid JSON: " + e.what());
  }
  return Presentation::from_json(j);
}

Presentation z2_presentation() { return Presentation{{{1, 2, -1, -2}}}; }

Pair multiply(const Pair& x, const Pair& y) { return {fg::multiply(x.first, y.first), fg::multiply(x.second, y.second)}; }

Pair inverse(const Pair& x) { return {fg::inverse(x.first), fg::inverse(x.second)}; }

std::string format_pair(const Pair& x) { return "(" + format_ab(x.first) + ", " + format_ab(x.second) + ")"; }

std::vector<Pair> mikhailova_generators(const Presentation& p) {
  std::vector<Pair> gens{{{1}, {1}}, {{2}, {2}}};
  for (const auto& r : p.relators) gens.push_back({{}, fg::reduce(r)});
  return gens;
}

Pair evaluate(const GenWord& w, const std::vector<Pair>& gens) {
  Pair x;
  for (int k : w) {
    if (k == 0 || static_cast<std::size_t>(std::abs(k)) > gens.size()) throw InputError("generator index out of range");
    const Pair& g = gens[static_cast<std::size_t>(std::abs(k) - 1)];
    x = multiply(x, k > 0 ? g : inverse(g));
  }
  return x;
}

std::string format_gen_word(const GenWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (int k : w) {
    if (!out.empty()) out += ' ';
    out += (k > 0 ? "g" : "G") + std::to_string(std::abs(k));
  }
  return out;
}

MembershipIndex::MembershipIndex(std::vector<Pair> gens, std::size_t depth) : gens_(std::move(gens)), depth_(depth) {
  const std::size_t outer = (depth + 1) / 2, inner = depth / 2;
  elements_.push_back({});
  words_.push_back({});
  index_.emplace(elements_[0], 0);
  std::vector<Pair> letters;
  for (const auto& g : gens_) {
    letters.push_back(g);
    letters.push_back(inverse(g));
  }
  std::size_t begin = 0;
  half_end_ = inner == 0 ? 1 : 0;
  for (std::size_t r = 1; r <= outer; ++r) {
    const std::size_t end = elements_.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        Pair y = multiply(elements_[i], letters[l]);
        if (index_.count(y)) continue;
        index_.emplace(y, elements_.size());
        elements_.push_back(std::move(y));
        GenWord w = words_[i];
        w.push_back(l % 2 == 0 ? static_cast<int>(l / 2 + 1) : -static_cast<int>(l / 2 + 1));
        words_.push_back(std::move(w));
      }
    }
    begin = end;
    if (r == inner) half_end_ = elements_.size();
  }
}

namespace {

struct Best {
  std::size_t length = std::numeric_limits<std::size_t>::max();
  std::size_t outer = 0;
  std::size_t inner = 0;
  bool better_than(const Best& o) const { return length < o.length || (length == o.length && inner < o.inner); }
};

}  // namespace

std::optional<GenWord> MembershipIndex::serial_find(const Pair& x) const {
  Best best;
  for (std::size_t i = 0; i < half_end_; ++i) {
    auto it = index_.find(multiply(x, inverse(elements_[i])));
    if (it == index_.end()) continue;
    Best b{words_[it->second].size() + words_[i].size(), it->second, i};
    if (b.better_than(best)) best = b;
  }
  if (best.length > depth_) return std::nullopt;
  GenWord w = words_[best.outer];
  w.insert(w.end(), words_[best.inner].begin(), words_[best.inner].end());
  return w;
}

std::optional<GenWord> MembershipIndex::para_find(const Pair& x) const {
  Best best;
  const auto n = static_cast<std::ptrdiff_t>(half_end_);
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      auto it = index_.find(multiply(x, inverse(elements_[ui])));
      if (it == index_.end()) continue;
      Best b{words_[it->second].size() + words_[ui].size(), it->second, ui};
      if (b.better_than(local)) local = b;
    }
#pragma omp critical
    if (local.better_than(best)) best = local;
  }
  if (best.length > depth_) return std::nullopt;
  GenWord w = words_[best.outer];
  w.insert(w.end(), words_[best.inner].begin(), words_[best.inner].end());
  return w;
}

std::optional<GenWord> mikhailova_membership_semidecide(const Pair& x, const std::vector<Pair>& gens,
                                                        std::size_t depth) {
  return MembershipIndex(gens, depth).serial_find(x);
}

IntMatrix sanov_a() { return IntMatrix::from_rows({{1, 2}, {0, 1}}); }
IntMatrix sanov_b() { return IntMatrix::from_rows({{1, 0}, {2, 1}}); }
EmbeddingSpec sanov_embedding() { return {sanov_a(), sanov_b()}; }

IntMatrix matrix_of(const FreeWord& w, const std::vector<IntMatrix>& gens) {
  if (gens.empty()) throw InputError("no generator matrices");
  IntMatrix m = IntMatrix::identity(gens[0].dim());
  for (int g : w) {
    const std::size_t i = static_cast<std::size_t>(std::abs(g) - 1);
    if (g == 0 || i >= gens.size()) throw InputError("generator index out of range");
    m = m * (g > 0 ? gens[i] : zd::inverse(gens[i]));
  }
  return m;
}

std::optional<std::pair<FreeWord, FreeWord>> find_collision(const std::vector<IntMatrix>& gens,
                                                            std::size_t max_length) {
  if (gens.empty()) throw InputError("no generator matrices");
  std::vector<IntMatrix> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(zd::inverse(g));
  }
  struct Node {
    FreeWord w;
    IntMatrix m;
  };
  std::map<std::vector<zd::BigInt>, FreeWord> seen;
  std::vector<Node> level{{{}, IntMatrix::identity(gens[0].dim())}};
  seen.emplace(level[0].m.entries(), FreeWord{});
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Node> next;
    for (const auto& node : level) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        const int g = l % 2 == 0 ? static_cast<int>(l / 2 + 1) : -static_cast<int>(l / 2 + 1);
        if (!node.w.empty() && node.w.back() == -g) continue;
        Node child{node.w, node.m * letters[l]};
        child.w.push_back(g);
        auto [it, fresh] = seen.emplace(child.m.entries(), child.w);
        if (!fresh) return std::pair{it->second, child.w};
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

void check_freeness(const EmbeddingSpec& e, std::size_t max_length) {
  if (e.a.dim() != 2 || e.b.dim() != 2) throw InputError("embedding matrices must be 2x2");
  if (!zd::is_unimodular(e.a) || !zd::is_unimodular(e.b)) throw InputError("embedding matrices must be unimodular");
  if (auto c = find_collision({e.a, e.b}, max_length)) {
    throw InputError("embedding is not free: " + format_ab(c->first) + " and " + format_ab(c->second) +
                     " have the same image");
  }
}

IntMatrix embed_pair(const Pair& x, const EmbeddingSpec& e) {
  const std::vector<IntMatrix> gens{e.a, e.b};
  return zd::block_diag(matrix_of(x.first, gens), matrix_of(x.second, gens));
}

std::vector<IntMatrix> default_auxiliary(std::size_t n) {
  std::vector<IntMatrix> out;
  for (std::size_t i = 1; i <= n; ++i) {
    const auto k = static_cast<long long>(i);
    out.push_back(zd::power(sanov_a(), k) * sanov_b() * zd::power(sanov_a(), -k));
  }
  return out;
}

InjectivizedTau injectivize(const std::vector<IntMatrix>& base, std::size_t n,
                            std::optional<std::vector<IntMatrix>> auxiliary) {
  if (base.size() != n) {
    throw InputError("injectivize: " + std::to_string(base.size()) + " base matrices, expected " + std::to_string(n));
  }
  if (n == 0) throw InputError("injectivize: n must be positive");
  InjectivizedTau t;
  t.base = base;
  t.auxiliary = auxiliary ? std::move(*auxiliary) : default_auxiliary(n);
  if (t.auxiliary.size() != n) throw InputError("injectivize: auxiliary family has the wrong length");
  const std::size_t d = base[0].dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (base[i].dim() != d) throw InputError("injectivize: base matrices differ in dimension");
    if (t.auxiliary[i].dim() != 2) throw InputError("injectivize: auxiliary matrices must be 2x2");
    t.assembled.push_back(zd::block_diag(base[i], t.auxiliary[i]));
  }
  return t;
}

bool has_block_structure(const InjectivizedTau& t) {
  for (std::size_t i = 0; i < t.assembled.size(); ++i) {
    const auto& m = t.assembled[i];
    const std::size_t d = t.base[i].dim();
    if (m.dim() != d + 2) return false;
    if (zd::block(m, 0, d) != t.base[i] || zd::block(m, d, 2) != t.auxiliary[i]) return false;
    for (std::size_t r = 0; r < d + 2; ++r) {
      for (std::size_t c = 0; c < d + 2; ++c) {
        if ((r < d) != (c < d) && m(r, c) != 0) return false;
      }
    }
  }
  return true;
}

GroupSpec to_spec(const InjectivizedTau& t, std::string name) {
  return GroupSpec(t.assembled.at(0).dim(), t.assembled.size(), t.assembled, std::move(name));
}

std::optional<FreeWord> orbit_semidecide(const ZVector& u, const ZVector& v, const GroupSpec& spec,
                                         std::size_t depth) {
  if (u.size() != spec.d() || v.size() != spec.d()) throw InputError("orbit: vector dimension does not match d");
  struct Node {
    ZVector x;
    std::size_t parent;
    int letter;
  };
  std::vector<Node> nodes{{u, 0, 0}};
  std::set<ZVector> seen{u};
  auto word_of = [&](std::size_t i) {
    FreeWord w;
    for (; i != 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (u == v) return FreeWord{};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    const std::size_t end = nodes.size();
    if (begin == end) break;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t l = 0; l < 2 * spec.n(); ++l) {
        const int g = l % 2 == 0 ? static_cast<int>(l / 2 + 1) : -static_cast<int>(l / 2 + 1);
        if (i != 0 && nodes[i].letter == -g) continue;
        ZVector y = nodes[i].x * spec.tau_generator(g);
        if (!seen.insert(y).second) continue;
        nodes.push_back({std::move(y), i, g});
        if (nodes.back().x == v) return word_of(nodes.size() - 1);
      }
    }
    begin = end;
  }
  return std::nullopt;
}

bool ConjugacyReport::consistent() const {
  return orbit_witness.has_value() == conjugator.has_value() && (!orbit_witness || orbit_verified) &&
         (!conjugator || conjugator_verified);
}

namespace {

// Reduced words of length exactly len over n generators, in lexicographic
// letter order f1, F1, f2, F2, ...
void for_each_reduced(std::size_t n, std::size_t len, const std::function<bool(const FreeWord&)>& f) {
  FreeWord w;
  std::function<bool()> rec = [&]() -> bool {
    if (w.size() == len) return f(w);
    for (std::size_t l = 0; l < 2 * n; ++l) {
      const int g = l % 2 == 0 ? static_cast<int>(l / 2 + 1) : -static_cast<int>(l / 2 + 1);
      if (!w.empty() && w.back() == -g) continue;
      w.push_back(g);
      if (rec()) return true;
      w.pop_back();
    }
    return false;
  };
  rec();
}

// 0, 1, -1, 2, -2, ..., bound, -bound.
std::vector<long long> centered(long long bound) {
  std::vector<long long> out{0};
  for (long long k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

}  // namespace

ConjugacyReport conjugacy_cross_check(const ZVector& u, const ZVector& v, const GroupSpec& spec, std::size_t depth,
                                      long long bound) {
  ConjugacyReport rep;
  rep.orbit_witness = orbit_semidecide(u, v, spec, depth);
  if (rep.orbit_witness) rep.orbit_verified = sd::act(u, *rep.orbit_witness, spec) == v;

  const sd::GElement x{{}, u}, y{{}, v};
  const auto values = centered(bound);
  const std::size_t d = spec.d();
  for (std::size_t len = 0; len <= depth && !rep.conjugator; ++len) {
    for_each_reduced(spec.n(), len, [&](const FreeWord& b) {
      std::vector<std::size_t> digit(d, 0);
      while (true) {
        sd::GElement c{b, ZVector(d)};
        for (std::size_t j = 0; j < d; ++j) c.a[j] = values[digit[j]];
        if (sd::multiply(sd::multiply(sd::inverse(c, spec), x, spec), c, spec) == y) {
          rep.conjugator = c;
          return true;
        }
        std::size_t j = 0;
        while (j < d && ++digit[j] == values.size()) digit[j++] = 0;
        if (j == d) return false;
      }
    });
  }
  if (rep.conjugator) {
    // Checked again through the conjugate-by-inverse form c x = y c.
    rep.conjugator_verified =
        sd::multiply(x, *rep.conjugator, spec) == sd::multiply(*rep.conjugator, y, spec);
  }
  return rep;
}

namespace {

nlohmann::json matrix_json(const IntMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) {
      const auto& x = m(r, c);
      if (x >= INT64_MIN && x <= INT64_MAX) {
        row.push_back(static_cast<long long>(x));
      } else {
        row.push_back(x.str());
      }
    }
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_json(const ZVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

FreeWord random_reduced(std::mt19937_64& rng, std::size_t n, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(n));
  std::bernoulli_distribution neg(0.5);
  FreeWord w(len(rng));
  for (int& g : w) g = neg(rng) ? -gen(rng) : gen(rng);
  return fg::reduce(w);
}

}  // namespace

nlohmann::json ReductionArtifacts::to_json() const {
  nlohmann::json j;
  j["presentation"] = presentation.to_json();
  j["word"] = format_ab(word);
  j["generators"] = nlohmann::json::array();
  for (std::size_t k = 0; k < generators.size(); ++k) {
    j["generators"].push_back({{"pair", {format_ab(generators[k].first), format_ab(generators[k].second)}},
                               {"embedding", matrix_json(embedded[k])}});
  }
  j["embedding"] = {{"a", matrix_json(embedding.a)}, {"b", matrix_json(embedding.b)}};
  j["tau"] = nlohmann::json::array();
  for (std::size_t i = 0; i < tau.assembled.size(); ++i) {
    j["tau"].push_back({{"base", matrix_json(tau.base[i])},
                        {"auxiliary", matrix_json(tau.auxiliary[i])},
                        {"assembled", matrix_json(tau.assembled[i])}});
  }
  j["spec"] = spec.to_json();
  j["query"] = {format_ab(query.first), format_ab(query.second)};
  j["membership_witness"] = membership_witness ? nlohmann::json(format_gen_word(*membership_witness)) : nlohmann::json();
  j["embedding_multiplicative"] = embedding_multiplicative;
  j["tau_injective"] = tau_injective;
  if (instance) {
    j["instance"] = {{"u", vector_json(instance->u)}, {"v", vector_json(instance->v)}};
  } else {
    j["instance"] = nullptr;
  }
  return j;
}

ReductionArtifacts wp_instance_pipeline(const Presentation& p, const FreeWord& w, const PipelineOptions& options) {
  check_freeness(options.embedding);
  ReductionArtifacts art;
  art.presentation = p;
  art.word = fg::reduce(w);
  art.generators = mikhailova_generators(p);
  art.embedding = options.embedding;
  for (const auto& g : art.generators) art.embedded.push_back(embed_pair(g, options.embedding));

  std::mt19937_64 rng(options.seed);
  art.embedding_multiplicative = true;
  for (std::size_t i = 0; i < options.multiplicativity_samples; ++i) {
    const Pair x{random_reduced(rng, 2, 8), random_reduced(rng, 2, 8)};
    const Pair y{random_reduced(rng, 2, 8), random_reduced(rng, 2, 8)};
    if (embed_pair(multiply(x, y), options.embedding) !=
        embed_pair(x, options.embedding) * embed_pair(y, options.embedding)) {
      art.embedding_multiplicative = false;
      break;
    }
  }

  art.tau = injectivize(art.embedded, art.embedded.size());
  art.spec = to_spec(art.tau, "mikhailova");
  art.tau_injective = !find_collision(art.tau.assembled, options.injectivity_length).has_value();
  art.query = {{}, art.word};
  if (options.membership_depth > 0) {
    art.membership_witness = mikhailova_membership_semidecide(art.query, art.generators, options.membership_depth);
  }
  if (options.instance_map) art.instance = options.instance_map(art);
  return art;
}

}  // namespace cayley::ud
