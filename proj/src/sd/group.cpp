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

#include "cayley/sd/group.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/zd/codec.hpp"

namespace cayley::sd {

GroupSpec::GroupSpec(std::size_t d, std::size_t n, std::vector<IntMatrix> matrices, std::string name)
    : d_(d), n_(n), matrices_(std::move(matrices)), name_(std::move(name)) {
  if (d_ == 0 || n_ == 0) throw InputError("spec needs d >= 1 and n >= 1");
  if (matrices_.size() != n_) {
    throw InputError("spec has " + std::to_string(matrices_.size()) + " matrices, expected n = " + std::to_string(n_));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (matrices_[i].dim() != d_) throw InputError("matrix " + std::to_string(i + 1) + " is not d x d");
    const BigInt det = zd::determinant(matrices_[i]);
    if (det != 1 && det != -1) {
      throw InputError("matrix " + std::to_string(i + 1) + " has determinant " + det.str() + ", not +-1");
    }
    inverses_.push_back(zd::inverse(matrices_[i]));
  }
}

const IntMatrix& GroupSpec::tau_generator(int g) const {
  return g > 0 ? matrices_.at(static_cast<std::size_t>(g - 1)) : inverses_.at(static_cast<std::size_t>(-g - 1));
}

namespace {

BigInt json_int(const nlohmann::json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
      throw InputError("not an integer: " + v.get<std::string>());
    }
  }
  throw InputError("matrix entries must be integers");
}

nlohmann::json int_json(const BigInt& x) {
  if (x >= INT64_MIN && x <= INT64_MAX) return static_cast<long long>(x);
  return x.str();
}

}  // namespace

GroupSpec GroupSpec::from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("spec must be a JSON object");
    const long long d = j.at("d").get<long long>();
    const long long n = j.at("n").get<long long>();
    if (d <= 0 || n <= 0 || d > 64 || n > 64) throw InputError("d and n must be in [1, 64]");
    const auto& ms = j.at("matrices");
    if (!ms.is_array()) throw InputError("'matrices' must be an array");
    std::vector<IntMatrix> matrices;
    for (const auto& m : ms) {
      if (!m.is_array()) throw InputError("each matrix must be an array");
      std::vector<BigInt> entries;
      if (!m.empty() && m[0].is_array()) {
        for (const auto& row : m) {
          if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) throw InputError("matrix row has wrong length");
          for (const auto& x : row) entries.push_back(json_int(x));
        }
      } else {
        for (const auto& x : m) entries.push_back(json_int(x));
      }
      matrices.emplace_back(static_cast<std::size_t>(d), std::move(entries));
    }
    return GroupSpec(static_cast<std::size_t>(d), static_cast<std::size_t>(n), std::move(matrices),
                     j.value("name", std::string()));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed spec: ") + e.what());
  }
}

nlohmann::json GroupSpec::to_json() const {
  nlohmann::json j;
  if (!name_.empty()) j["name"] = name_;
  j["d"] = d_;
  j["n"] = n_;
  j["matrices"] = nlohmann::json::array();
  for (const auto& m : matrices_) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < d_; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < d_; ++c) row.push_back(int_json(m(r, c)));
      rows.push_back(row);
    }
    j["matrices"].push_back(rows);
  }
  return j;
}

GroupSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open spec file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("spec file " + path + " is not valid JSON: " + e.what());
  }
  return GroupSpec::from_json(j);
}

void save_spec(const GroupSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << spec.to_json().dump(2) << '\n';
}

GroupSpec unipotent_spec() { return GroupSpec(2, 1, {IntMatrix::from_rows({{1, 1}, {0, 1}})}, "unipotent"); }

GroupSpec sanov_spec() {
  return GroupSpec(2, 2, {IntMatrix::from_rows({{1, 2}, {0, 1}}), IntMatrix::from_rows({{1, 0}, {2, 1}})}, "sanov");
}

GElement identity(const GroupSpec& spec) { return {{}, ZVector(spec.d())}; }

ZVector act(const ZVector& a, std::span<const int> b, const GroupSpec& spec) {
  ZVector v = a;
  for (int g : b) v = v * spec.tau_generator(g);
  return v;
}

IntMatrix tau_of(std::span<const int> b, const GroupSpec& spec) {
  IntMatrix m = IntMatrix::identity(spec.d());
  for (int g : b) m = m * spec.tau_generator(g);
  return m;
}

GElement multiply(const GElement& x, const GElement& y, const GroupSpec& spec) {
  return {fg::multiply(x.b, y.b), act(x.a, y.b, spec) + y.a};
}

GElement inverse(const GElement& x, const GroupSpec& spec) {
  const FreeWord bi = fg::inverse(x.b);
  return {bi, act(-x.a, bi, spec)};
}

std::string format_element(const GElement& g, const GroupSpec& spec) {
  return "(" + fg::format_word(g.b, spec.n(), 'f') + ", " + zd::to_string(g.a) + ")";
}

std::size_t num_generators(const GroupSpec& spec) { return 2 * (spec.n() + spec.d()); }

std::size_t gen_id(const Gen& g, const GroupSpec& spec) {
  const std::size_t i = static_cast<std::size_t>(g.index > 0 ? g.index : -g.index) - 1;
  const std::size_t base = g.translation ? 2 * spec.n() : 0;
  return base + 2 * i + (g.index < 0 ? 1 : 0);
}

Gen gen_at(std::size_t id, const GroupSpec& spec) {
  if (id >= num_generators(spec)) throw InputError("generator id out of range");
  const bool translation = id >= 2 * spec.n();
  const std::size_t k = translation ? id - 2 * spec.n() : id;
  const int index = static_cast<int>(k / 2 + 1);
  return {translation, k % 2 ? -index : index};
}

Gen inverse(const Gen& g) { return {g.translation, -g.index}; }

GElement element(const Gen& g, const GroupSpec& spec) {
  const int i = g.index > 0 ? g.index : -g.index;
  if (g.translation) {
    if (static_cast<std::size_t>(i) > spec.d()) throw InputError("translation generator out of range");
    ZVector a(spec.d());
    a[i - 1] = g.index > 0 ? 1 : -1;
    return {{}, a};
  }
  if (static_cast<std::size_t>(i) > spec.n()) throw InputError("free generator out of range");
  return {{g.index}, ZVector(spec.d())};
}

std::string gen_name(const Gen& g) {
  const int i = g.index > 0 ? g.index : -g.index;
  std::string s(1, g.translation ? (g.index > 0 ? 'e' : 'E') : (g.index > 0 ? 'f' : 'F'));
  return s + std::to_string(i);
}

GroupWord parse_group_word(std::string_view text, const GroupSpec& spec) {
  GroupWord out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "1") return out;
  while (skip(), i < text.size()) {
    const char c = text[i++];
    const char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lc != 'f' && lc != 'e') {
      throw InputError("unknown generator '" + std::string(1, c) + "' in '" + std::string(text) + "'");
    }
    const bool translation = lc == 'e';
    const std::size_t limit = translation ? spec.d() : spec.n();
    std::size_t idx = 0;
    bool digits = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + static_cast<std::size_t>(text[i++] - '0');
      digits = true;
      if (idx > 1000000) throw InputError("generator index too large");
    }
    if (!digits) {
      if (limit != 1) throw InputError(std::string("generator '") + c + "' needs an index");
      idx = 1;
    }
    if (idx == 0 || idx > limit) throw InputError(std::string("generator index out of range: ") + c + std::to_string(idx));
    const int signed_idx = static_cast<int>(idx);
    out.push_back({translation, c == lc ? signed_idx : -signed_idx});
  }
  return out;
}

std::string format_group_word(const GroupWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out.push_back(' ');
    out += gen_name(w[i]);
  }
  return out;
}

GroupWord inverse(const GroupWord& w) {
  GroupWord out(w.rbegin(), w.rend());
  for (auto& g : out) g.index = -g.index;
  return out;
}

GElement evaluate(const GroupWord& w, const GroupSpec& spec) {
  GElement x = identity(spec);
  for (const auto& g : w) x = multiply(x, element(g, spec), spec);
  return x;
}

GroupWord random_group_word(std::mt19937_64& rng, const GroupSpec& spec, std::size_t length) {
  std::uniform_int_distribution<std::size_t> pick(0, num_generators(spec) - 1);
  GroupWord w(length);
  for (auto& g : w) g = gen_at(pick(rng), spec);
  return w;
}

fsa::ConvAlphabet element_alphabet(const GroupSpec& spec) {
  std::vector<fsa::Alphabet> tracks{fg::alphabet(spec.n(), 'f')};
  for (std::size_t i = 0; i < spec.d(); ++i) tracks.push_back(fsa::Alphabet::binary());
  return fsa::ConvAlphabet(std::move(tracks));
}

std::vector<fsa::TrackWord> encode_tracks(const GElement& g) {
  std::vector<fsa::TrackWord> tracks{fg::to_track(g.b)};
  for (const auto& x : g.a) tracks.push_back(zd::enc_int(x));
  return tracks;
}

fsa::ConvWord encode(const GElement& g, const GroupSpec& spec) {
  if (g.a.size() != spec.d()) throw InputError("element dimension does not match spec");
  return fsa::convolve(element_alphabet(spec), encode_tracks(g));
}

GElement decode_tracks(std::span<const fsa::TrackWord> tracks, const GroupSpec& spec) {
  if (tracks.size() != spec.d() + 1) throw ValidityError("element encoding needs d + 1 tracks");
  GElement g;
  for (auto l : tracks[0]) {
    if (l >= 2 * spec.n()) throw ValidityError("free-group letter out of range");
  }
  g.b = fg::from_track(tracks[0]);
  if (!fg::is_reduced(g.b)) throw ValidityError("free-group track is not reduced");
  for (std::size_t i = 1; i < tracks.size(); ++i) g.a.push_back(zd::dec_int(tracks[i]));
  return g;
}

GElement decode(std::span<const fsa::Symbol> word, const GroupSpec& spec) {
  auto tracks = fsa::deconvolve(element_alphabet(spec), word);
  return decode_tracks(tracks, spec);
}

std::vector<GElement> ball(const GroupSpec& spec, std::size_t radius) {
  std::vector<GElement> out{identity(spec)};
  std::set<GElement> seen{out[0]};
  std::vector<GElement> gens;
  for (std::size_t k = 0; k < num_generators(spec); ++k) gens.push_back(element(gen_at(k, spec), spec));
  std::size_t begin = 0;
  for (std::size_t r = 0; r < radius; ++r) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : gens) {
        GElement y = multiply(out[i], s, spec);
        if (seen.insert(y).second) out.push_back(std::move(y));
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace cayley::sd
