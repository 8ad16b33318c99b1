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

#include "cayley/sd/structure.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <omp.h>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/fsa/io.hpp"
#include "cayley/zd/codec.hpp"

namespace cayley::sd {

using fsa::ConvWord;
using fsa::Factor;
using fsa::FactoredRelation;
using fsa::RegularRelation;
using fsa::TrackWord;

namespace {

// The free-group factor on track 0 next to an integer-track relation shifted
// to tracks 1..d.
FactoredRelation couple(const GroupSpec& spec, RegularRelation free_part, const FactoredRelation& ints) {
  const std::size_t arity = ints.arity();
  std::vector<Factor> factors;
  factors.push_back({std::move(free_part), std::vector<std::vector<std::size_t>>(arity, {0})});
  for (Factor f : ints.factors()) {
    for (auto& side : f.tracks) {
      for (auto& t : side) ++t;
    }
    factors.push_back(std::move(f));
  }
  return FactoredRelation(std::vector<fsa::ConvAlphabet>(arity, element_alphabet(spec)), std::move(factors));
}

std::string describe(const GElement& g, const GroupSpec& spec) { return format_element(g, spec); }

}  // namespace

std::string right_name(std::size_t gen_id, const GroupSpec& spec) { return "E_" + gen_name(gen_at(gen_id, spec)); }

std::string left_name(std::size_t gen_id, const GroupSpec& spec) { return "L_" + gen_name(gen_at(gen_id, spec)); }

CayleyStructure build_structure(const GroupSpec& spec, const BuildOptions& options) {
  CayleyStructure s;
  s.spec = spec;
  const std::size_t n = spec.n(), d = spec.d();
  s.domain = couple(spec, RegularRelation({1}, fg::reduced_language(n, 'f')), zd::factored_canonical(d));

  const FactoredRelation int_identity = zd::factored_affine(IntMatrix::identity(d), ZVector(d));
  s.right.resize(num_generators(spec));
  s.left.resize(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const int g = static_cast<int>(i + 1);
    s.right[2 * i] = couple(spec, fg::right_mult_relation(n, g, 'f'), zd::factored_affine(spec.matrix(i), ZVector(d)));
    s.right[2 * i + 1] = s.right[2 * i].converse();
    s.left[2 * i] = couple(spec, fg::left_mult_relation(n, g, 'f'), int_identity);
    s.left[2 * i + 1] = s.left[2 * i].converse();
  }
  const RegularRelation free_identity = fg::identity_relation(n, 'f');
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t id = 2 * n + 2 * j;
    s.right[id] = couple(spec, free_identity, zd::factored_affine(IntMatrix::identity(d), zd::unit_vector(d, j)));
    s.right[id + 1] = s.right[id].converse();
  }

  const bool mono = options.materialize == Materialize::kAlways || (options.materialize == Materialize::kAuto && d <= 2);
  if (mono) materialize(s);

  if (options.check) {
    for (const auto& c : exact_checks(s)) {
      if (!c.passed) throw StructureError("exact check failed: " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }
  return s;
}

void materialize(CayleyStructure& s) {
  s.mono_domain = determinize_minimize(s.domain.materialize().fsa());
  s.mono_right.clear();
  s.mono_left.clear();
  for (const auto& r : s.right) s.mono_right.push_back(r.materialize());
  for (const auto& r : s.left) s.mono_left.push_back(r.materialize());
}

std::vector<CheckResult> exact_checks(const CayleyStructure& s) {
  std::vector<CheckResult> out;
  out.push_back({"domain: valid convolutions", fsa::verify_validity(s.domain), ""});
  auto check = [&](const std::string& name, const FactoredRelation& r) {
    out.push_back({name + ": valid convolutions", fsa::verify_validity(r), ""});
    out.push_back({name + ": functional", fsa::is_functional(r), ""});
    out.push_back({name + ": total on domain", fsa::is_total_on(r, s.domain), ""});
    out.push_back({name + ": stays in domain", fsa::stays_within(r, s.domain), ""});
  };
  for (std::size_t k = 0; k < s.right.size(); ++k) check(right_name(k, s.spec), s.right[k]);
  for (std::size_t k = 0; k < s.left.size(); ++k) check(left_name(k, s.spec), s.left[k]);

  if (s.has_monolithic()) {
    const RegularRelation dom({s.spec.d() + 1}, *s.mono_domain);
    out.push_back({"domain (monolithic): valid convolutions", fsa::verify_validity(dom), ""});
    out.push_back({"domain (monolithic): equals factored",
                   fsa::equivalent(*s.mono_domain, s.domain.materialize().fsa()), ""});
    auto mono = [&](const std::string& name, const RegularRelation& r) {
      out.push_back({name + " (monolithic): valid convolutions", fsa::verify_validity(r), ""});
      out.push_back({name + " (monolithic): functional", fsa::is_functional(r), ""});
      out.push_back({name + " (monolithic): total on domain", fsa::is_total_on(r, *s.mono_domain), ""});
      out.push_back({name + " (monolithic): stays in domain", fsa::stays_within(r, *s.mono_domain), ""});
    };
    for (std::size_t k = 0; k < s.mono_right.size(); ++k) mono(right_name(k, s.spec), s.mono_right[k]);
    for (std::size_t k = 0; k < s.mono_left.size(); ++k) mono(left_name(k, s.spec), s.mono_left[k]);
  }
  return out;
}

std::vector<CheckResult> axiom_checks(const CayleyStructure& s) {
  std::vector<CheckResult> out;
  std::optional<fsa::Fsa> diag;
  if (s.has_monolithic()) diag = fsa::diagonal(*s.mono_domain).fsa();
  for (std::size_t k = 0; k < s.right.size(); ++k) {
    const std::string name = "axiom: " + right_name(k, s.spec) + " then " + right_name(k ^ 1, s.spec) + " is the identity";
    const FactoredRelation round = fsa::compose(s.right[k], s.right[k ^ 1]);
    out.push_back({name, fsa::is_identity_on(round, s.domain), ""});
    if (diag) {
      const RegularRelation mono = fsa::compose(s.mono_right[k], s.mono_right[k ^ 1]);
      out.push_back({name + " (monolithic)", fsa::equivalent(mono.fsa(), *diag), ""});
    }
  }
  return out;
}

std::vector<TrackWord> word_problem_tracks(const CayleyStructure& s, const GroupWord& w) {
  std::vector<TrackWord> cur = encode_tracks(identity(s.spec));
  for (const auto& g : w) cur = s.right.at(gen_id(g, s.spec)).image(cur);
  return cur;
}

ConvWord word_problem(const CayleyStructure& s, const GroupWord& w) {
  return fsa::convolve(element_alphabet(s.spec), word_problem_tracks(s, w));
}

ConvWord word_problem_monolithic(const CayleyStructure& s, const GroupWord& w) {
  if (!s.has_monolithic()) throw Error("structure has no monolithic recognizers");
  ConvWord cur = encode(identity(s.spec), s.spec);
  for (const auto& g : w) cur = fsa::restrict_unique(s.mono_right.at(gen_id(g, s.spec)), cur);
  return cur;
}

bool is_identity(const CayleyStructure& s, const GroupWord& w) {
  return word_problem(s, w) == encode(identity(s.spec), s.spec);
}

bool equal(const CayleyStructure& s, const GroupWord& a, const GroupWord& b) {
  GroupWord w = a;
  const GroupWord bi = inverse(b);
  w.insert(w.end(), bi.begin(), bi.end());
  return is_identity(s, w);
}

std::vector<ConvWord> serial_word_problems(const CayleyStructure& s, const std::vector<GroupWord>& words) {
  std::vector<ConvWord> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(word_problem(s, w));
  return out;
}

std::vector<ConvWord> para_word_problems(const CayleyStructure& s, const std::vector<GroupWord>& words) {
  std::vector<ConvWord> out(words.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < words.size(); ++i) {
    try {
      out[i] = word_problem(s, words[i]);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

namespace {

// Failures for one ball element, over every relation.
std::vector<std::string> check_element(const CayleyStructure& s, const GElement& g) {
  std::vector<std::string> fails;
  const GroupSpec& spec = s.spec;
  const std::vector<TrackWord> in = encode_tracks(g);
  const ConvWord in_word = encode(g, spec);
  auto compare = [&](const std::string& name, const auto& compute, const GElement& expect) {
    try {
      const auto got = compute();
      if (got != encode_tracks(expect)) {
        fails.push_back(name + " on " + describe(g, spec) + ": got " +
                        describe(decode_tracks(got, spec), spec) + ", expected " + describe(expect, spec));
      }
    } catch (const std::exception& e) {
      fails.push_back(name + " on " + describe(g, spec) + ": " + e.what());
    }
  };
  const fsa::ConvAlphabet al = element_alphabet(spec);
  for (std::size_t k = 0; k < s.right.size(); ++k) {
    const GElement expect = multiply(g, element(gen_at(k, spec), spec), spec);
    const std::string name = right_name(k, spec);
    compare(name, [&] { return s.right[k].image(in); }, expect);
    if (s.has_monolithic()) {
      compare(name + " (monolithic)", [&] { return fsa::deconvolve(al, fsa::restrict_unique(s.mono_right[k], in_word)); },
              expect);
    }
  }
  for (std::size_t k = 0; k < s.left.size(); ++k) {
    const GElement expect = multiply(element(gen_at(k, spec), spec), g, spec);
    const std::string name = left_name(k, spec);
    compare(name, [&] { return s.left[k].image(in); }, expect);
    if (s.has_monolithic()) {
      compare(name + " (monolithic)", [&] { return fsa::deconvolve(al, fsa::restrict_unique(s.mono_left[k], in_word)); },
              expect);
    }
  }
  return fails;
}

}  // namespace

std::vector<std::string> serial_ball_check(const CayleyStructure& s, const std::vector<GElement>& ball) {
  std::vector<std::string> out;
  for (const auto& g : ball) {
    auto f = check_element(s, g);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

std::vector<std::string> para_ball_check(const CayleyStructure& s, const std::vector<GElement>& ball) {
  std::vector<std::vector<std::string>> per(ball.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::size_t i = 0; i < ball.size(); ++i) per[i] = check_element(s, ball[i]);
  std::vector<std::string> out;
  for (auto& f : per) out.insert(out.end(), f.begin(), f.end());
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

CheckResult check_injective(const CayleyStructure& s, const std::vector<GElement>& ball) {
  std::map<ConvWord, std::size_t> seen;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const ConvWord w = encode(ball[i], s.spec);
    auto [it, fresh] = seen.emplace(w, i);
    if (!fresh) {
      return {"(a) encode injective on ball", false,
              describe(ball[i], s.spec) + " and " + describe(ball[it->second], s.spec) + " share an encoding"};
    }
    try {
      if (decode(w, s.spec) != ball[i]) {
        return {"(a) encode injective on ball", false, "decode does not invert encode at " + describe(ball[i], s.spec)};
      }
    } catch (const std::exception& e) {
      return {"(a) encode injective on ball", false, describe(ball[i], s.spec) + ": " + e.what()};
    }
  }
  return {"(a) encode injective on ball", true, std::to_string(ball.size()) + " elements"};
}

CheckResult check_domain(const CayleyStructure& s, const std::vector<GElement>& ball, const VerifyOptions& opt) {
  const CheckResult fail_base{"(b) domain accepts exactly the encodings", false, ""};
  const fsa::ConvAlphabet al = element_alphabet(s.spec);
  auto factored_accepts = [&](const ConvWord& w) {
    if (!fsa::is_valid_conv_word(al, w)) return false;
    const std::vector<std::vector<TrackWord>> sides{fsa::deconvolve(al, w)};
    return s.domain.accepts(sides);
  };
  auto oracle = [&](const ConvWord& w) {
    if (!fsa::is_valid_conv_word(al, w)) return false;
    try {
      decode(w, s.spec);
      return true;
    } catch (const ValidityError&) {
      return false;
    }
  };
  std::size_t tested = 0;
  std::string first;
  auto test = [&](const ConvWord& w) {
    ++tested;
    const bool want = oracle(w);
    bool got = factored_accepts(w);
    if (s.has_monolithic() && fsa::accepts(*s.mono_domain, w) != got) {
      if (first.empty()) first = "monolithic and factored domains disagree on '" + fsa::format_word(al, w) + "'";
      return;
    }
    if (got != want && first.empty()) {
      first = "'" + fsa::format_word(al, w) + "': domain " + (got ? "accepts" : "rejects") + ", decode " +
              (want ? "succeeds" : "fails");
    }
  };

  std::size_t max_len = 0;
  std::vector<ConvWord> encodings;
  for (const auto& g : ball) {
    encodings.push_back(encode(g, s.spec));
    max_len = std::max(max_len, encodings.back().size());
    if (!factored_accepts(encodings.back()) && first.empty()) first = "rejects encoding of " + describe(g, s.spec);
    ++tested;
  }

  // Every word up to the longest length that fits the budget.
  std::size_t exhaustive = 0;
  {
    double total = 1, power = 1;
    while (exhaustive < max_len) {
      power *= static_cast<double>(al.size());
      if (total + power > static_cast<double>(opt.exhaustive_budget)) break;
      total += power;
      ++exhaustive;
    }
  }
  for (const auto& w : fsa::all_words(al, exhaustive)) test(w);

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<fsa::Symbol> sym(0, al.size() - 1);
  std::uniform_int_distribution<std::size_t> len(1, max_len + 1);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<fsa::Letter> letter(0, static_cast<fsa::Letter>(2 * s.spec.n() - 1));
  for (std::size_t i = 0; i < opt.random_words; ++i) {
    if (i % 2 == 0) {
      ConvWord w(len(rng));
      for (auto& c : w) c = sym(rng);
      test(w);
    } else {
      // Valid convolution with arbitrary tracks: exercises reducedness and
      // canonicity rather than padding.
      std::vector<TrackWord> tracks(s.spec.d() + 1);
      tracks[0].resize(len(rng) - 1);
      for (auto& l : tracks[0]) l = letter(rng);
      for (std::size_t t = 1; t < tracks.size(); ++t) {
        tracks[t].resize(len(rng));
        for (auto& l : tracks[t]) l = static_cast<fsa::Letter>(bit(rng));
      }
      test(fsa::convolve(al, tracks));
    }
  }

  for (const auto& e : encodings) {
    ConvWord w = e;
    w[std::uniform_int_distribution<std::size_t>(0, w.size() - 1)(rng)] = sym(rng);
    test(w);
    w = e;
    w.push_back(sym(rng));
    test(w);
    w = e;
    w.push_back(e.back());
    test(w);
    if (e.size() > 1) {
      w = e;
      w.pop_back();
      test(w);
    }
  }

  if (!first.empty()) return {fail_base.name, false, first};
  std::ostringstream detail;
  detail << tested << " words (exhaustive to length " << exhaustive << ")";
  return {fail_base.name, true, detail.str()};
}

}  // namespace

VerifyReport verify_structure(const CayleyStructure& s, std::size_t radius, const VerifyOptions& options) {
  VerifyReport report;
  report.radius = radius;
  const std::vector<GElement> b = ball(s.spec, radius);
  report.ball_size = b.size();
  report.checks.push_back(check_injective(s, b));
  report.checks.push_back(check_domain(s, b, options));
  {
    const auto fails = options.parallel ? para_ball_check(s, b) : serial_ball_check(s, b);
    CheckResult c{"(c) relations agree with the algebraic product on the ball", fails.empty(), ""};
    if (fails.empty()) {
      c.detail = std::to_string(b.size()) + " elements x " + std::to_string(s.right.size() + s.left.size()) + " relations";
    } else {
      c.detail = std::to_string(fails.size()) + " mismatches; first: " + fails.front();
    }
    report.checks.push_back(c);
  }
  for (auto& c : exact_checks(s)) {
    c.name = "(d) " + c.name;
    report.checks.push_back(std::move(c));
  }
  if (options.axioms) {
    for (auto& c : axiom_checks(s)) {
      c.name = "(d) " + c.name;
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

namespace {

constexpr const char* kFormat = "cayley-structure 1";

// Generator names differ only in case (f1, F1), so file names carry the id.
std::string file_stem(const std::string& kind, std::size_t k, const GroupSpec& spec) {
  return kind + std::to_string(k) + "_" + gen_name(gen_at(k, spec));
}

nlohmann::json write_factors(const FactoredRelation& r, const std::string& name, const std::filesystem::path& dir) {
  nlohmann::json factors = nlohmann::json::array();
  for (std::size_t i = 0; i < r.factors().size(); ++i) {
    const std::string file = name + "." + std::to_string(i) + ".fsa";
    std::ofstream out(dir / file);
    if (!out) throw InputError("cannot write " + (dir / file).string());
    out << fsa::serialize(r.factors()[i].relation);
    factors.push_back({{"file", file}, {"tracks", r.factors()[i].tracks}});
  }
  return factors;
}

FactoredRelation read_factors(const nlohmann::json& factors, std::size_t arity, const GroupSpec& spec,
                              const std::filesystem::path& dir) {
  std::vector<Factor> out;
  for (const auto& f : factors) {
    const auto path = dir / f.at("file").get<std::string>();
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    out.push_back({fsa::parse_relation(buf.str()), f.at("tracks").get<std::vector<std::vector<std::size_t>>>()});
  }
  return FactoredRelation(std::vector<fsa::ConvAlphabet>(arity, element_alphabet(spec)), std::move(out));
}

}  // namespace

void export_structure(const CayleyStructure& s, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  nlohmann::json m;
  m["format"] = kFormat;
  m["spec"] = s.spec.to_json();
  m["domain"] = {{"name", "domain"}, {"factors", write_factors(s.domain, "domain", root)}};
  m["relations"] = nlohmann::json::array();
  for (std::size_t k = 0; k < s.right.size(); ++k) {
    const std::string name = right_name(k, s.spec);
    m["relations"].push_back({{"name", name},
                              {"kind", "right"},
                              {"generator", gen_name(gen_at(k, s.spec))},
                              {"factors", write_factors(s.right[k], file_stem("right", k, s.spec), root)}});
  }
  for (std::size_t k = 0; k < s.left.size(); ++k) {
    const std::string name = left_name(k, s.spec);
    m["relations"].push_back({{"name", name},
                              {"kind", "left"},
                              {"generator", gen_name(gen_at(k, s.spec))},
                              {"factors", write_factors(s.left[k], file_stem("left", k, s.spec), root)}});
  }
  std::ofstream out(root / "manifest.json");
  if (!out) throw InputError("cannot write manifest in " + dir);
  out << m.dump(2) << '\n';
}

CayleyStructure import_structure(const std::string& dir) {
  const std::filesystem::path root(dir);
  std::ifstream in(root / "manifest.json");
  if (!in) throw InputError("no manifest.json in " + dir);
  try {
    nlohmann::json m;
    in >> m;
    if (m.value("format", "") != kFormat) throw InputError("unsupported structure format in " + dir);
    CayleyStructure s;
    s.spec = GroupSpec::from_json(m.at("spec"));
    s.domain = read_factors(m.at("domain").at("factors"), 1, s.spec, root);
    s.right.resize(num_generators(s.spec));
    s.left.resize(2 * s.spec.n());
    std::vector<bool> have_right(s.right.size()), have_left(s.left.size());
    for (const auto& r : m.at("relations")) {
      const auto word = parse_group_word(r.at("generator").get<std::string>(), s.spec);
      if (word.size() != 1) throw InputError("bad generator in manifest");
      const std::size_t k = gen_id(word[0], s.spec);
      const std::string kind = r.at("kind").get<std::string>();
      auto rel = read_factors(r.at("factors"), 2, s.spec, root);
      if (kind == "right") {
        s.right.at(k) = std::move(rel);
        have_right[k] = true;
      } else if (kind == "left" && k < s.left.size()) {
        s.left[k] = std::move(rel);
        have_left[k] = true;
      } else {
        throw InputError("bad relation kind in manifest: " + kind);
      }
    }
    for (std::size_t k = 0; k < have_right.size(); ++k) {
      if (!have_right[k]) throw InputError("manifest lacks " + right_name(k, s.spec));
    }
    for (std::size_t k = 0; k < have_left.size(); ++k) {
      if (!have_left[k]) throw InputError("manifest lacks " + left_name(k, s.spec));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed manifest: ") + e.what());
  }
}

std::vector<std::string> export_dot(const CayleyStructure& s, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::filesystem::create_directories(root);
  std::vector<std::string> written;
  auto emit = [&](const FactoredRelation& r, const std::string& name) {
    for (std::size_t i = 0; i < r.factors().size(); ++i) {
      const std::string file = name + "." + std::to_string(i) + ".dot";
      std::ofstream out(root / file);
      if (!out) throw InputError("cannot write " + (root / file).string());
      out << fsa::to_dot(r.factors()[i].relation, name + "." + std::to_string(i));
      written.push_back(file);
    }
  };
  emit(s.domain, "domain");
  for (std::size_t k = 0; k < s.right.size(); ++k) emit(s.right[k], file_stem("right", k, s.spec));
  for (std::size_t k = 0; k < s.left.size(); ++k) emit(s.left[k], file_stem("left", k, s.spec));
  return written;
}

}  // namespace cayley::sd
