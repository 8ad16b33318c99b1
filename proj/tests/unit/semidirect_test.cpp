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

#include <gtest/gtest.h>
#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/sd/structure.hpp"
#include "cayley/zd/codec.hpp"

using namespace cayley;
using namespace cayley::sd;

namespace {

ZVector vec(std::initializer_list<long long> xs) {
  ZVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

GElement random_element(std::mt19937_64& rng, const GroupSpec& spec, std::size_t len, long long bound) {
  std::uniform_int_distribution<long long> entry(-bound, bound);
  std::uniform_int_distribution<std::size_t> l(0, len);
  std::uniform_int_distribution<int> gen(1, static_cast<int>(spec.n()));
  std::bernoulli_distribution neg(0.5);
  FreeWord raw(l(rng));
  for (int& g : raw) g = neg(rng) ? -gen(rng) : gen(rng);
  ZVector a(spec.d());
  for (auto& x : a) x = entry(rng);
  return {fg::reduce(raw), a};
}

const CayleyStructure& unipotent() {
  static const CayleyStructure s = build_structure(unipotent_spec());
  return s;
}

}  // namespace

TEST(Algebra, ProductExamples) {
  const auto spec = unipotent_spec();
  const GElement x{{1}, vec({1, 0})};
  EXPECT_EQ(multiply(x, GElement{{1}, vec({0, 0})}, spec), (GElement{{1, 1}, vec({1, 1})}));
  EXPECT_EQ(multiply(x, identity(spec), spec), x);
  EXPECT_EQ(inverse(x, spec), (GElement{{-1}, vec({-1, 1})}));
  EXPECT_EQ(multiply(x, inverse(x, spec), spec), identity(spec));
  EXPECT_EQ(tau_of(FreeWord{1, 1}, spec), IntMatrix::from_rows({{1, 2}, {0, 1}}));
  EXPECT_EQ(tau_of(FreeWord{}, spec), IntMatrix::identity(2));
}

TEST(Algebra, RandomProperties) {
  std::mt19937_64 rng(9);
  for (const auto& spec : {unipotent_spec(), sanov_spec()}) {
    for (int it = 0; it < 10000; ++it) {
      auto x = random_element(rng, spec, 8, 8), y = random_element(rng, spec, 8, 8), z = random_element(rng, spec, 8, 8);
      ASSERT_EQ(multiply(multiply(x, y, spec), z, spec), multiply(x, multiply(y, z, spec), spec));
      ASSERT_EQ(multiply(x, inverse(x, spec), spec), identity(spec));
      ASSERT_EQ(multiply(inverse(x, spec), x, spec), identity(spec));
      ASSERT_EQ(tau_of(fg::multiply(x.b, y.b), spec), tau_of(x.b, spec) * tau_of(y.b, spec));
    }
  }
}

TEST(Algebra, ConjugationActsOnTranslations) {
  const auto spec = unipotent_spec();
  // f^-1 e1 f = (ε, e1 M) = e1 e2, while f e1 f^-1 = (ε, e1 M^-1).
  EXPECT_EQ(evaluate(parse_group_word("F e1 f", spec), spec), evaluate(parse_group_word("e1 e2", spec), spec));
  EXPECT_EQ(evaluate(parse_group_word("f e1 F", spec), spec), (GElement{{}, vec({1, -1})}));
}

TEST(Spec, Json) {
  auto j = nlohmann::json::parse(R"({"d":2,"n":1,"matrices":[[[1,1],[0,1]]]})");
  EXPECT_EQ(GroupSpec::from_json(j), unipotent_spec());
  auto flat = nlohmann::json::parse(R"({"d":2,"n":1,"matrices":[[1,1,0,1]]})");
  EXPECT_EQ(GroupSpec::from_json(flat), unipotent_spec());
  EXPECT_EQ(GroupSpec::from_json(sanov_spec().to_json()), sanov_spec());
  EXPECT_THROW(GroupSpec::from_json(nlohmann::json::parse(R"({"d":2,"n":1,"matrices":[[[1,1],[1,1]]]})")), InputError);
  EXPECT_THROW(GroupSpec::from_json(nlohmann::json::parse(R"({"d":2,"n":2,"matrices":[[[1,1],[0,1]]]})")), InputError);
  EXPECT_THROW(GroupSpec::from_json(nlohmann::json::parse(R"({"d":2,"n":1,"matrices":[[1,1,0]]})")), InputError);
  EXPECT_THROW(GroupSpec::from_json(nlohmann::json::parse(R"({"n":1})")), InputError);
  EXPECT_THROW(GroupSpec::from_json(nlohmann::json::parse(R"([1])")), InputError);
}

TEST(Words, ParseAndFormat) {
  const auto spec = unipotent_spec();
  auto w = parse_group_word("f e1 F E1", spec);
  ASSERT_EQ(w.size(), 4u);
  EXPECT_EQ(format_group_word(w), "f1 e1 F1 E1");
  EXPECT_EQ(parse_group_word("fe1FE1", spec), w);
  EXPECT_THROW(parse_group_word("e", spec), InputError);
  EXPECT_THROW(parse_group_word("e3", spec), InputError);
  EXPECT_THROW(parse_group_word("g1", spec), InputError);
  EXPECT_TRUE(parse_group_word("1", spec).empty());
  for (std::size_t k = 0; k < num_generators(sanov_spec()); ++k) {
    EXPECT_EQ(gen_id(gen_at(k, sanov_spec()), sanov_spec()), k);
    EXPECT_EQ(gen_id(inverse(gen_at(k, sanov_spec())), sanov_spec()), k ^ 1);
  }
}

TEST(Encoding, Examples) {
  const auto spec = unipotent_spec();
  const auto al = element_alphabet(spec);
  EXPECT_EQ(fsa::format_word(al, encode(identity(spec), spec)), "_,0,0");
  EXPECT_EQ(fsa::format_word(al, encode(GElement{{1}, vec({1, 0})}, spec)), "f1,1,0 _,0,_");
  EXPECT_THROW(decode(fsa::parse_word(al, "f1,0,0 F1,_,_"), spec), ValidityError);
  EXPECT_THROW(decode(fsa::parse_word(al, "_,0,0 _,0,_"), spec), ValidityError);
  const auto b = ball(spec, 6);
  std::set<fsa::ConvWord> seen;
  for (const auto& g : b) {
    auto w = encode(g, spec);
    ASSERT_EQ(decode(w, spec), g);
    ASSERT_TRUE(seen.insert(w).second);
  }
}

TEST(Structure, UnipotentExamples) {
  const auto& s = unipotent();
  const auto& spec = s.spec;
  auto pair_in = [&](const fsa::FactoredRelation& r, const GElement& x, const GElement& y) {
    const std::vector<std::vector<fsa::TrackWord>> t{encode_tracks(x), encode_tracks(y)};
    return r.accepts(t);
  };
  const auto e1 = gen_id({true, 1}, spec), f = gen_id({false, 1}, spec);
  // (f,(1,0)) e1 = (f, (2,0)); (f,(1,1)) is reached with e2 instead.
  EXPECT_TRUE(pair_in(s.right[e1], GElement{{1}, vec({1, 0})}, GElement{{1}, vec({2, 0})}));
  EXPECT_FALSE(pair_in(s.right[e1], GElement{{1}, vec({1, 0})}, GElement{{1}, vec({1, 1})}));
  EXPECT_TRUE(pair_in(s.right[gen_id({true, 2}, spec)], GElement{{1}, vec({1, 0})}, GElement{{1}, vec({1, 1})}));
  EXPECT_TRUE(pair_in(s.right[f], GElement{{}, vec({1, 0})}, GElement{{1}, vec({1, 1})}));
  EXPECT_TRUE(s.has_monolithic());
}

TEST(WordProblem, MatchesOracle) {
  const auto& s = unipotent();
  const auto& spec = s.spec;
  EXPECT_EQ(word_problem(s, {}), encode(identity(spec), spec));
  auto w = parse_group_word("f e1 F E1", spec);
  EXPECT_EQ(word_problem(s, w), encode(evaluate(w, spec), spec));
  for (std::size_t k = 0; k < num_generators(spec); ++k) {
    EXPECT_TRUE(is_identity(s, {gen_at(k, spec), inverse(gen_at(k, spec))}));
  }
  EXPECT_TRUE(is_identity(s, parse_group_word("e1 e2 E1 E2", spec)));
  EXPECT_TRUE(equal(s, parse_group_word("F e1 f", spec), parse_group_word("e1 e2", spec)));
  EXPECT_FALSE(equal(s, parse_group_word("f e1 F", spec), parse_group_word("e1 e2", spec)));
  std::mt19937_64 rng(4);
  for (int it = 0; it < 300; ++it) {
    auto word = random_group_word(rng, spec, 1 + it % 50);
    const auto expect = encode(evaluate(word, spec), spec);
    ASSERT_EQ(word_problem(s, word), expect);
    if (it % 10 == 0) ASSERT_EQ(word_problem_monolithic(s, word), expect);
  }
}

TEST(WordProblem, SerialAndParallelAgree) {
  const auto& s = unipotent();
  std::mt19937_64 rng(2);
  std::vector<GroupWord> words;
  for (int i = 0; i < 40; ++i) words.push_back(random_group_word(rng, s.spec, 30));
  EXPECT_EQ(serial_word_problems(s, words), para_word_problems(s, words));
}

TEST(Verify, UnipotentRadius3) {
  VerifyOptions opt;
  opt.random_words = 2000;
  auto report = verify_structure(unipotent(), 3, opt);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(report.passed());
}

TEST(Verify, SanovRadius2) {
  auto s = build_structure(sanov_spec());
  VerifyOptions opt;
  opt.random_words = 2000;
  opt.axioms = false;
  auto report = verify_structure(s, 2, opt);
  for (const auto& c : report.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  auto b = ball(s.spec, 2);
  EXPECT_EQ(serial_ball_check(s, b), para_ball_check(s, b));
}

TEST(Verify, FaultInjectionIsCaught) {
  CayleyStructure s = build_structure(unipotent_spec(), {.check = false, .materialize = Materialize::kNever});
  // Drop one transition from the affine factor of E_f1.
  auto& factor = s.right[0].mutable_factors()[1].relation;
  fsa::Fsa broken = factor.fsa();
  broken.remove_edge(broken.initial()[0], 0);
  broken.finalize();
  factor = fsa::RegularRelation(factor.widths(), broken);
  VerifyOptions opt;
  opt.random_words = 200;
  opt.axioms = false;
  auto report = verify_structure(s, 2, opt);
  EXPECT_FALSE(report.passed());
  const auto checks = exact_checks(s);
  EXPECT_TRUE(std::any_of(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

TEST(Structure, CorruptSpecRejected) {
  EXPECT_THROW(GroupSpec(2, 1, {IntMatrix::from_rows({{1, 2}, {2, 4}})}), InputError);
}

TEST(Structure, ExportImportRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / ("cayley_structure_test_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  export_structure(unipotent(), dir.string());
  auto back = import_structure(dir.string());
  EXPECT_EQ(back.spec, unipotent().spec);
  ASSERT_EQ(back.right.size(), unipotent().right.size());
  for (std::size_t k = 0; k < back.right.size(); ++k) {
    ASSERT_EQ(back.right[k].factors().size(), unipotent().right[k].factors().size());
    for (std::size_t i = 0; i < back.right[k].factors().size(); ++i) {
      EXPECT_EQ(back.right[k].factors()[i].relation, unipotent().right[k].factors()[i].relation);
    }
  }
  auto w = parse_group_word("f f e2 F e1", back.spec);
  EXPECT_EQ(word_problem(back, w), encode(evaluate(w, back.spec), back.spec));
  EXPECT_FALSE(export_dot(back, dir.string()).empty());
  std::filesystem::remove(dir / "manifest.json");
  EXPECT_THROW(import_structure(dir.string()), InputError);
  std::filesystem::remove_all(dir);
}
