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

#include <map>

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/zd/codec.hpp"

using namespace cayley;
using namespace cayley::zd;
using fsa::Letter;
using fsa::TrackWord;

namespace {

// value() straight from the two's complement formula, no canonicity check.
long long raw_value(const TrackWord& w) {
  long long v = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) v += static_cast<long long>(w[i]) << i;
  v -= static_cast<long long>(w.back()) << (w.size() - 1);
  return v;
}

ZVector vec(std::initializer_list<long long> xs) {
  ZVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

void expect_affine_agrees(const IntMatrix& m, const ZVector& t, long long r) {
  const auto rel = affine_relation(m, t);
  const std::size_t d = m.dim();
  ZVector v(d);
  std::vector<long long> x(d, -r);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) v[i] = x[i];
    const ZVector w = v * m + t;
    const auto in = enc_vec(v);
    ASSERT_EQ(fsa::restrict_unique(rel, in), enc_vec(w)) << to_string(v);
    std::size_t i = 0;
    while (i < d && x[i] == r) x[i++] = -r;
    if (i == d) break;
    ++x[i];
  }
}

}  // namespace

TEST(IntCodec, Examples) {
  EXPECT_EQ(enc_int_string(0), "0");
  EXPECT_EQ(enc_int_string(-1), "1");
  EXPECT_EQ(enc_int_string(1), "10");
  EXPECT_EQ(enc_int_string(2), "010");
  EXPECT_EQ(enc_int_string(6), "0110");
  EXPECT_EQ(enc_int_string(-2), "01");
  EXPECT_THROW(dec_int_string("00"), ValidityError);
  EXPECT_THROW(dec_int_string("11"), ValidityError);
  EXPECT_THROW(dec_int_string(""), ValidityError);
  EXPECT_THROW(dec_int_string("02"), InputError);
}

TEST(IntCodec, ShortestWordSearch) {
  // Shortest binary word with each value, found by enumerating all words.
  std::map<long long, TrackWord> shortest;
  for (std::size_t len = 1; len <= 9; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      TrackWord w;
      for (std::size_t i = 0; i < len; ++i) w.push_back((bits >> i) & 1);
      shortest.emplace(raw_value(w), w);
    }
  }
  for (long long n = -64; n <= 64; ++n) {
    ASSERT_TRUE(shortest.count(n));
    EXPECT_EQ(enc_int(n), shortest[n]) << n;
    EXPECT_TRUE(is_canonical_int(shortest[n]));
  }
}

TEST(IntCodec, RoundTripAndBigValues) {
  for (long long n = -1024; n <= 1024; ++n) ASSERT_EQ(dec_int(enc_int(n)), n);
  BigInt big = BigInt(1) << 200;
  for (BigInt x : {big, -big, big - 1, -big + 1, BigInt(-big - 1)}) {
    EXPECT_EQ(dec_int(enc_int(x)), x);
    EXPECT_TRUE(is_canonical_int(enc_int(x)));
  }
}

TEST(VecCodec, Examples) {
  auto al = int_alphabet(2);
  EXPECT_EQ(fsa::format_word(al, enc_vec(vec({0, 0}))), "0,0");
  EXPECT_EQ(fsa::format_word(al, enc_vec(vec({1, -1}))), "1,1 0,_");
  EXPECT_EQ(dec_vec(2, enc_vec(vec({5, -7}))), vec({5, -7}));
  EXPECT_THROW(dec_vec(2, fsa::parse_word(al, "0,0 0,0")), ValidityError);
}

TEST(CanonicalLanguage, MatchesEnumeration) {
  const auto lang = canonical_language(1);
  std::size_t accepted_len6 = 0;
  for (const auto& w : fsa::all_words(int_alphabet(1), 10)) {
    bool valid = fsa::is_valid_conv_word(int_alphabet(1), w);
    bool canon = false;
    if (valid) canon = is_canonical_int(fsa::deconvolve(int_alphabet(1), w)[0]);
    ASSERT_EQ(fsa::accepts(lang, w), canon);
    if (canon && w.size() <= 6) ++accepted_len6;
  }
  // Canonical words of length <= 6 are exactly the integers in [-32, 31].
  EXPECT_EQ(accepted_len6, 64u);
  const auto two = canonical_language(2);
  auto al2 = int_alphabet(2);
  EXPECT_TRUE(fsa::accepts(two, fsa::parse_word(al2, "0,0")));
  EXPECT_FALSE(fsa::accepts(two, fsa::parse_word(al2, "0,0 0,0")));
  EXPECT_TRUE(fsa::is_empty(fsa::intersect(two, fsa::complement(two))));
}

TEST(CanonicalLanguage, IndependentRecognizerIsEquivalent) {
  // "Length 1, or the last two digits differ", written by hand: states
  // start, seen-one-digit (ends in 0 / 1, ok), ends in 0 / 1 without change.
  auto al = int_alphabet(1);
  fsa::Fsa a(al);
  const auto start = a.add_state(false);
  const auto z_ok = a.add_state(true), o_ok = a.add_state(true);
  const auto z_bad = a.add_state(false), o_bad = a.add_state(false);
  a.add_initial(start);
  a.add_edge(start, 0, z_ok);
  a.add_edge(start, 1, o_ok);
  for (auto [from, last] : {std::pair{z_ok, 0}, {o_ok, 1}, {z_bad, 0}, {o_bad, 1}}) {
    a.add_edge(from, 0, last == 0 ? z_bad : z_ok);
    a.add_edge(from, 1, last == 1 ? o_bad : o_ok);
  }
  a.finalize();
  EXPECT_TRUE(fsa::equivalent(a, canonical_language(1)));
  EXPECT_EQ(fsa::determinize_minimize(a), canonical_language(1));
}

TEST(Matrix, DeterminantAndInverse) {
  auto m = IntMatrix::from_rows({{1, 1}, {0, 1}});
  EXPECT_EQ(determinant(m), 1);
  EXPECT_EQ(inverse(m), IntMatrix::from_rows({{1, -1}, {0, 1}}));
  auto s = IntMatrix::from_rows({{2, 1, 0}, {1, 1, 0}, {0, 0, -1}});
  EXPECT_EQ(determinant(s), -1);
  EXPECT_EQ(s * inverse(s), IntMatrix::identity(3));
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 1, 2}, {0, 3, 4}, {1, 0, 0}})), -2);
  EXPECT_THROW(inverse(IntMatrix::from_rows({{2, 0}, {0, 1}})), InputError);
  EXPECT_EQ(power(m, 3), IntMatrix::from_rows({{1, 3}, {0, 1}}));
  EXPECT_EQ(power(m, -2), IntMatrix::from_rows({{1, -2}, {0, 1}}));
}

TEST(Affine, IdentityIsDiagonal) {
  auto rel = affine_relation(IntMatrix::identity(2), vec({0, 0}));
  EXPECT_TRUE(fsa::equivalent(rel.fsa(), fsa::diagonal(canonical_language(2)).fsa()));
}

TEST(Affine, UnipotentExample) {
  auto m = IntMatrix::from_rows({{1, 1}, {0, 1}});
  auto rel = affine_relation(m, vec({0, 0}));
  auto al = int_alphabet(2);
  auto accepts_pair = [&](const ZVector& a, const ZVector& b) {
    auto x = fsa::deconvolve(al, enc_vec(a));
    auto y = fsa::deconvolve(al, enc_vec(b));
    std::vector<TrackWord> t{x[0], x[1], y[0], y[1]};
    return rel.accepts(t);
  };
  EXPECT_TRUE(accepts_pair(vec({1, 0}), vec({1, 1})));
  EXPECT_FALSE(accepts_pair(vec({1, 0}), vec({2, 0})));
}

TEST(Affine, AgreesWithArithmetic) {
  const std::vector<IntMatrix> ms{
      IntMatrix::identity(2), IntMatrix::from_rows({{1, 1}, {0, 1}}), IntMatrix::from_rows({{1, 2}, {0, 1}}),
      IntMatrix::from_rows({{1, 0}, {2, 1}}), IntMatrix::from_rows({{2, 1}, {1, 1}}),
      IntMatrix::from_rows({{3, 0}, {-5, 2}})};
  for (const auto& m : ms) {
    for (const auto& t : {vec({0, 0}), vec({1, 0}), vec({-3, 7})}) expect_affine_agrees(m, t, 8);
  }
  expect_affine_agrees(IntMatrix::from_rows({{-1}}), vec({5}), 64);
  expect_affine_agrees(IntMatrix::from_rows({{1, 0, 1}, {0, -1, 0}, {1, 1, 2}}), vec({0, 1, 0}), 4);
}

TEST(Affine, ExactChecks) {
  for (const auto& m : {IntMatrix::from_rows({{1, 1}, {0, 1}}), IntMatrix::from_rows({{1, 0}, {2, 1}}),
                        IntMatrix::from_rows({{2, 0}, {0, 1}})}) {
    auto rel = affine_relation(m, vec({1, 0}));
    EXPECT_TRUE(fsa::is_functional(rel));
    EXPECT_TRUE(fsa::verify_validity(rel));
    EXPECT_TRUE(fsa::is_total_on(rel, canonical_language(2)));
  }
}

TEST(Affine, ConverseIsSubtraction) {
  auto plus = affine_relation(IntMatrix::identity(1), vec({1}));
  auto minus = fsa::converse(plus);
  for (long long n = -64; n <= 64; ++n) {
    EXPECT_EQ(fsa::restrict_unique(minus, enc_vec(vec({n}))), enc_vec(vec({n - 1})));
  }
  EXPECT_TRUE(fsa::equivalent(minus.fsa(), affine_relation(IntMatrix::identity(1), vec({-1})).fsa()));
  auto section = fsa::restrict_first(plus, enc_vec(vec({3})));
  EXPECT_EQ(fsa::unique_member(section), enc_vec(vec({4})));
}

TEST(Affine, CompositionIsMatrixProduct) {
  auto a = IntMatrix::from_rows({{1, 2}, {0, 1}});
  auto b = IntMatrix::from_rows({{1, 0}, {2, 1}});
  auto lhs = fsa::compose(affine_relation(a, vec({0, 0})), affine_relation(b, vec({0, 0})));
  auto rhs = affine_relation(a * b, vec({0, 0}));
  EXPECT_TRUE(fsa::equivalent(lhs.fsa(), rhs.fsa()));
  auto back = fsa::compose(affine_relation(a, vec({0, 0})), affine_relation(inverse(a), vec({0, 0})));
  EXPECT_TRUE(fsa::equivalent(back.fsa(), fsa::diagonal(canonical_language(2)).fsa()));
}

TEST(Affine, FactoredMatchesMonolithic) {
  auto m = IntMatrix::from_rows({{1, 0, 0}, {0, 1, 2}, {0, 0, 1}});
  auto t = vec({1, 0, -1});
  EXPECT_EQ(coupled_blocks(m), (std::vector<std::vector<std::size_t>>{{0}, {1, 2}}));
  auto f = factored_affine(m, t);
  EXPECT_EQ(f.factors().size(), 2u);
  EXPECT_TRUE(fsa::equivalent(f.materialize().fsa(), affine_relation(m, t).fsa()));
  auto dom = factored_canonical(3);
  EXPECT_TRUE(fsa::is_total_on(f, dom));
  EXPECT_TRUE(fsa::stays_within(f, dom));
  EXPECT_TRUE(fsa::is_identity_on(fsa::compose(f, f.converse()), dom));
}
