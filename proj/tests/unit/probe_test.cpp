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

#include "cayley/error.hpp"
#include "cayley/fsa/conv.hpp"
#include "cayley/np/probe.hpp"

using namespace cayley;
using namespace cayley::np;
using sd::GElement;

namespace {

const sd::CayleyStructure& structure(bool sanov) {
  static const sd::CayleyStructure u = sd::build_structure(sd::unipotent_spec());
  static const sd::CayleyStructure s = sd::build_structure(sd::sanov_spec());
  return sanov ? s : u;
}

// Pair encoding over the unipotent spec's alphabet.
fsa::ConvWord pair_of(const GElement& g, const GElement& h) {
  static const auto one = sd::element_alphabet(sd::unipotent_spec());
  static const auto two = one.concat(one);
  auto t = sd::encode_tracks(g);
  auto u = sd::encode_tracks(h);
  t.insert(t.end(), u.begin(), u.end());
  return fsa::convolve(two, t);
}

void expect_witnesses_verify(const ClassifiedSample& sample, const NerodeBound& nb) {
  for (std::size_t i = 0; i < nb.witnesses.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.witnesses.size(); ++j) {
      EXPECT_TRUE(find_distinguisher(sample, nb.witnesses[i], nb.witnesses[j]).has_value());
    }
  }
}

}  // namespace

TEST(Sample, RadiusZero) {
  const auto spec = sd::unipotent_spec();
  const sd::Gen e1{true, 1};
  auto sample = generate_left_sample(spec, e1, 0);
  ASSERT_EQ(sample.positives.size(), 1u);
  EXPECT_EQ(*sample.positives.begin(), pair_of(sd::identity(spec), sd::element(e1, spec)));
  // The only other pair inside the ball is (1, 1).
  ASSERT_EQ(sample.negatives.size(), 1u);
  EXPECT_EQ(*sample.negatives.begin(), pair_of(sd::identity(spec), sd::identity(spec)));
  EXPECT_EQ(sample.relation, "L_e1");
}

TEST(Sample, LeftTranslationExample) {
  const auto spec = sd::unipotent_spec();
  const sd::Gen e1{true, 1};
  auto sample = generate_left_sample(spec, e1, 3);
  // (1, e1)(f, 0) = (f, e1 M) = (f, (1,1)).
  const GElement f{{1}, {0, 0}};
  EXPECT_TRUE(sample.positives.count(pair_of(f, GElement{{1}, {1, 1}})));
  EXPECT_FALSE(sample.negatives.count(pair_of(f, GElement{{1}, {1, 1}})));
  EXPECT_TRUE(sample.negatives.count(pair_of(f, GElement{{1}, {1, 0}})));
  const auto ball = sd::ball(spec, 3);
  const std::set<GElement> in_ball(ball.begin(), ball.end());
  EXPECT_EQ(sample.positives.size(), ball.size());
  EXPECT_LE(sample.negatives.size(), 10 * sample.positives.size());
  const auto one = sd::element_alphabet(spec);
  auto split = [&](const fsa::ConvWord& w) {
    auto tracks = fsa::deconvolve(sample.alphabet, w);
    const std::size_t k = one.tracks();
    return std::pair{sd::decode_tracks(std::span(tracks).first(k), spec), sd::decode_tracks(std::span(tracks).subspan(k), spec)};
  };
  for (const auto& w : sample.positives) {
    auto [g, h] = split(w);
    EXPECT_EQ(h, sd::multiply(sd::element(e1, spec), g, spec));
  }
  for (const auto& w : sample.negatives) {
    auto [g, h] = split(w);
    EXPECT_TRUE(in_ball.count(g) && in_ball.count(h));
    EXPECT_NE(h, sd::multiply(sd::element(e1, spec), g, spec));
  }
}

TEST(Nerode, Trivial) {
  ClassifiedSample one;
  one.positives.insert(fsa::ConvWord{1, 2, 3});
  EXPECT_EQ(serial_nerode_lower_bound(one).bound, 1u);
  ClassifiedSample empty;
  EXPECT_THROW(serial_nerode_lower_bound(empty), InputError);
  // {ε} against {a}: the empty prefix and "a" are distinguished by ε.
  ClassifiedSample two;
  two.positives.insert(fsa::ConvWord{});
  two.negatives.insert(fsa::ConvWord{5});
  EXPECT_EQ(serial_nerode_lower_bound(two).bound, 2u);
}

TEST(Nerode, IdentityRelationSound) {
  const auto& s = structure(false);
  const auto& spec = s.spec;
  const auto exact = fsa::minimal_complete_size(fsa::diagonal(*s.mono_domain).fsa());
  const auto ball = sd::ball(spec, 4);
  ClassifiedSample sample;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    sample.positives.insert(pair_of(ball[i], ball[i]));
    for (std::size_t k = 1; k <= 5; ++k) sample.negatives.insert(pair_of(ball[i], ball[(i * 13 + k * 7) % ball.size()]));
  }
  for (const auto& w : sample.positives) sample.negatives.erase(w);
  auto nb = serial_nerode_lower_bound(sample);
  EXPECT_GE(nb.bound, 2u);
  EXPECT_LE(nb.bound, exact);
  expect_witnesses_verify(sample, nb);
}

TEST(Nerode, SoundOnConstructedRelations) {
  for (bool sanov : {false, true}) {
    const auto& s = structure(sanov);
    for (std::size_t k = 0; k < sd::num_generators(s.spec); ++k) {
      const auto g = sd::gen_at(k, s.spec);
      const auto right_exact = fsa::minimal_complete_size(s.mono_right[k].fsa());
      for (std::size_t r : {1u, 2u, 3u}) {
        auto sample = generate_sample(s.spec, g, Side::kRight, r);
        auto nb = serial_nerode_lower_bound(sample);
        EXPECT_LE(nb.bound, right_exact) << sample.relation << " r=" << r;
        expect_witnesses_verify(sample, nb);
        if (!g.translation) {
          auto left = generate_sample(s.spec, g, Side::kLeft, r);
          EXPECT_LE(serial_nerode_lower_bound(left).bound, fsa::minimal_complete_size(s.mono_left[k].fsa()));
        }
      }
    }
  }
}

TEST(Nerode, FactorRestrictedSample) {
  const auto& s = structure(true);
  const std::size_t f1 = sd::gen_id({false, 1}, s.spec);
  for (const auto& factor : s.right[f1].factors()) {
    SampleOptions opt;
    opt.tracks = factor.tracks[0];
    auto sample = generate_sample(s.spec, {false, 1}, Side::kRight, 3, opt);
    EXPECT_EQ(sample.alphabet, factor.relation.alphabet());
    for (const auto& w : sample.positives) EXPECT_TRUE(fsa::accepts(factor.relation.fsa(), w));
    for (const auto& w : sample.negatives) EXPECT_FALSE(fsa::accepts(factor.relation.fsa(), w));
    EXPECT_LE(serial_nerode_lower_bound(sample).bound, fsa::minimal_complete_size(factor.relation.fsa()));
  }
}

TEST(Nerode, SamplesLabelledByRecognizer) {
  const auto& s = structure(false);
  for (std::size_t k = 0; k < sd::num_generators(s.spec); ++k) {
    auto sample = generate_sample(s.spec, sd::gen_at(k, s.spec), Side::kRight, 3);
    for (const auto& w : sample.positives) ASSERT_TRUE(fsa::accepts(s.mono_right[k].fsa(), w));
    for (const auto& w : sample.negatives) ASSERT_FALSE(fsa::accepts(s.mono_right[k].fsa(), w));
  }
}

TEST(Nerode, SerialAndParallelAgree) {
  const auto& s = structure(true);
  auto sample = generate_left_sample(s.spec, {true, 2}, 3);
  auto a = serial_nerode_lower_bound(sample);
  auto b = para_nerode_lower_bound(sample);
  EXPECT_EQ(a.bound, b.bound);
  EXPECT_EQ(a.witnesses, b.witnesses);
}

TEST(Probe, ReportShapeAndMonotonicity) {
  const auto& s = structure(false);
  auto rep = probe_report(s, {true, 1}, {1, 2, 3, 4});
  ASSERT_EQ(rep.series.size(), 3u);
  EXPECT_EQ(rep.series[0].relation, "L_e1");
  EXPECT_FALSE(rep.series[0].minimal_size);
  for (const auto& series : rep.series) {
    ASSERT_EQ(series.rows.size(), 4u);
    for (std::size_t i = 1; i < series.rows.size(); ++i) {
      EXPECT_GE(series.rows[i].bound, series.rows[i - 1].bound) << series.relation;
      EXPECT_GE(series.rows[i].positives, series.rows[i - 1].positives);
    }
    if (series.control) {
      ASSERT_TRUE(series.minimal_size);
      for (const auto& r : series.rows) EXPECT_LE(r.bound, *series.minimal_size);
    }
  }
  const auto tsv = rep.tsv();
  EXPECT_EQ(tsv.rfind(std::string("# ") + kProbeFraming, 0), 0u);
  EXPECT_EQ(rep.to_json()["framing"], kProbeFraming);
  EXPECT_THROW(probe_report(s, {true, 1}, {3, 1}), InputError);
}
