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

// Serial reference against OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "cayley/np/probe.hpp"
#include "cayley/sd/structure.hpp"
#include "cayley/ud/pipeline.hpp"

using namespace cayley;

namespace {

const sd::CayleyStructure& sanov() {
  static const sd::CayleyStructure s = sd::build_structure(sd::sanov_spec());
  return s;
}

std::vector<sd::GroupWord> words(std::size_t count, std::size_t length) {
  std::mt19937_64 rng(1);
  std::vector<sd::GroupWord> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(sd::random_group_word(rng, sanov().spec, length));
  return out;
}

void BM_SerialWordProblems(benchmark::State& state) {
  const auto ws = words(64, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sd::serial_word_problems(sanov(), ws));
}

void BM_ParaWordProblems(benchmark::State& state) {
  const auto ws = words(64, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sd::para_word_problems(sanov(), ws));
}

void BM_SerialBallCheck(benchmark::State& state) {
  const auto b = sd::ball(sanov().spec, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sd::serial_ball_check(sanov(), b));
}

void BM_ParaBallCheck(benchmark::State& state) {
  const auto b = sd::ball(sanov().spec, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sd::para_ball_check(sanov(), b));
}

void BM_SerialNerode(benchmark::State& state) {
  const auto sample = np::generate_left_sample(sanov().spec, {true, 1}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(np::serial_nerode_lower_bound(sample));
}

void BM_ParaNerode(benchmark::State& state) {
  const auto sample = np::generate_left_sample(sanov().spec, {true, 1}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(np::para_nerode_lower_bound(sample));
}

const ud::MembershipIndex& membership() {
  static const ud::MembershipIndex index(ud::mikhailova_generators(ud::z2_presentation()), 12);
  return index;
}

void BM_SerialMembership(benchmark::State& state) {
  const ud::Pair x{{}, ud::parse_ab("aabAAB")};
  for (auto _ : state) benchmark::DoNotOptimize(membership().serial_find(x));
}

void BM_ParaMembership(benchmark::State& state) {
  const ud::Pair x{{}, ud::parse_ab("aabAAB")};
  for (auto _ : state) benchmark::DoNotOptimize(membership().para_find(x));
}

}  // namespace

BENCHMARK(BM_SerialWordProblems)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParaWordProblems)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialBallCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParaBallCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialNerode)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParaNerode)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SerialMembership)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParaMembership)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
