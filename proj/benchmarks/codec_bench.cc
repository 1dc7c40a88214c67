// Copyright 2026 The gvc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "gvc/codec.h"
#include "gvc/corpus.h"
#include "gvc/dct.h"
#include "gvc/entropy.h"
#include "gvc/generative_decoder.h"
#include "gvc/token_encoder.h"

namespace {

void BM_EntropyEncode(benchmark::State& state) {
  std::mt19937 rng(1);
  std::geometric_distribution<std::uint32_t> geo(0.4);
  std::vector<std::uint32_t> symbols(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> counts(65, 0);
  for (auto& s : symbols) {
    s = std::min<std::uint32_t>(geo(rng), 64);
    ++counts[s];
  }
  const auto model = gvc::SymbolModel::from_counts(counts);
  for (auto _ : state) benchmark::DoNotOptimize(gvc::entropy_encode(symbols, model));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EntropyEncode)->Arg(1 << 10)->Arg(1 << 16);

void BM_EntropyDecode(benchmark::State& state) {
  std::mt19937 rng(2);
  std::geometric_distribution<std::uint32_t> geo(0.4);
  std::vector<std::uint32_t> symbols(static_cast<std::size_t>(state.range(0)));
  std::vector<std::uint64_t> counts(65, 0);
  for (auto& s : symbols) {
    s = std::min<std::uint32_t>(geo(rng), 64);
    ++counts[s];
  }
  const auto model = gvc::SymbolModel::from_counts(counts);
  const auto chunk = gvc::entropy_encode(symbols, model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gvc::entropy_decode(chunk, model, symbols.size()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EntropyDecode)->Arg(1 << 10)->Arg(1 << 16);

void BM_Dct8x8(benchmark::State& state) {
  gvc::Block8x8 block;
  for (std::size_t i = 0; i < block.size(); ++i) block[i] = static_cast<double>(i * 37 % 255);
  for (auto _ : state) benchmark::DoNotOptimize(gvc::dct2d_forward(block));
}
BENCHMARK(BM_Dct8x8);

gvc::Gop bench_gop() {
  const auto video =
      gvc::generate_synthetic({"bench", "bouncing-blocks", 1, 640, 360, 29, {30, 1}});
  return gvc::segment_gops(video, 29).gops.front();
}

void BM_EncodeGop(benchmark::State& state) {
  const gvc::Gop gop = bench_gop();
  const gvc::OperatingPoint op;
  for (auto _ : state) benchmark::DoNotOptimize(gvc::encode_gop(gop, op));
}
BENCHMARK(BM_EncodeGop)->Unit(benchmark::kMillisecond);

// Decode time as a function of refinement iterations.
void BM_DecodeGop(benchmark::State& state) {
  const gvc::Gop gop = bench_gop();
  gvc::OperatingPoint op;
  op.refine_iters = static_cast<std::uint32_t>(state.range(0));
  const auto tokens = gvc::encode_gop(gop, op);
  for (auto _ : state) benchmark::DoNotOptimize(gvc::decode_gop(tokens, gop.geometry));
}
BENCHMARK(BM_DecodeGop)->Arg(0)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
