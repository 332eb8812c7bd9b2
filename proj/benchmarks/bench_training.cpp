// Copyright 2026 The qcwalk Authors.
//
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
#include <benchmark/benchmark.h>

#include "qcw/classical_walks.hpp"
#include "qcw/clustering.hpp"
#include "qcw/skipgram.hpp"

namespace {

const qcw::WalkCorpus& corpus() {
  static const qcw::WalkCorpus c = [] {
    qcw::ClusteredErSpec spec;
    spec.seed = 1;
    return qcw::generate_corpus(qcw::generate_clustered_er(spec).graph, qcw::SecondOrderParams{});
  }();
  return c;
}

void BM_SgnsTrain(benchmark::State& state) {
  qcw::SkipGramParams params;
  params.dimension = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcw::train(corpus(), params).input.data().data());
}
BENCHMARK(BM_SgnsTrain)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SgnsKernel(benchmark::State& state) {
  const std::vector<double> u(32, 0.01), c(32, -0.02), n(32, 0.03);
  const std::vector<std::span<const double>> negs(5, n);
  for (auto _ : state) benchmark::DoNotOptimize(qcw::sgns_loss_and_grad(u, c, negs).loss);
}
BENCHMARK(BM_SgnsKernel);

void BM_KMeansBestOf(benchmark::State& state) {
  qcw::SkipGramParams params;
  const auto points = qcw::to_points(qcw::train(corpus(), params).input);
  for (auto _ : state) benchmark::DoNotOptimize(qcw::kmeans_best_of(points, 4, 50, 3).inertia);
}
BENCHMARK(BM_KMeansBestOf)->Unit(benchmark::kMillisecond);

void BM_Ari(benchmark::State& state) {
  std::vector<int> a(100), b(100);
  for (int i = 0; i < 100; ++i) {
    a[i] = i % 4;
    b[i] = (i * 7) % 4;
  }
  for (auto _ : state) benchmark::DoNotOptimize(qcw::ari(a, b));
}
BENCHMARK(BM_Ari);

}  // namespace
