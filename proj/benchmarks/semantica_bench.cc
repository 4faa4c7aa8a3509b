// Copyright 2026 The Semantica Emulator Authors
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

#include <map>
#include <utility>

#include <benchmark/benchmark.h>

#include "semantica/expansion.h"
#include "semantica/graphs.h"
#include "semantica/oracle.h"
#include "semantica/query.h"
#include "semantica/tree.h"
#include "semantica/workload.h"

namespace semantica {
namespace {

// Synthetic workloads are cached per size; generation is not measured.
const Workload& SyntheticUsers(std::size_t n) {
  static std::map<std::size_t, Workload> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    SynthParams params;
    params.n_users = n;
    params.seed = 1;
    it = cache.emplace(n, SynthesizeWorkload(params).workload).first;
  }
  return it->second;
}

void BM_BuildTree(benchmark::State& state) {
  const Workload& w = SyntheticUsers(state.range(0));
  const double delta = state.range(1) / 1e4;
  for (auto _ : state) {
    Tree tree = BuildTree(w, {50, delta, 7});
    benchmark::DoNotOptimize(tree.node_count());
  }
  state.SetItemsProcessed(state.iterations() * w.size());
}
BENCHMARK(BM_BuildTree)
    ->ArgsProduct({{500, 2000, 8000}, {0, 10, 50}})
    ->Unit(benchmark::kMillisecond);

void BM_ExpansionRound(benchmark::State& state) {
  const Workload& w = SyntheticUsers(state.range(0));
  const Tree tree = BuildTree(w, {50, 1e-3, 7});
  const PeerViews initial = InitViews(tree, w, {50, 50, 0, 7});
  const CosineIndex cosine = BuildUserCosineIndex(w);
  int round = 0;
  for (auto _ : state) {
    state.PauseTiming();
    PeerViews views = initial;
    state.ResumeTiming();
    benchmark::DoNotOptimize(ExpansionRound(views, cosine, 50, 7, ++round));
  }
  state.SetItemsProcessed(state.iterations() * w.size());
}
BENCHMARK(BM_ExpansionRound)->Arg(500)->Arg(2000)->Arg(8000)->Unit(
    benchmark::kMillisecond);

void BM_GroundTruth(benchmark::State& state) {
  const Workload& w = SyntheticUsers(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeGroundTruth(w, 50));
  }
}
BENCHMARK(BM_GroundTruth)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_ChainHop(benchmark::State& state) {
  const Workload& w = SyntheticUsers(2000);
  const Tree tree = BuildTree(w, {50, 3e-3, 7});
  const OverlayGraph graph =
      GraphFromViews(InitViews(tree, w, {50, 50, 0, 7}), EdgeSource::kKnownUsers);
  const CosineIndex cosine = BuildUserCosineIndex(w);
  const std::vector<QueryTask> tasks = TestSetQueries(w, state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ChainHop(tasks[i], graph, w, cosine));
    i = (i + 1) % tasks.size();
  }
}
BENCHMARK(BM_ChainHop)->Arg(2)->Arg(10);

void BM_BarabasiAlbert(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(BarabasiAlbert(state.range(0), 25, 3));
  }
}
BENCHMARK(BM_BarabasiAlbert)->Arg(1000)->Arg(10000)->Unit(
    benchmark::kMillisecond);

void BM_Diffusion(benchmark::State& state) {
  const Workload& w = SyntheticUsers(2000);
  const OverlayGraph graph = BarabasiAlbert(w.size(), 25, 3);
  const double alpha = state.range(0) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DiffuseEmbeddings(graph, w, alpha));
  }
}
BENCHMARK(BM_Diffusion)->Arg(1)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace semantica

BENCHMARK_MAIN();
