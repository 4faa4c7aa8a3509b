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

// End-to-end experiment drivers. Each run is a pure function of
// (config, seed); the CSV writers emit byte-identical files for equal inputs.
// run.json manifests additionally carry wall-clock timings.

#ifndef SEMANTICA_EXPERIMENTS_H_
#define SEMANTICA_EXPERIMENTS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semantica/expansion.h"
#include "semantica/graphs.h"
#include "semantica/oracle.h"
#include "semantica/query.h"
#include "semantica/tree.h"
#include "semantica/workload.h"

namespace semantica {

std::string_view Version();

struct ExperimentConfig {
  // Workload source. A saved workload directory wins over an access log;
  // with neither, a synthetic workload is generated per seed.
  std::string workload_dir;
  std::string access_log;
  std::string doc_embeddings;
  std::string query_embeddings;
  DatasetOptions dataset;  // seed replaced by the run seed
  SynthParams synth;       // seed replaced by the run seed

  std::size_t leaf_capacity = 50;
  std::vector<double> deltas = {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 5e-3};
  double baseline_delta = 1e-3;  // random-views budget source
  double query_delta = 3e-3;     // retrieval preset
  double distance_delta = 1e-3;  // hop-distance preset
  double scaling_delta = 0.0;

  std::size_t n_cc = 50;
  std::size_t n_cu = 50;
  int r_max = 10;

  std::size_t max_hops = 10;
  EdgeSource neighbor_list = EdgeSource::kKnownUsers;

  std::size_t ba_m = 0;  // 0 selects DegreeMatchedM
  std::vector<double> alphas = {1.0, 0.9, 0.5, 0.1};
  int diffusion_iterations = 50;
  double diffusion_tol = 1e-8;

  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<std::size_t> scaling_sizes = {250, 500, 1000, 2000, 4000};
  std::vector<std::size_t> adversarial_sizes = {100, 150, 200, 250, 300};
  std::string truth_cache_dir;
};

// Missing keys keep their defaults; unknown keys throw DomainError.
std::string ConfigToJson(const ExperimentConfig& config);
ExperimentConfig ConfigFromJson(std::string_view json);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

Workload LoadExperimentWorkload(const ExperimentConfig& config,
                                std::uint64_t seed);

// Sub-seeds shared by all experiments so that equal seeds give equal trees.
TreeParams TreeParamsFor(const ExperimentConfig& config, double delta,
                         std::uint64_t seed);
ExpansionParams ExpansionParamsFor(const ExperimentConfig& config,
                                   std::uint64_t seed);

// Tree, init views and r_max expansion rounds.
struct OverlayRun {
  Tree tree;
  PeerViews views;
  std::vector<RoundMetrics> trace;
};
OverlayRun BuildOverlay(const Workload& workload,
                        const ExperimentConfig& config, double delta,
                        std::uint64_t seed, const GroundTruth* truth);

// Closest-user recall per round.
struct DeltaRun {
  double delta = 0.0;
  TreeStats tree;
  std::vector<RoundMetrics> trace;
};

struct Experiment1Result {
  std::uint64_t seed = 0;
  std::vector<DeltaRun> runs;  // one per config.deltas entry
  // Random known sets sized like the baseline_delta init views, then
  // expanded the same way.
  std::vector<RoundMetrics> random_baseline;
};

Experiment1Result RunExperiment1(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed, const GroundTruth& truth);

// Retrieval rate per engine and hop budget.
struct EngineResult {
  std::string engine;
  std::vector<QueryOutcome> outcomes;  // parallel to TestSetQueries
  // Entry b: fraction of queries found within b hops, b = 0..max_hops.
  std::vector<double> retrieval_by_budget;
};

struct Experiment2Result {
  std::uint64_t seed = 0;
  double semantica_mean_degree = 0.0;
  std::size_t ba_m = 0;
  double cooccurrence_ceiling = 0.0;
  std::vector<EngineResult> engines;  // semantica, ba, random, diffusion-*

  const EngineResult& engine(std::string_view name) const;
};

Experiment2Result RunExperiment2(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed);

std::string DiffusionEngineName(double alpha);

// Fraction of outcomes found within each budget 0..max_hops.
std::vector<double> RetrievalCurve(std::span<const QueryOutcome> outcomes,
                                   std::size_t max_hops);

// Minimum hop distance from each user to its test documents.
struct Experiment3Result {
  std::uint64_t seed = 0;
  std::size_t ba_m = 0;
  HopHistogram semantica;
  HopHistogram ba;
};

Experiment3Result RunExperiment3(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed);

// Insertion and message cost over a sweep of synthetic workload sizes.
struct ScalingRow {
  std::size_t n = 0;
  std::uint32_t height = 0;
  std::uint64_t comparisons = 0;
  double comparisons_per_user = 0.0;
  double messages_per_round = 0.0;
  std::size_t isolated_users = 0;
  bool messages_exact = false;  // every round sent n - isolated messages
};

struct AdversarialRow {
  std::size_t n = 0;
  std::uint32_t height = 0;
  double comparisons_per_user = 0.0;
  double balanced_bound = 0.0;  // 2 log2(n / M) + 2
};

struct ScalingResult {
  std::vector<ScalingRow> rows;
  // OLS of comparisons_per_user against ln n.
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  // comparisons_per_user at the largest n over the smallest.
  double growth_ratio = 0.0;
  std::vector<AdversarialRow> adversarial;
};

ScalingResult RunScalingCheck(const ExperimentConfig& config,
                              std::uint64_t seed);

// `core` identical users at (0, 1) followed by users at (3^-j, 1), j = 1..,
// inserted in that order. Every arrival lands in the core leaf and splits
// off alone, so the height grows by one per outlier. Requires
// n - core <= 300 so that squared offsets stay representable.
Tree BuildAdversarialTree(std::size_t n, std::size_t leaf_capacity,
                          std::uint64_t seed);

// Directory writers. Each creates `out_dir`, writes the CSVs and a run.json
// manifest with the config echo, version and timings.
void RunExperiment1Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir);
void RunExperiment2Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir);
void RunExperiment3Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir);
void RunScalingSuite(const ExperimentConfig& config,
                     const std::filesystem::path& out_dir);

}  // namespace semantica

#endif  // SEMANTICA_EXPERIMENTS_H_
