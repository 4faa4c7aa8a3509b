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

#include "semantica/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "semantica/errors.h"
#include "semantica/rng.h"

#ifndef SEMANTICA_VERSION
#define SEMANTICA_VERSION "0.0.0"
#endif

namespace semantica {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kTreeStream = 0x71;
constexpr std::uint64_t kExpansionStream = 0x72;
constexpr std::uint64_t kBaselineStream = 0x73;
constexpr std::uint64_t kBaStream = 0x74;
constexpr std::uint64_t kRandomQueryStream = 0x75;
constexpr std::uint64_t kScalingStream = 0x76;

std::string EdgeSourceName(EdgeSource s) {
  return s == EdgeSource::kKnownUsers ? "known" : "closest";
}

EdgeSource ParseEdgeSource(const std::string& s) {
  if (s == "known") return EdgeSource::kKnownUsers;
  if (s == "closest") return EdgeSource::kClosestUsers;
  throw DomainError("neighbor_list must be 'known' or 'closest', got '" + s +
                    "'");
}

json ToJson(const ExperimentConfig& c) {
  return json{
      {"workload_dir", c.workload_dir},
      {"access_log", c.access_log},
      {"doc_embeddings", c.doc_embeddings},
      {"query_embeddings", c.query_embeddings},
      {"dataset",
       {{"min_docs", c.dataset.min_docs}, {"test_size", c.dataset.test_size}}},
      {"synth",
       {{"n_users", c.synth.n_users},
        {"n_clusters", c.synth.n_clusters},
        {"docs_per_user", c.synth.docs_per_user},
        {"dim", c.synth.dim},
        {"noise_scale", c.synth.noise_scale},
        {"co_occurrence_rate", c.synth.co_occurrence_rate},
        {"test_size", c.synth.test_size},
        {"pool_size", c.synth.pool_size}}},
      {"leaf_capacity", c.leaf_capacity},
      {"deltas", c.deltas},
      {"baseline_delta", c.baseline_delta},
      {"query_delta", c.query_delta},
      {"distance_delta", c.distance_delta},
      {"scaling_delta", c.scaling_delta},
      {"n_cc", c.n_cc},
      {"n_cu", c.n_cu},
      {"r_max", c.r_max},
      {"max_hops", c.max_hops},
      {"neighbor_list", EdgeSourceName(c.neighbor_list)},
      {"ba_m", c.ba_m},
      {"alphas", c.alphas},
      {"diffusion_iterations", c.diffusion_iterations},
      {"diffusion_tol", c.diffusion_tol},
      {"seeds", c.seeds},
      {"scaling_sizes", c.scaling_sizes},
      {"adversarial_sizes", c.adversarial_sizes},
      {"truth_cache_dir", c.truth_cache_dir},
  };
}

template <typename T>
void Take(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void CheckKeys(const json& j, const json& reference, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!reference.contains(key)) {
      throw DomainError("unknown config key '" + where + key + "'");
    }
  }
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string FormatShort(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError(path.string(), 0, "cannot write file");
  return out;
}

GroundTruth TruthFor(const Workload& workload, const ExperimentConfig& config) {
  return CachedGroundTruth(workload, 50, config.truth_cache_dir);
}

std::size_t ResolveBaM(const ExperimentConfig& config, double mean_degree,
                       std::size_t n) {
  if (config.ba_m != 0) return config.ba_m;
  return DegreeMatchedM(mean_degree, n);
}

double Millis(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

void WriteManifest(const std::filesystem::path& out_dir,
                   std::string_view experiment, const ExperimentConfig& config,
                   const json& timings) {
  json manifest = {{"experiment", experiment},
                   {"version", Version()},
                   {"config", ToJson(config)},
                   {"timings_ms", timings}};
  auto out = OpenOut(out_dir / "run.json");
  out << manifest.dump(2) << '\n';
}

void RequireSeeds(const ExperimentConfig& config) {
  if (config.seeds.empty()) throw DomainError("config lists no seeds");
}

}  // namespace

std::string_view Version() { return SEMANTICA_VERSION; }

std::string ConfigToJson(const ExperimentConfig& config) {
  return ToJson(config).dump(2);
}

ExperimentConfig ConfigFromJson(std::string_view text) {
  ExperimentConfig c;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IngestionError("config", 0, e.what());
  }
  const json reference = ToJson(c);
  CheckKeys(j, reference, "");
  try {
    Take(j, "workload_dir", c.workload_dir);
    Take(j, "access_log", c.access_log);
    Take(j, "doc_embeddings", c.doc_embeddings);
    Take(j, "query_embeddings", c.query_embeddings);
    if (j.contains("dataset")) {
      const json& d = j.at("dataset");
      CheckKeys(d, reference.at("dataset"), "dataset.");
      Take(d, "min_docs", c.dataset.min_docs);
      Take(d, "test_size", c.dataset.test_size);
    }
    if (j.contains("synth")) {
      const json& s = j.at("synth");
      CheckKeys(s, reference.at("synth"), "synth.");
      Take(s, "n_users", c.synth.n_users);
      Take(s, "n_clusters", c.synth.n_clusters);
      Take(s, "docs_per_user", c.synth.docs_per_user);
      Take(s, "dim", c.synth.dim);
      Take(s, "noise_scale", c.synth.noise_scale);
      Take(s, "co_occurrence_rate", c.synth.co_occurrence_rate);
      Take(s, "test_size", c.synth.test_size);
      Take(s, "pool_size", c.synth.pool_size);
    }
    Take(j, "leaf_capacity", c.leaf_capacity);
    Take(j, "deltas", c.deltas);
    Take(j, "baseline_delta", c.baseline_delta);
    Take(j, "query_delta", c.query_delta);
    Take(j, "distance_delta", c.distance_delta);
    Take(j, "scaling_delta", c.scaling_delta);
    Take(j, "n_cc", c.n_cc);
    Take(j, "n_cu", c.n_cu);
    Take(j, "r_max", c.r_max);
    Take(j, "max_hops", c.max_hops);
    if (j.contains("neighbor_list")) {
      c.neighbor_list = ParseEdgeSource(j.at("neighbor_list").get<std::string>());
    }
    Take(j, "ba_m", c.ba_m);
    Take(j, "alphas", c.alphas);
    Take(j, "diffusion_iterations", c.diffusion_iterations);
    Take(j, "diffusion_tol", c.diffusion_tol);
    Take(j, "seeds", c.seeds);
    Take(j, "scaling_sizes", c.scaling_sizes);
    Take(j, "adversarial_sizes", c.adversarial_sizes);
    Take(j, "truth_cache_dir", c.truth_cache_dir);
  } catch (const json::exception& e) {
    throw IngestionError("config", 0, e.what());
  }
  return c;
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError(path.string(), 0, "cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return ConfigFromJson(text.str());
}

Workload LoadExperimentWorkload(const ExperimentConfig& config,
                                std::uint64_t seed) {
  if (!config.workload_dir.empty()) return LoadWorkload(config.workload_dir);
  if (!config.access_log.empty()) {
    if (config.doc_embeddings.empty()) {
      throw DomainError("an access log needs doc_embeddings");
    }
    const auto events = LoadAccessLog(config.access_log);
    const Corpus docs = LoadEmbeddingFile(config.doc_embeddings);
    Corpus queries;
    if (!config.query_embeddings.empty()) {
      queries = LoadEmbeddingFile(config.query_embeddings);
    }
    DatasetOptions options = config.dataset;
    options.seed = seed;
    return BuildDatasetWorkload(
        events, docs, config.query_embeddings.empty() ? nullptr : &queries,
        options);
  }
  SynthParams params = config.synth;
  params.seed = seed;
  return SynthesizeWorkload(params).workload;
}

TreeParams TreeParamsFor(const ExperimentConfig& config, double delta,
                         std::uint64_t seed) {
  TreeParams p;
  p.leaf_capacity = config.leaf_capacity;
  p.delta = delta;
  p.seed = DeriveSeed(seed, kTreeStream);
  return p;
}

ExpansionParams ExpansionParamsFor(const ExperimentConfig& config,
                                   std::uint64_t seed) {
  ExpansionParams p;
  p.n_cc = config.n_cc;
  p.n_cu = config.n_cu;
  p.r_max = config.r_max;
  p.seed = DeriveSeed(seed, kExpansionStream);
  return p;
}

OverlayRun BuildOverlay(const Workload& workload,
                        const ExperimentConfig& config, double delta,
                        std::uint64_t seed, const GroundTruth* truth) {
  OverlayRun run{BuildTree(workload, TreeParamsFor(config, delta, seed)), {},
                 {}};
  const ExpansionParams params = ExpansionParamsFor(config, seed);
  run.views = InitViews(run.tree, workload, params);
  run.trace = RunExpansion(run.views, workload, params, truth);
  return run;
}

Experiment1Result RunExperiment1(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed, const GroundTruth& truth) {
  Experiment1Result result;
  result.seed = seed;
  std::vector<std::size_t> budget;
  for (double delta : config.deltas) {
    OverlayRun run = BuildOverlay(workload, config, delta, seed, &truth);
    result.runs.push_back({delta, ComputeTreeStats(run.tree), run.trace});
  }
  // The budget is the per-user known set at round 0 of the baseline delta.
  {
    const Tree tree =
        BuildTree(workload, TreeParamsFor(config, config.baseline_delta, seed));
    const PeerViews init =
        InitViews(tree, workload, ExpansionParamsFor(config, seed));
    for (const PeerView& v : init) budget.push_back(v.known_users.size());
  }
  ExpansionParams params = ExpansionParamsFor(config, seed);
  PeerViews random = RandomViews(workload, budget, config.n_cu,
                                 DeriveSeed(seed, kBaselineStream));
  result.random_baseline = RunExpansion(random, workload, params, &truth);
  return result;
}

std::vector<double> RetrievalCurve(std::span<const QueryOutcome> outcomes,
                                   std::size_t max_hops) {
  std::vector<double> curve(max_hops + 1, 0.0);
  if (outcomes.empty()) return curve;
  std::vector<std::size_t> found_at(max_hops + 1, 0);
  for (const QueryOutcome& o : outcomes) {
    if (o.found && o.hops_used <= max_hops) ++found_at[o.hops_used];
  }
  std::size_t cumulative = 0;
  for (std::size_t b = 0; b <= max_hops; ++b) {
    cumulative += found_at[b];
    curve[b] =
        static_cast<double>(cumulative) / static_cast<double>(outcomes.size());
  }
  return curve;
}

std::string DiffusionEngineName(double alpha) {
  return "diffusion-" + FormatShort(alpha);
}

const EngineResult& Experiment2Result::engine(std::string_view name) const {
  for (const EngineResult& e : engines) {
    if (e.engine == name) return e;
  }
  throw DomainError("no engine named '" + std::string(name) + "'");
}

Experiment2Result RunExperiment2(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed) {
  Experiment2Result result;
  result.seed = seed;
  result.cooccurrence_ceiling = CooccurrenceCeiling(workload);

  const OverlayRun overlay =
      BuildOverlay(workload, config, config.query_delta, seed, nullptr);
  const OverlayGraph semantica =
      GraphFromViews(overlay.views, config.neighbor_list);
  result.semantica_mean_degree = semantica.MeanOutDegree();
  result.ba_m =
      ResolveBaM(config, result.semantica_mean_degree, workload.size());
  const OverlayGraph ba =
      BarabasiAlbert(workload.size(), result.ba_m, DeriveSeed(seed, kBaStream));

  const std::vector<QueryTask> tasks =
      TestSetQueries(workload, config.max_hops);
  const CosineIndex native = BuildUserCosineIndex(workload);
  auto run_engine = [&](std::string name, auto&& engine) {
    EngineResult e;
    e.engine = std::move(name);
    e.outcomes.reserve(tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      e.outcomes.push_back(engine(tasks[i], i));
    }
    e.retrieval_by_budget = RetrievalCurve(e.outcomes, config.max_hops);
    result.engines.push_back(std::move(e));
  };
  run_engine("semantica", [&](const QueryTask& t, std::size_t) {
    return ChainHop(t, semantica, workload, native);
  });
  run_engine("ba", [&](const QueryTask& t, std::size_t) {
    return ChainHop(t, ba, workload, native);
  });
  run_engine("random", [&](const QueryTask& t, std::size_t i) {
    return RandomPeerQuery(t, workload,
                           DeriveSeed(seed, kRandomQueryStream, i));
  });
  for (double alpha : config.alphas) {
    const DiffusionState state =
        DiffuseEmbeddings(ba, workload, alpha, config.diffusion_iterations,
                          config.diffusion_tol);
    run_engine(DiffusionEngineName(alpha),
               [&](const QueryTask& t, std::size_t) {
                 return DiffusionQuery(t, ba, state, workload);
               });
  }
  return result;
}

Experiment3Result RunExperiment3(const Workload& workload,
                                 const ExperimentConfig& config,
                                 std::uint64_t seed) {
  Experiment3Result result;
  result.seed = seed;
  const OverlayRun overlay =
      BuildOverlay(workload, config, config.distance_delta, seed, nullptr);
  const OverlayGraph semantica =
      GraphFromViews(overlay.views, EdgeSource::kKnownUsers);
  result.ba_m = ResolveBaM(config, semantica.MeanOutDegree(), workload.size());
  const OverlayGraph ba =
      BarabasiAlbert(workload.size(), result.ba_m, DeriveSeed(seed, kBaStream));
  const std::vector<HopSample> samples = HeldTestSamples(workload);
  result.semantica = BuildHopHistogram(semantica, workload, samples);
  result.ba = BuildHopHistogram(ba, workload, samples);
  return result;
}

Tree BuildAdversarialTree(std::size_t n, std::size_t leaf_capacity,
                          std::uint64_t seed) {
  const std::size_t core = leaf_capacity;
  if (n < core || n - core > 300) {
    throw DomainError("adversarial size must lie in [M, M + 300]");
  }
  TreeParams params;
  params.leaf_capacity = leaf_capacity;
  params.seed = seed;
  Tree tree(2, params);
  char id[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(id, sizeof id, "a%05zu", i);
    const double x =
        i < core ? 0.0 : std::pow(3.0, -static_cast<double>(i - core + 1));
    tree.InsertUser(id, Embedding{x, 1.0});
  }
  return tree;
}

ScalingResult RunScalingCheck(const ExperimentConfig& config,
                              std::uint64_t seed) {
  ScalingResult result;
  for (std::size_t n : config.scaling_sizes) {
    SynthParams params = config.synth;
    params.n_users = n;
    params.seed = DeriveSeed(seed, kScalingStream, n);
    const Workload workload = SynthesizeWorkload(params).workload;
    const OverlayRun overlay =
        BuildOverlay(workload, config, config.scaling_delta, seed, nullptr);
    ScalingRow row;
    row.n = n;
    row.height = ComputeTreeStats(overlay.tree).height;
    row.comparisons = overlay.tree.insertion_comparisons();
    row.comparisons_per_user =
        static_cast<double>(row.comparisons) / static_cast<double>(n);
    for (const PeerView& v : overlay.views) {
      if (v.closest_users.empty()) ++row.isolated_users;
    }
    row.messages_exact = true;
    double total = 0.0;
    for (std::size_t r = 1; r < overlay.trace.size(); ++r) {
      total += static_cast<double>(overlay.trace[r].messages);
      if (overlay.trace[r].messages != n - row.isolated_users) {
        row.messages_exact = false;
      }
    }
    const std::size_t rounds = overlay.trace.size() - 1;
    row.messages_per_round =
        rounds == 0 ? 0.0 : total / static_cast<double>(rounds);
    result.rows.push_back(row);
  }
  const std::size_t k = result.rows.size();
  if (k >= 2) {
    double mx = 0.0, my = 0.0;
    for (const ScalingRow& r : result.rows) {
      mx += std::log(static_cast<double>(r.n));
      my += r.comparisons_per_user;
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const ScalingRow& r : result.rows) {
      const double dx = std::log(static_cast<double>(r.n)) - mx;
      const double dy = r.comparisons_per_user - my;
      sxx += dx * dx;
      sxy += dx * dy;
      syy += dy * dy;
    }
    result.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    result.intercept = my - result.slope * mx;
    result.r_squared = (sxx > 0.0 && syy > 0.0) ? sxy * sxy / (sxx * syy) : 0.0;
    const auto [lo, hi] = std::minmax_element(
        result.rows.begin(), result.rows.end(),
        [](const ScalingRow& a, const ScalingRow& b) { return a.n < b.n; });
    result.growth_ratio = lo->comparisons_per_user > 0.0
                              ? hi->comparisons_per_user / lo->comparisons_per_user
                              : 0.0;
  }
  for (std::size_t n : config.adversarial_sizes) {
    const Tree tree = BuildAdversarialTree(n, config.leaf_capacity,
                                           DeriveSeed(seed, kScalingStream));
    AdversarialRow row;
    row.n = n;
    row.height = ComputeTreeStats(tree).height;
    row.comparisons_per_user = static_cast<double>(tree.insertion_comparisons()) /
                               static_cast<double>(n);
    row.balanced_bound =
        2.0 * std::log2(static_cast<double>(n) /
                        static_cast<double>(config.leaf_capacity)) +
        2.0;
    result.adversarial.push_back(row);
  }
  return result;
}

void RunExperiment1Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir) {
  RequireSeeds(config);
  std::filesystem::create_directories(out_dir);
  auto recall = OpenOut(out_dir / "recall.csv");
  auto clones = OpenOut(out_dir / "clones.csv");
  auto leaves = OpenOut(out_dir / "leaf_sizes.csv");
  recall << "seed,series,delta,round,mean_recall,mean_known_users,"
            "accepted_introductions,messages\n";
  clones << "seed,delta,mean,std,median\n";
  leaves << "seed,delta,leaf_size,leaves\n";
  auto write_trace = [&](std::uint64_t seed, std::string_view series,
                         double delta, std::span<const RoundMetrics> trace) {
    for (const RoundMetrics& m : trace) {
      recall << seed << ',' << series << ',' << FormatShort(delta) << ','
             << m.round << ',' << FormatDouble(m.mean_recall) << ','
             << FormatDouble(m.mean_known_users) << ','
             << m.accepted_introductions << ',' << m.messages << '\n';
    }
  };
  json timings = json::object();
  for (std::uint64_t seed : config.seeds) {
    const auto start = Clock::now();
    const Workload workload = LoadExperimentWorkload(config, seed);
    const GroundTruth truth = TruthFor(workload, config);
    const Experiment1Result r = RunExperiment1(workload, config, seed, truth);
    for (const DeltaRun& run : r.runs) {
      write_trace(seed, "semantica", run.delta, run.trace);
      clones << seed << ',' << FormatShort(run.delta) << ','
             << FormatDouble(run.tree.clones.mean) << ','
             << FormatDouble(run.tree.clones.std) << ','
             << FormatDouble(run.tree.clones.median) << '\n';
      for (const auto& [size, count] : run.tree.leaf_size_histogram) {
        leaves << seed << ',' << FormatShort(run.delta) << ',' << size << ','
               << count << '\n';
      }
    }
    write_trace(seed, "random", config.baseline_delta, r.random_baseline);
    timings[std::to_string(seed)] = Millis(start);
  }
  WriteManifest(out_dir, "exp1", config, timings);
}

void RunExperiment2Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir) {
  RequireSeeds(config);
  std::filesystem::create_directories(out_dir);
  auto retrieval = OpenOut(out_dir / "retrieval.csv");
  auto graphs = OpenOut(out_dir / "graphs.csv");
  retrieval << "seed,engine,budget,retrieval_rate\n";
  graphs << "seed,neighbor_list,semantica_mean_degree,ba_m,"
            "cooccurrence_ceiling\n";
  json timings = json::object();
  for (std::uint64_t seed : config.seeds) {
    const auto start = Clock::now();
    const Workload workload = LoadExperimentWorkload(config, seed);
    const Experiment2Result r = RunExperiment2(workload, config, seed);
    graphs << seed << ',' << EdgeSourceName(config.neighbor_list) << ','
           << FormatDouble(r.semantica_mean_degree) << ',' << r.ba_m << ','
           << FormatDouble(r.cooccurrence_ceiling) << '\n';
    std::vector<QueryRecord> records;
    const std::vector<QueryTask> tasks =
        TestSetQueries(workload, config.max_hops);
    for (const EngineResult& e : r.engines) {
      for (std::size_t b = 0; b < e.retrieval_by_budget.size(); ++b) {
        retrieval << seed << ',' << e.engine << ',' << b << ','
                  << FormatDouble(e.retrieval_by_budget[b]) << '\n';
      }
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        records.push_back(
            {e.engine, tasks[i].origin, tasks[i].target_doc, e.outcomes[i]});
      }
    }
    auto queries =
        OpenOut(out_dir / ("queries-seed" + std::to_string(seed) + ".csv"));
    WriteQueryCsv(queries, records, workload);
    timings[std::to_string(seed)] = Millis(start);
  }
  WriteManifest(out_dir, "exp2", config, timings);
}

void RunExperiment3Suite(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir) {
  RequireSeeds(config);
  std::filesystem::create_directories(out_dir);
  auto hops = OpenOut(out_dir / "min_hops.csv");
  hops << "seed,graph,ba_m,distance,count,fraction\n";
  auto write = [&](std::uint64_t seed, std::string_view graph, std::size_t m,
                   const HopHistogram& h) {
    for (const auto& [distance, count] : h.by_distance) {
      hops << seed << ',' << graph << ',' << m << ',' << distance << ','
           << count << ',' << FormatDouble(h.Fraction(distance)) << '\n';
    }
    hops << seed << ',' << graph << ',' << m << ",unreachable,"
         << h.unreachable << ',' << FormatDouble(h.UnreachableFraction())
         << '\n';
  };
  json timings = json::object();
  for (std::uint64_t seed : config.seeds) {
    const auto start = Clock::now();
    const Workload workload = LoadExperimentWorkload(config, seed);
    const Experiment3Result r = RunExperiment3(workload, config, seed);
    write(seed, "semantica", r.ba_m, r.semantica);
    write(seed, "ba", r.ba_m, r.ba);
    timings[std::to_string(seed)] = Millis(start);
  }
  WriteManifest(out_dir, "exp3", config, timings);
}

void RunScalingSuite(const ExperimentConfig& config,
                     const std::filesystem::path& out_dir) {
  RequireSeeds(config);
  std::filesystem::create_directories(out_dir);
  auto table = OpenOut(out_dir / "scaling.csv");
  auto fit = OpenOut(out_dir / "fit.csv");
  auto adversarial = OpenOut(out_dir / "adversarial.csv");
  table << "seed,n,height,comparisons,comparisons_per_user,"
           "messages_per_round,isolated_users,messages_exact\n";
  fit << "seed,slope,intercept,r_squared,growth_ratio\n";
  adversarial << "seed,n,height,comparisons_per_user,balanced_bound\n";
  json timings = json::object();
  for (std::uint64_t seed : config.seeds) {
    const auto start = Clock::now();
    const ScalingResult r = RunScalingCheck(config, seed);
    for (const ScalingRow& row : r.rows) {
      table << seed << ',' << row.n << ',' << row.height << ','
            << row.comparisons << ',' << FormatDouble(row.comparisons_per_user)
            << ',' << FormatDouble(row.messages_per_round) << ','
            << row.isolated_users << ',' << (row.messages_exact ? 1 : 0)
            << '\n';
    }
    fit << seed << ',' << FormatDouble(r.slope) << ','
        << FormatDouble(r.intercept) << ',' << FormatDouble(r.r_squared) << ','
        << FormatDouble(r.growth_ratio) << '\n';
    for (const AdversarialRow& row : r.adversarial) {
      adversarial << seed << ',' << row.n << ',' << row.height << ','
                  << FormatDouble(row.comparisons_per_user) << ','
                  << FormatDouble(row.balanced_bound) << '\n';
    }
    timings[std::to_string(seed)] = Millis(start);
  }
  WriteManifest(out_dir, "scaling", config, timings);
}

}  // namespace semantica
