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

// semantica: command-line front end for the overlay emulator.
//
//   semantica synth --seed 1 --out wl/
//   semantica build-tree --workload wl/ --delta 1e-3 --seed 1 --out tree.json
//   semantica expand --workload wl/ --tree tree.json --seed 1 --out views.json
//   semantica query --workload wl/ --views views.json --engine semantica
//   semantica exp1 --seed 1 --seed 2 --out results/exp1

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semantica/errors.h"
#include "semantica/expansion.h"
#include "semantica/experiments.h"
#include "semantica/graphs.h"
#include "semantica/oracle.h"
#include "semantica/query.h"
#include "semantica/rng.h"
#include "semantica/tree.h"
#include "semantica/workload.h"

namespace {

using namespace semantica;

std::ofstream OpenOrDie(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError(path, 0, "cannot write file");
  return out;
}

void AddSynthFlags(CLI::App* cmd, SynthParams& p) {
  cmd->add_option("--users", p.n_users, "Number of users");
  cmd->add_option("--clusters", p.n_clusters, "Number of topic clusters");
  cmd->add_option("--docs-per-user", p.docs_per_user, "Documents per user");
  cmd->add_option("--dim", p.dim, "Embedding dimension");
  cmd->add_option("--noise", p.noise_scale, "Offset norm for users and docs");
  cmd->add_option("--co-occurrence", p.co_occurrence_rate,
                  "Fraction of documents drawn from the cluster pool");
  cmd->add_option("--test-size", p.test_size, "Held-out documents per user");
  cmd->add_option("--pool", p.pool_size, "Shared documents per cluster");
}

// Experiment subcommands share one flag set layered over an optional config.
struct ExperimentFlags {
  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::string out;
  std::string workload_dir;
  std::string access_log;
  std::string doc_embeddings;
  std::string query_embeddings;
  std::optional<std::size_t> users;
  std::optional<std::size_t> capacity;
  std::optional<std::size_t> n_cc;
  std::optional<std::size_t> n_cu;
  std::optional<int> rounds;
  std::optional<std::size_t> max_hops;
  std::optional<std::string> neighbors;
  std::optional<std::size_t> ba_m;
  std::vector<double> deltas;
  std::optional<double> delta;
  std::vector<double> alphas;
  std::vector<std::size_t> sizes;
  std::string truth_cache;

  ExperimentConfig Resolve() const {
    ExperimentConfig c =
        config_path.empty() ? ExperimentConfig{} : LoadConfig(config_path);
    c.seeds = seeds;
    if (!workload_dir.empty()) c.workload_dir = workload_dir;
    if (!access_log.empty()) c.access_log = access_log;
    if (!doc_embeddings.empty()) c.doc_embeddings = doc_embeddings;
    if (!query_embeddings.empty()) c.query_embeddings = query_embeddings;
    if (users) c.synth.n_users = *users;
    if (capacity) c.leaf_capacity = *capacity;
    if (n_cc) c.n_cc = *n_cc;
    if (n_cu) c.n_cu = *n_cu;
    if (rounds) c.r_max = *rounds;
    if (max_hops) c.max_hops = *max_hops;
    if (neighbors) {
      c.neighbor_list = *neighbors == "closest" ? EdgeSource::kClosestUsers
                                                : EdgeSource::kKnownUsers;
    }
    if (ba_m) c.ba_m = *ba_m;
    if (!deltas.empty()) c.deltas = deltas;
    if (delta) {
      c.query_delta = *delta;
      c.distance_delta = *delta;
      c.scaling_delta = *delta;
    }
    if (!alphas.empty()) c.alphas = alphas;
    if (!sizes.empty()) c.scaling_sizes = sizes;
    if (!truth_cache.empty()) c.truth_cache_dir = truth_cache;
    return c;
  }
};

void AddExperimentFlags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment config")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seeds, "Run seed; repeat for several")
      ->required();
  cmd->add_option("--out", f.out, "Output directory")->required();
  cmd->add_option("--workload", f.workload_dir, "Saved workload directory");
  cmd->add_option("--log", f.access_log, "Access log TSV");
  cmd->add_option("--docs", f.doc_embeddings, "Document embedding file");
  cmd->add_option("--queries", f.query_embeddings, "Query embedding file");
  cmd->add_option("--users", f.users, "Synthetic user count");
  cmd->add_option("--capacity", f.capacity, "Leaf capacity M");
  cmd->add_option("--n-cc", f.n_cc, "Contacts gathered per clone");
  cmd->add_option("--n-cu", f.n_cu, "Closest-users list size");
  cmd->add_option("--rounds", f.rounds, "Expansion rounds");
  cmd->add_option("--max-hops", f.max_hops, "Query hop budget");
  cmd->add_option("--neighbors", f.neighbors, "Forwarding list")
      ->check(CLI::IsMember({"known", "closest"}));
  cmd->add_option("--ba-m", f.ba_m, "Fixed BA attachment count (0 = match)");
  cmd->add_option("--deltas", f.deltas, "Cloning thresholds for exp1");
  cmd->add_option("--delta", f.delta, "Cloning threshold for exp2/exp3/scaling");
  cmd->add_option("--alphas", f.alphas, "Diffusion teleport chances");
  cmd->add_option("--sizes", f.sizes, "Scaling sweep sizes");
  cmd->add_option("--truth-cache", f.truth_cache, "Ground-truth cache dir");
}

void PrintTreeStats(const Tree& tree) {
  const TreeStats s = ComputeTreeStats(tree);
  std::printf("users=%zu leaves=%zu height=%u comparisons=%llu splits=%llu\n",
              tree.user_count(), s.leaf_count, s.height,
              static_cast<unsigned long long>(tree.insertion_comparisons()),
              static_cast<unsigned long long>(tree.splits()));
  std::printf("clones/user: mean=%.4f std=%.4f median=%.1f\n", s.clones.mean,
              s.clones.std, s.clones.median);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic overlay network emulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(semantica::Version()));

  // ingest
  std::string log_path, docs_path, queries_path, out_path;
  DatasetOptions dataset;
  auto* ingest = app.add_subcommand("ingest", "Build a workload from a log");
  ingest->add_option("--log", log_path, "Access log TSV")->required();
  ingest->add_option("--docs", docs_path, "Document embeddings")->required();
  ingest->add_option("--queries", queries_path, "Query embeddings");
  ingest->add_option("--min-docs", dataset.min_docs, "Minimum unique docs");
  ingest->add_option("--test-size", dataset.test_size, "Held-out docs");
  ingest->add_option("--seed", dataset.seed, "Split seed")->required();
  ingest->add_option("--out", out_path, "Workload directory")->required();

  // synth
  SynthParams synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic workload");
  AddSynthFlags(synth_cmd, synth);
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->required();
  synth_cmd->add_option("--out", out_path, "Workload directory")->required();

  // build-tree
  std::string workload_dir, tree_path, views_path, metrics_path, truth_cache;
  TreeParams tree_params;
  auto* build = app.add_subcommand("build-tree", "Insert all users");
  build->add_option("--workload", workload_dir, "Workload dir")->required();
  build->add_option("--capacity", tree_params.leaf_capacity, "Leaf capacity");
  build->add_option("--delta", tree_params.delta, "Cloning threshold");
  build->add_option("--seed", tree_params.seed, "Tree seed")->required();
  build->add_option("--out", tree_path, "Tree JSON")->required();

  // expand
  ExpansionParams expansion;
  auto* expand = app.add_subcommand("expand", "Init views and run rounds");
  expand->add_option("--workload", workload_dir, "Workload dir")->required();
  expand->add_option("--tree", tree_path, "Tree JSON")->required();
  expand->add_option("--n-cc", expansion.n_cc, "Contacts per clone");
  expand->add_option("--n-cu", expansion.n_cu, "Closest-users size");
  expand->add_option("--rounds", expansion.r_max, "Expansion rounds");
  expand->add_option("--seed", expansion.seed, "Expansion seed")->required();
  expand->add_option("--metrics", metrics_path, "Per-round CSV");
  expand->add_option("--truth-cache", truth_cache, "Ground-truth cache dir");
  expand->add_option("--out", views_path, "Views JSON")->required();

  // query
  std::string engine = "semantica", neighbors = "known";
  std::size_t max_hops = 10, ba_m = 0;
  double alpha = 1.0;
  std::uint64_t query_seed = 0;
  auto* query = app.add_subcommand("query", "Run every test-set query");
  query->add_option("--workload", workload_dir, "Workload dir")->required();
  query->add_option("--views", views_path, "Views JSON");
  query->add_option("--engine", engine, "Engine")
      ->check(CLI::IsMember({"semantica", "ba", "random", "diffusion"}));
  query->add_option("--neighbors", neighbors, "Forwarding list")
      ->check(CLI::IsMember({"known", "closest"}));
  query->add_option("--max-hops", max_hops, "Hop budget");
  query->add_option("--alpha", alpha, "Diffusion teleport chance");
  query->add_option("--ba-m", ba_m, "BA attachment count (0 = match views)");
  query->add_option("--seed", query_seed, "Seed for random engines");
  query->add_option("--out", out_path, "Per-query CSV (default stdout)");

  // experiments
  ExperimentFlags exp1_flags, exp2_flags, exp3_flags, scaling_flags;
  auto* exp1 = app.add_subcommand("exp1", "Closest-user recall per round");
  AddExperimentFlags(exp1, exp1_flags);
  auto* exp2 = app.add_subcommand("exp2", "Retrieval rate per engine");
  AddExperimentFlags(exp2, exp2_flags);
  auto* exp3 = app.add_subcommand("exp3", "Minimum hop distance histograms");
  AddExperimentFlags(exp3, exp3_flags);
  auto* scaling = app.add_subcommand("scaling", "Insertion and message cost");
  AddExperimentFlags(scaling, scaling_flags);

  // oracle
  std::size_t k = 50;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive top-k neighbors");
  oracle->add_option("--workload", workload_dir, "Workload dir")->required();
  oracle->add_option("--k", k, "List length");
  oracle->add_option("--out", out_path, "Ground-truth file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const auto events = LoadAccessLog(log_path);
      const Corpus docs = LoadEmbeddingFile(docs_path);
      std::optional<Corpus> queries;
      if (!queries_path.empty()) queries = LoadEmbeddingFile(queries_path);
      DatasetReport report;
      const Workload w = BuildDatasetWorkload(
          events, docs, queries ? &*queries : nullptr, dataset, &report);
      SaveWorkload(w, out_path);
      std::printf(
          "events=%zu deduped=%zu missing_embedding=%zu users=%zu kept=%zu\n",
          report.events_read, report.events_after_dedupe,
          report.events_missing_embedding, report.users_before_filter,
          report.users_after_filter);
    } else if (*synth_cmd) {
      const Workload w = SynthesizeWorkload(synth).workload;
      SaveWorkload(w, out_path);
      std::printf("users=%zu docs=%zu dim=%zu\n", w.size(), w.corpus().size(),
                  w.dim());
    } else if (*build) {
      const Workload w = LoadWorkload(workload_dir);
      const Tree tree = BuildTree(w, tree_params);
      tree.Save(tree_path);
      PrintTreeStats(tree);
    } else if (*expand) {
      const Workload w = LoadWorkload(workload_dir);
      const Tree tree = Tree::Load(tree_path);
      PeerViews views = InitViews(tree, w, expansion);
      const GroundTruth truth = CachedGroundTruth(w, 50, truth_cache);
      const auto trace = RunExpansion(views, w, expansion, &truth);
      SaveViews(views, w, views_path);
      if (!metrics_path.empty()) {
        auto out = OpenOrDie(metrics_path);
        WriteRoundMetricsCsv(out, trace);
      } else {
        WriteRoundMetricsCsv(std::cout, trace);
      }
    } else if (*query) {
      const Workload w = LoadWorkload(workload_dir);
      const bool needs_views = engine != "random" &&
                               !(engine != "semantica" && ba_m != 0);
      if (needs_views && views_path.empty()) {
        throw DomainError("--views is required for engine '" + engine + "'");
      }
      OverlayGraph graph;
      if (needs_views) {
        graph = GraphFromViews(LoadViews(w, views_path),
                               neighbors == "closest"
                                   ? EdgeSource::kClosestUsers
                                   : EdgeSource::kKnownUsers);
      }
      if (engine == "ba" || engine == "diffusion") {
        const std::size_t m =
            ba_m != 0 ? ba_m : DegreeMatchedM(graph.MeanOutDegree(), w.size());
        graph = BarabasiAlbert(w.size(), m, query_seed);
      }
      const auto tasks = TestSetQueries(w, max_hops);
      const CosineIndex native = BuildUserCosineIndex(w);
      std::optional<DiffusionState> state;
      if (engine == "diffusion") state = DiffuseEmbeddings(graph, w, alpha);
      std::vector<QueryRecord> records;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        QueryOutcome o;
        if (engine == "random") {
          o = RandomPeerQuery(tasks[i], w, DeriveSeed(query_seed, i));
        } else if (engine == "diffusion") {
          o = DiffusionQuery(tasks[i], graph, *state, w);
        } else {
          o = ChainHop(tasks[i], graph, w, native);
        }
        records.push_back({engine, tasks[i].origin, tasks[i].target_doc, o});
      }
      if (out_path.empty()) {
        WriteQueryCsv(std::cout, records, w);
      } else {
        auto out = OpenOrDie(out_path);
        WriteQueryCsv(out, records, w);
      }
    } else if (*exp1) {
      RunExperiment1Suite(exp1_flags.Resolve(), exp1_flags.out);
    } else if (*exp2) {
      RunExperiment2Suite(exp2_flags.Resolve(), exp2_flags.out);
    } else if (*exp3) {
      RunExperiment3Suite(exp3_flags.Resolve(), exp3_flags.out);
    } else if (*scaling) {
      RunScalingSuite(scaling_flags.Resolve(), scaling_flags.out);
    } else if (*oracle) {
      const Workload w = LoadWorkload(workload_dir);
      SaveGroundTruth(ComputeGroundTruth(w, k), out_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "semantica: %s\n", e.what());
    return 1;
  }
  return 0;
}
