// Copyright 2026 The ags Authors
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

// ags: attribute-guided neighbor sampling toolkit.
//
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <iostream>

#include "ags/common.hpp"
#include "commands.hpp"
#include "support.hpp"

namespace {

using namespace ags::cli;

constexpr int kUsage = 2;
constexpr int kRuntime = 1;

void add_common(CLI::App* sub, Common& c, bool out_is_json = true) {
  sub->add_option("--out,-o", c.out,
                  out_is_json ? "Output JSON path (stdout when omitted)" : "Output path");
  sub->add_option("--manifest", c.manifest, "Manifest path (default <out>.manifest.json)");
  sub->add_option("--seed", c.seed, "Random seed (falls back to AGS_SEED, then 0)");
  sub->add_option("--workers", c.workers, "Worker threads, 0 = all cores")
      ->capture_default_str();
}

// Every option of the subcommand with its resolved value.
Json resolved_config(const CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config") continue;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? Json(r.front()) : Json(r);
    } else if (opt->get_expected_max() == 0) {
      j[name] = false;  // flag not given
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    } else {
      j[name] = nullptr;
    }
  }
  return j;
}

struct Command {
  CLI::App* app;
  Common* common;
  std::function<Json(Run&)> body;
  bool json_to_out;  // false when --out names a non-JSON artifact
};

int execute(const std::string& name, const Command& cmd) {
  std::uint64_t seed = 0;
  try {
    seed = resolve_seed(cmd.common->seed);
  } catch (const UsageError& e) {
    std::cerr << "ags " << name << ": " << e.what() << "\n";
    return kUsage;
  }
  Run run(name, resolved_config(cmd.app), seed);
  run.set_manifest_path(cmd.common->manifest.empty() ? default_manifest_path(cmd.common->out)
                                                     : cmd.common->manifest);
  int code = 0;
  std::string error;
  try {
    Json result = cmd.body(run);
    if (cmd.json_to_out) {
      write_json(result, cmd.common->out);
      run.output(cmd.common->out);
    } else {
      write_json(result, {});
    }
  } catch (const UsageError& e) {
    std::cerr << "ags " << name << ": " << e.what() << "\n"
              << "Run 'ags " << name << " --help' for usage.\n";
    return kUsage;  // rejected before doing any work, so no manifest
  } catch (const std::exception& e) {
    error = e.what();
    if (error.rfind("ags: ", 0) == 0) error.erase(0, 5);
    std::cerr << "ags " << name << ": " << error << "\n";
    code = kRuntime;
  }
  try {
    run.finish(error);
  } catch (const std::exception& e) {
    std::cerr << "ags " << name << ": manifest not written: " << e.what() << "\n";
    code = kRuntime;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ags: attribute-guided neighbor sampling for attributed graphs"};
  app.set_version_flag("--version", AGS_VERSION);
  app.set_config("--config", "", "key=value config file; flags override it");
  app.require_subcommand(1);

  std::vector<std::pair<std::string, Command>> commands;

  // analyze
  AnalyzeOptions ao;
  Common ac;
  auto* analyze = app.add_subcommand("analyze", "Homophily and graph statistics report");
  analyze->add_option("--graph", ao.graph, "Edge list")->required();
  analyze->add_option("--labels", ao.labels, "One label per line")->required();
  analyze->add_option("--features", ao.features, "Whitespace feature rows");
  analyze->add_flag("--directed", ao.directed, "Treat the edge list as directed");
  analyze->add_option("--pairing", ao.pairing, "Feature-label pairs: edges|random|balanced")
      ->capture_default_str();
  analyze->add_option("--pairs", ao.pairs, "Pair count for random pairing")->capture_default_str();
  analyze->add_flag("--local", ao.local, "Include per-node local homophily");
  add_common(analyze, ac);
  commands.push_back({"analyze", {analyze, &ac, [&](Run& r) { return ags::cli::analyze(ao, ac, r); }, true}});

  // rank
  RankOptions ro;
  Common rc;
  auto* rank = app.add_subcommand("rank", "Precompute a neighbor ranking table (.agsr)");
  rank->add_option("--graph", ro.graph, "Edge list")->required();
  rank->add_option("--features", ro.features, "Feature rows");
  rank->add_option("--labels", ro.labels, "Labels (learned similarity training)");
  rank->add_option("--model", ro.model, "Trained similarity model (.agsm)");
  rank->add_flag("--directed", ro.directed, "Treat the edge list as directed");
  rank->add_option("--mode", ro.mode, "similar|diverse|uniform")->capture_default_str();
  rank->add_option("--sim", ro.sim, "cosine|euclidean|learned")->capture_default_str();
  rank->add_option("--fn", ro.fn, "facility|coverage|feature|graphcut")->capture_default_str();
  rank->add_option("--pmf", ro.pmf, "step|linear|exp|uniform|gain")->capture_default_str();
  rank->add_option("--k1", ro.k1, "Step tier 1 fraction")->capture_default_str();
  rank->add_option("--k2", ro.k2, "Step tier 2 fraction")->capture_default_str();
  rank->add_option("--lambdas", ro.lambdas, "Step tier weights l1,l2,l3")
      ->delimiter(',')
      ->expected(3)
      ->capture_default_str();
  rank->add_option("--decay", ro.decay, "Exponential PMF ratio")->capture_default_str();
  rank->add_option("--floor", ro.floor, "Mass floor for linear/exp/gain")->capture_default_str();
  rank->add_option("--cut-lambda", ro.cut_lambda, "Graph-cut lambda")->capture_default_str();
  rank->add_flag("--partial-sort", ro.partial_sort,
                 "Step PMF: sort only the top two tiers");
  rank->add_option("--siamese-hidden", ro.siamese_hidden, "Learned similarity hidden width")->capture_default_str();
  rank->add_option("--siamese-epochs", ro.siamese_epochs, "Learned similarity epochs")->capture_default_str();
  rank->add_option("--siamese-batch", ro.siamese_batch, "Learned similarity pairs per step")->capture_default_str();
  rank->add_option("--train-frac", ro.train_frac, "Nodes used to train learned similarity")
      ->capture_default_str();
  add_common(rank, rc, false);
  commands.push_back({"rank", {rank, &rc, [&](Run& r) { return ags::cli::rank(ro, rc, r); }, false}});

  // sample {node, walk, disjoint}
  auto* sample = app.add_subcommand("sample", "Draw sampled subgraphs from a ranking table");
  sample->require_subcommand(1);
  SampleOptions so;
  Common sc;
  auto sample_flags = [&](CLI::App* s) {
    s->add_option("--table", so.table, "Ranking table (.agsr)")->required();
    s->add_option("--graph", so.graph, "Edge list (default: the table's neighborhoods)");
    s->add_flag("--directed", so.directed, "Treat the edge list as directed");
    s->add_option("--seeds", so.seeds, "Seed ids, one per line");
    s->add_option("--batch", so.batch, "Random seeds when --seeds is absent")->capture_default_str();
    add_common(s, sc);
  };
  auto* snode = sample->add_subcommand("node", "Layered k-hop node sampling");
  sample_flags(snode);
  snode->add_option("--table2", so.table2, "Second table for dual-channel sampling");
  snode->add_option("--fanouts", so.fanouts, "Per-layer fanouts")->delimiter(',')->capture_default_str();
  snode->add_flag("--replace", so.replace, "Draw with replacement");
  snode->add_flag("--exclude-self", so.exclude_self, "Never draw self-loops");
  auto* swalk = sample->add_subcommand("walk", "Weighted random walks");
  sample_flags(swalk);
  swalk->add_option("--steps", so.steps, "Steps per walk")->capture_default_str();
  auto* sdis = sample->add_subcommand("disjoint", "Edge-disjoint forest sampling");
  sample_flags(sdis);
  sdis->add_option("--k", so.k, "Forests to draw")->capture_default_str();
  sdis->add_option("--K", so.forests, "Forests to extract")->capture_default_str();
  sdis->add_option("--residual-frac", so.residual_frac, "Fraction of residual edges added")->capture_default_str();
  commands.push_back({"sample node", {snode, &sc, [&](Run& r) { return sample_node(so, sc, r); }, true}});
  commands.push_back({"sample walk", {swalk, &sc, [&](Run& r) { return sample_walk(so, sc, r); }, true}});
  commands.push_back({"sample disjoint", {sdis, &sc, [&](Run& r) { return sample_disjoint(so, sc, r); }, true}});

  // synth
  SynthOptions yo;
  Common yc;
  auto* synth = app.add_subcommand("synth", "Generate a graph with controlled homophily");
  synth->add_option("--labels", yo.labels, "Existing labels");
  synth->add_option("--nodes", yo.nodes, "Generate balanced random labels for this many nodes");
  synth->add_option("--classes", yo.classes, "Class count for generated labels");
  synth->add_option("--hn", yo.hn, "Target node homophily");
  synth->add_option("--hn-range", yo.hn_range, "Per-node target range lo,hi")
      ->delimiter(',')
      ->expected(2);
  synth->add_option("--degree", yo.degree, "Mean degree")->capture_default_str();
  synth->add_option("--labels-out", yo.labels_out, "Write the labels used");
  synth->add_option("--features-out", yo.features_out, "Write one-hot-plus-noise features");
  synth->add_option("--feature-dim", yo.feature_dim, "Feature width for --features-out")->capture_default_str();
  synth->add_option("--signal", yo.signal, "One-hot signal strength")->capture_default_str();
  synth->add_option("--noise", yo.noise, "Gaussian noise standard deviation")->capture_default_str();
  add_common(synth, yc, false);
  commands.push_back({"synth", {synth, &yc, [&](Run& r) { return ags::cli::synth(yo, yc, r); }, false}});

  // verify-lemmas
  LemmaOptions lo;
  Common lc;
  auto* lemmas = app.add_subcommand("verify-lemmas", "Exact same-label selection probabilities");
  lemmas->add_option("--graph", lo.graph, "Edge list")->required();
  lemmas->add_option("--features", lo.features, "Feature rows")->required();
  lemmas->add_option("--labels", lo.labels, "One label per line")->required();
  lemmas->add_option("--model", lo.model, "Model for --sim learned");
  lemmas->add_flag("--directed", lo.directed, "Treat the edge list as directed");
  lemmas->add_option("--sim", lo.sim, "cosine|euclidean|learned")->capture_default_str();
  lemmas->add_flag("--per-node", lo.per_node, "Include every node's probabilities");
  add_common(lemmas, lc);
  commands.push_back({"verify-lemmas", {lemmas, &lc, [&](Run& r) { return ags::cli::verify_lemmas(lo, lc, r); }, true}});

  // train-demo
  TrainOptions to;
  Common tc;
  auto* train = app.add_subcommand("train-demo", "Train the sampled GraphSAGE demo");
  train->add_option("--graph", to.graph, "Edge list")->required();
  train->add_option("--features", to.features, "Feature rows")->required();
  train->add_option("--labels", to.labels, "One label per line")->required();
  train->add_option("--table-sim", to.table_sim, "Similarity table (channel 1)");
  train->add_option("--table-div", to.table_div, "Diversity table (channel 2)");
  train->add_flag("--directed", to.directed, "Treat the edge list as directed");
  train->add_option("--channels", to.channels, "1 or 2 sampling channels")->capture_default_str();
  train->add_option("--combiner", to.combiner, "concat|skip")->capture_default_str();
  train->add_option("--epochs", to.epochs, "Maximum epochs")->capture_default_str();
  train->add_option("--hidden", to.hidden, "Hidden width")->capture_default_str();
  train->add_option("--fanouts", to.fanouts, "Per-hop fanouts")->delimiter(',')->capture_default_str();
  train->add_option("--batch", to.batch, "Seeds per minibatch")->capture_default_str();
  train->add_option("--lr", to.lr, "Adam learning rate")->capture_default_str();
  train->add_option("--window", to.window, "Convergence window (epochs)")->capture_default_str();
  train->add_option("--threshold", to.threshold, "Convergence stddev threshold")->capture_default_str();
  train->add_option("--mc-samples", to.mc_samples, "Sampled neighborhoods averaged at inference")->capture_default_str();
  train->add_option("--train-frac", to.train_frac, "Training node fraction")->capture_default_str();
  train->add_option("--val-frac", to.val_frac, "Validation node fraction")->capture_default_str();
  add_common(train, tc);
  commands.push_back({"train-demo", {train, &tc, [&](Run& r) { return train_demo(to, tc, r); }, true}});

  // bench
  BenchOptions bo;
  Common bc;
  auto* bench = app.add_subcommand("bench", "Time the precompute and sampling stages");
  bench->add_option("--graph", bo.graph, "Edge list (synthetic when omitted)");
  bench->add_option("--features", bo.features, "Feature rows (synthetic when omitted)");
  bench->add_option("--labels", bo.labels, "Labels (synthetic when omitted)");
  bench->add_flag("--directed", bo.directed, "Treat the edge list as directed");
  bench->add_option("--nodes", bo.nodes, "Synthetic node count")->capture_default_str();
  bench->add_option("--classes", bo.classes, "Synthetic class count")->capture_default_str();
  bench->add_option("--feature-dim", bo.feature_dim, "Synthetic feature width")->capture_default_str();
  bench->add_option("--degree", bo.degree, "Synthetic average degree")->capture_default_str();
  bench->add_option("--sizes", bo.sizes, "Synthetic sizes for the scaling fit")->delimiter(',');
  bench->add_option("--worker-counts", bo.worker_counts, "Worker counts to time")->delimiter(',')->capture_default_str();
  bench->add_option("--repeats", bo.repeats, "Timed repetitions per measurement")->capture_default_str();
  bench->add_option("--sample-batch", bo.sample_batch, "Seeds per sampling batch")->capture_default_str();
  add_common(bench, bc);
  commands.push_back({"bench", {bench, &bc, [&](Run& r) { return ags::cli::bench(bo, bc, r); }, true}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  for (auto& [name, cmd] : commands) {
    if (cmd.app->parsed()) return execute(name, cmd);
  }
  return kUsage;
}
