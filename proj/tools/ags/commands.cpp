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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include "ags/disjoint.hpp"
#include "ags/io.hpp"
#include "ags/lemmas.hpp"
#include "ags/metrics.hpp"
#include "ags/pmf.hpp"
#include "ags/rank_table.hpp"
#include "ags/ranking.hpp"
#include "ags/rng.hpp"
#include "ags/sage.hpp"
#include "ags/sampling.hpp"
#include "ags/similarity.hpp"
#include "ags/submodular.hpp"
#include "ags/synth.hpp"

namespace ags::cli {
namespace {

void require(const Path& p, const char* flag) {
  if (p.empty()) throw UsageError(std::string(flag) + " is required");
}

Graph load_graph(const Path& p, bool directed, Run& run) {
  require(p, "--graph");
  run.input(p);
  return io::load_edge_list(p, directed);
}

FeatureMatrix load_features(const Path& p, Run& run) {
  require(p, "--features");
  run.input(p);
  return io::load_features(p);
}

LabelVector load_labels(const Path& p, Run& run) {
  require(p, "--labels");
  run.input(p);
  return io::load_labels(p);
}

RankTable load_table(const Path& p, Run& run) {
  run.input(p);
  return load_rank_table(p);
}

// The neighborhood graph a table was built over. Symmetric tables come back
// as undirected graphs.
Graph graph_for_table(const RankTable& rt) {
  Graph adj = rt.adjacency();
  std::vector<std::uint64_t> offs(adj.offsets().begin(), adj.offsets().end());
  std::vector<NodeId> tgt(adj.targets().begin(), adj.targets().end());
  try {
    return Graph::from_csr(std::move(offs), std::move(tgt), {}, false);
  } catch (const Error&) {
    return adj;
  }
}

Graph sampling_graph(const SampleOptions& o, const RankTable& rt, Run& run) {
  if (o.graph.empty()) return graph_for_table(rt);
  return load_graph(o.graph, o.directed, run);
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(); }

std::shared_ptr<const similarity::SiameseModel> load_model_opt(const Path& p, Run& run) {
  if (p.empty()) return nullptr;
  run.input(p);
  return std::make_shared<const similarity::SiameseModel>(similarity::load_model(p));
}

similarity::SimilarityFn similarity_for(const std::string& name,
                                        std::shared_ptr<const similarity::SiameseModel> m) {
  const auto kind = similarity::parse_sim_kind(name);
  if (kind == similarity::SimKind::learned && !m) {
    throw UsageError("--sim learned needs --model");
  }
  return similarity::make_similarity(kind, std::move(m));
}

std::vector<NodeId> read_seeds(const Path& p, std::size_t n, Run& run) {
  run.input(p);
  // The label reader accepts one integer per line, which is the seed format.
  const LabelVector ids = io::load_labels(p);
  std::vector<NodeId> seeds;
  for (auto v : ids.values()) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw Error("ags: seed " + std::to_string(v) + " out of range");
    }
    seeds.push_back(static_cast<NodeId>(v));
  }
  return seeds;
}

// `batch` distinct nodes drawn uniformly (all nodes when batch >= n).
std::vector<NodeId> random_seeds(std::size_t n, std::size_t batch, Rng rng) {
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});
  const std::size_t k = std::min(batch, n);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(all[i], all[i + rng.below(n - i)]);
  }
  all.resize(k);
  return all;
}

std::vector<NodeId> pick_seeds(const SampleOptions& o, std::size_t n, const Rng& root, Run& run) {
  return o.seeds.empty() ? random_seeds(n, o.batch, root.split(0)) : read_seeds(o.seeds, n, run);
}

Json subgraph_json(const Subgraph& sg) {
  Json j;
  j["nodes"] = sg.parent_ids;
  j["depth"] = sg.depth;
  std::vector<NodeId> seeds;
  for (std::size_t i = 0; i < sg.num_nodes(); ++i) {
    if (sg.seed_mask[i]) seeds.push_back(sg.parent_ids[i]);
  }
  j["seeds"] = seeds;
  // Layer -> [[src, dst, count], ...] in global ids; undirected storage is
  // reported once per edge.
  std::map<std::uint32_t, Json> layers;
  const bool undirected = !sg.local.directed();
  auto offs = sg.local.offsets();
  auto tgt = sg.local.targets();
  for (std::size_t u = 0; u < sg.num_nodes(); ++u) {
    auto w = sg.local.edge_weights(static_cast<NodeId>(u));
    for (auto i = offs[u]; i < offs[u + 1]; ++i) {
      const NodeId src = sg.parent_ids[u], dst = sg.parent_ids[tgt[i]];
      if (undirected && src > dst) continue;
      const double count = w.empty() ? 1.0 : w[i - offs[u]];
      layers[sg.edge_layer[i]].push_back({src, dst, static_cast<std::uint64_t>(count)});
    }
  }
  Json lj = Json::array();
  for (auto& [layer, edges] : layers) lj.push_back({{"layer", layer}, {"edges", edges}});
  j["layers"] = lj;
  j["num_edges"] = sg.num_edges();
  return j;
}

PmfSpec pmf_spec(const RankOptions& o) {
  if (o.lambdas.size() != 3) throw UsageError("--lambdas takes three values");
  PmfSpec s;
  s.kind = parse_pmf_kind(o.pmf);
  s.k1 = o.k1;
  s.k2 = o.k2;
  s.lambda1 = o.lambdas[0];
  s.lambda2 = o.lambdas[1];
  s.lambda3 = o.lambdas[2];
  s.decay = o.decay;
  s.floor = o.floor;
  s.validate();
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double best_time(std::size_t repeats, Fn&& fn) {
  double best = INFINITY;
  for (std::size_t r = 0; r < std::max<std::size_t>(1, repeats); ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

}  // namespace

Json analyze(const AnalyzeOptions& o, const Common& c, Run& run) {
  Graph g = load_graph(o.graph, o.directed, run);
  LabelVector y = load_labels(o.labels, run);
  std::optional<FeatureMatrix> x;
  if (!o.features.empty()) x = load_features(o.features, run);
  io::check_attached(g, x ? &*x : nullptr, &y);

  auto rep = metrics::homophily_report(g, y);
  Json j;
  j["nodes"] = g.num_nodes();
  j["edges"] = g.num_edges();
  j["directed"] = g.directed();
  j["classes"] = y.num_classes();
  j["h_node"] = rep.h_node;
  j["h_edge"] = rep.h_edge;
  j["h_adjusted"] = rep.h_adjusted;
  j["h_adjusted_degenerate"] = rep.h_adjusted_degenerate;
  j["h_class_insensitive"] = optional_json(rep.h_class_insensitive);
  j["h_entropy"] = rep.h_entropy;
  j["uniformity"] = {{"score", rep.uniformity.score},
                     {"passing", rep.uniformity.passing},
                     {"low_degree", rep.uniformity.low_degree},
                     {"isolated", rep.uniformity.isolated}};
  j["degree_assortativity"] = optional_json(rep.assortativity);
  j["isolated"] = rep.num_isolated;
  j["local_histogram"] = {{"buckets", metrics::kHistogramBuckets}, {"counts", rep.histogram}};
  if (o.local) {
    Json local = Json::array();
    for (const auto& h : rep.local) local.push_back(optional_json(h));
    j["local"] = local;
  }
  if (x) {
    metrics::Pairing pairing;
    if (o.pairing == "edges") {
      pairing = metrics::Pairing::edges;
    } else if (o.pairing == "random") {
      pairing = metrics::Pairing::random_pairs;
    } else if (o.pairing == "balanced") {
      pairing = metrics::Pairing::balanced;
    } else {
      throw UsageError("--pairing must be edges, random or balanced");
    }
    const FeatureMatrix& xf = *x;
    auto cos = [&](NodeId u, NodeId v) { return similarity::cosine(xf.row(u), xf.row(v)); };
    try {
      j["feature_label_r"] = metrics::feature_label_correlation(
          g, y, cos, pairing, o.pairs, Rng(resolve_seed(c.seed)));
    } catch (const Error&) {
      j["feature_label_r"] = nullptr;
    }
    j["feature_label_pairing"] = o.pairing;
  }
  return j;
}

Json rank(const RankOptions& o, const Common& c, Run& run) {
  require(c.out, "--out");
  const RankMode mode = parse_rank_mode(o.mode);
  Graph g = load_graph(o.graph, o.directed, run);
  Json j;
  RankTable rt;
  if (mode == RankMode::uniform) {
    rt = ranking::rank_uniform(g);
  } else {
    FeatureMatrix x = load_features(o.features, run);
    io::check_attached(g, &x, nullptr);
    const PmfSpec spec = pmf_spec(o);
    auto model = load_model_opt(o.model, run);
    const auto kind = similarity::parse_sim_kind(o.sim);
    if (kind == similarity::SimKind::learned && !model) {
      // Train inline on a random split and keep the model next to the table.
      LabelVector y = load_labels(o.labels, run);
      io::check_attached(g, &x, &y);
      const auto seed = resolve_seed(c.seed);
      auto split = sage::random_split(g.num_nodes(), Rng(seed).split(7), o.train_frac, 0.0);
      similarity::SiameseConfig cfg;
      cfg.h1 = cfg.h2 = o.siamese_hidden;
      cfg.epochs = o.siamese_epochs;
      cfg.batch = o.siamese_batch;
      cfg.seed = seed;
      similarity::SiameseTrainReport rep;
      model = std::make_shared<const similarity::SiameseModel>(
          similarity::train_similarity(g, x, y, split.train, cfg, &rep));
      Path sidecar = c.out;
      sidecar.replace_extension(".agsm");
      similarity::save_model(*model, sidecar);
      run.output(sidecar);
      j["model"] = {{"path", sidecar.string()},
                    {"epochs", rep.epoch_loss.size()},
                    {"final_loss", rep.epoch_loss.empty() ? Json() : Json(rep.epoch_loss.back())},
                    {"class_fallback", rep.used_class_fallback},
                    {"positive_pairs", rep.num_pairs}};
    }
    const auto sim = similarity::make_similarity(kind, model);
    if (mode == RankMode::similar) {
      rt = ranking::rank_by_similarity(g, x, sim, spec, c.workers, o.partial_sort);
    } else {
      ranking::DiversityOptions d{submodular::parse_kind(o.fn), o.cut_lambda};
      rt = ranking::rank_by_diversity(g, x, sim, d, spec, c.workers);
    }
  }
  save_rank_table(rt, c.out);
  run.output(c.out);
  j["table"] = c.out.string();
  j["mode"] = std::string(to_string(rt.mode));
  j["pmf"] = std::string(to_string(rt.pmf.kind));
  j["nodes"] = rt.num_nodes();
  j["entries"] = rt.num_entries();
  j["bytes"] = rank_table_file_size(rt.num_nodes(), rt.num_entries());
  return j;
}

Json sample_node(const SampleOptions& o, const Common& c, Run& run) {
  require(o.table, "--table");
  RankTable a = load_table(o.table, run);
  Graph g = sampling_graph(o, a, run);
  const auto seed = resolve_seed(c.seed);
  const Rng root(seed);
  auto seeds = pick_seeds(o, g.num_nodes(), root, run);
  sampling::NodeSampleOptions opt{o.fanouts, o.replace, o.exclude_self, c.workers};
  Json j;
  j["sampler"] = "node";
  j["fanouts"] = o.fanouts;
  Json ch = Json::array();
  if (o.table2.empty()) {
    ch.push_back(subgraph_json(sampling::node_sample_khop(g, a, seeds, opt, root.split(1))));
  } else {
    RankTable b = load_table(o.table2, run);
    auto [s, d] = sampling::node_sample_dual(g, a, b, seeds, opt, root.split(1));
    ch.push_back(subgraph_json(s));
    ch.push_back(subgraph_json(d));
  }
  j["channels"] = ch;
  return j;
}

Json sample_walk(const SampleOptions& o, const Common& c, Run& run) {
  require(o.table, "--table");
  RankTable rt = load_table(o.table, run);
  Graph g = sampling_graph(o, rt, run);
  const Rng root(resolve_seed(c.seed));
  auto seeds = pick_seeds(o, g.num_nodes(), root, run);
  Json j;
  j["sampler"] = "walk";
  j["steps"] = o.steps;
  j["channels"] = Json::array(
      {subgraph_json(sampling::weighted_random_walk(g, rt, seeds, o.steps, root.split(1), c.workers))});
  return j;
}

Json sample_disjoint(const SampleOptions& o, const Common& c, Run& run) {
  require(o.table, "--table");
  RankTable rt = load_table(o.table, run);
  Graph g = sampling_graph(o, rt, run);
  if (g.directed()) throw UsageError("disjoint sampling needs an undirected graph");
  auto col = sampling::disjoint_decompose(g.num_nodes(),
                                          sampling::edge_weights_from_table(g, rt), o.forests);
  if (o.k > col.num_forests()) {
    throw Error("ags: asked for " + std::to_string(o.k) + " forests but only " +
                std::to_string(col.num_forests()) + " exist");
  }
  Rng rng = Rng(resolve_seed(c.seed)).split(1);
  Subgraph sg = sampling::disjoint_subgraph_sample(g, col, o.k, o.residual_frac, rng);
  Json j;
  j["sampler"] = "disjoint";
  j["k"] = o.k;
  j["K"] = o.forests;
  j["residual_frac"] = o.residual_frac;
  j["exhausted"] = col.exhausted;
  Json parts = Json::array();
  for (std::size_t i = 0; i < col.num_forests(); ++i) {
    parts.push_back({{"edges", col.parts[i].edges.size()}, {"weight", col.parts[i].weight}});
  }
  j["forests"] = parts;
  j["residual_edges"] = col.residual().edges.size();
  j["channels"] = Json::array({subgraph_json(sg)});
  return j;
}

Json synth(const SynthOptions& o, const Common& c, Run& run) {
  require(c.out, "--out");
  const Rng root(resolve_seed(c.seed));
  LabelVector y;
  if (!o.labels.empty()) {
    y = load_labels(o.labels, run);
  } else {
    if (o.nodes == 0 || o.classes == 0) {
      throw UsageError("give --labels, or --nodes and --classes to generate labels");
    }
    std::vector<double> props(o.classes, 1.0 / static_cast<double>(o.classes));
    y = synth::random_labels(o.nodes, props, root.split(0));
  }
  double lo, hi;
  if (o.hn && !o.hn_range.empty()) throw UsageError("use either --hn or --hn-range");
  if (o.hn) {
    lo = hi = *o.hn;
  } else if (o.hn_range.size() == 2) {
    lo = o.hn_range[0];
    hi = o.hn_range[1];
  } else {
    throw UsageError("--hn or --hn-range lo,hi is required");
  }
  synth::SynthReport rep;
  Graph g = synth::generate_mixed(y, lo, hi, o.degree, root.split(1), &rep, c.workers);
  io::save_edge_list(g, c.out);
  run.output(c.out);
  if (!o.labels_out.empty()) {
    io::save_labels(y, o.labels_out);
    run.output(o.labels_out);
  }
  if (o.feature_dim > 0) {
    if (o.features_out.empty()) throw UsageError("--feature-dim needs --features-out");
    auto x = synth::noisy_onehot_features(y, o.feature_dim, o.signal, o.noise, root.split(2));
    io::save_features(x, o.features_out);
    run.output(o.features_out);
  }
  Json j;
  j["graph"] = c.out.string();
  j["nodes"] = g.num_nodes();
  j["edges"] = g.num_edges();
  j["hn_range"] = {lo, hi};
  j["degree"] = o.degree;
  j["h_node"] = g.num_entries() ? Json(metrics::node_homophily(g, y)) : Json();
  j["infeasible_nodes"] = rep.infeasible_nodes;
  j["exhausted_pools"] = rep.exhausted_pools;
  return j;
}

Json verify_lemmas(const LemmaOptions& o, const Common& c, Run& run) {
  Graph g = load_graph(o.graph, o.directed, run);
  FeatureMatrix x = load_features(o.features, run);
  LabelVector y = load_labels(o.labels, run);
  io::check_attached(g, &x, &y);
  auto sim = similarity_for(o.sim, load_model_opt(o.model, run));
  auto rep = synth::verify_lemmas(g, x, y, sim, c.workers);
  Json j;
  j["sim"] = o.sim;
  j["nodes"] = rep.nodes.size();
  j["isolated"] = rep.isolated;
  j["mean_p_uniform"] = rep.mean_p_uniform;
  j["mean_p_similar"] = rep.mean_p_similar;
  j["mean_p_diverse"] = rep.mean_p_diverse;
  j["similar_ge_uniform"] = rep.similar_ge_uniform;
  j["diverse_le_uniform"] = rep.diverse_le_uniform;
  j["assumption1_violations"] = rep.assumption1_violations;
  j["assumption2_violations"] = rep.assumption2_violations;
  j["lemma1_failures"] = rep.lemma1_failures;
  j["lemma2_failures"] = rep.lemma2_failures;
  j["zero_similarity"] = rep.zero_similarity;
  j["zero_gain"] = rep.zero_gain;
  j["ordering_holds"] =
      rep.mean_p_similar > rep.mean_p_uniform && rep.mean_p_uniform > rep.mean_p_diverse;
  if (o.per_node) {
    Json nodes = Json::array();
    for (const auto& n : rep.nodes) {
      nodes.push_back({{"node", n.node},
                       {"p_uniform", n.p_uniform},
                       {"p_similar", optional_json(n.p_similar)},
                       {"p_diverse", optional_json(n.p_diverse)},
                       {"assumption1", n.assumption1},
                       {"assumption2", n.assumption2}});
    }
    j["per_node"] = nodes;
  }
  return j;
}

Json train_demo(const TrainOptions& o, const Common& c, Run& run) {
  Graph g = load_graph(o.graph, o.directed, run);
  FeatureMatrix x = load_features(o.features, run);
  LabelVector y = load_labels(o.labels, run);
  io::check_attached(g, &x, &y);
  if (o.channels != 1 && o.channels != 2) throw UsageError("--channels must be 1 or 2");

  std::vector<RankTable> owned;
  std::string variant;
  if (o.channels == 2) {
    require(o.table_sim, "--table-sim");
    require(o.table_div, "--table-div");
    owned.push_back(load_table(o.table_sim, run));
    owned.push_back(load_table(o.table_div, run));
    variant = "dual";
  } else if (!o.table_sim.empty()) {
    owned.push_back(load_table(o.table_sim, run));
    variant = "single:" + std::string(to_string(owned.back().mode));
  } else if (!o.table_div.empty()) {
    owned.push_back(load_table(o.table_div, run));
    variant = "single:" + std::string(to_string(owned.back().mode));
  } else {
    owned.push_back(ranking::rank_uniform(g));
    variant = "single:uniform";
  }
  for (const auto& t : owned) t.validate(&g);
  std::vector<const RankTable*> tables;
  for (const auto& t : owned) tables.push_back(&t);

  const auto seed = resolve_seed(c.seed);
  sage::TrainConfig cfg;
  cfg.hidden = o.hidden;
  cfg.fanouts = o.fanouts;
  cfg.batch = o.batch;
  cfg.epochs = o.epochs;
  cfg.lr = o.lr;
  cfg.combiner = sage::parse_combiner(o.combiner);
  cfg.window = o.window;
  cfg.threshold = o.threshold;
  cfg.mc_samples = o.mc_samples;
  cfg.workers = c.workers;
  cfg.seed = seed;
  auto split = sage::random_split(g.num_nodes(), Rng(seed).split(100), o.train_frac, o.val_frac);
  auto result = sage::train(g, x, y, tables, split, cfg);
  const Rng eval_rng = Rng(seed).split(200);
  Json j;
  j["variant"] = variant;
  j["combiner"] = std::string(sage::to_string(cfg.combiner));
  j["channels"] = tables.size();
  j["split"] = {{"train", split.train.size()}, {"val", split.val.size()}, {"test", split.test.size()}};
  j["history"] = {{"epoch_loss", result.history.epoch_loss},
                  {"val_f1", result.history.val_f1},
                  {"best_epoch", result.history.best_epoch},
                  {"stop", std::string(sage::to_string(result.history.stop))}};
  if (!result.history.error.empty()) j["history"]["error"] = result.history.error;
  j["best_val_f1"] = result.history.best_val_f1;
  j["test_f1"] = split.test.empty()
                     ? Json()
                     : Json(sage::evaluate(result.model, g, x, y, tables, split.test, cfg,
                                           eval_rng));
  j["parameters"] = result.model.num_parameters();
  return j;
}

Json bench(const BenchOptions& o, const Common& c, Run& run) {
  const Rng root(resolve_seed(c.seed));
  Graph g;
  FeatureMatrix x;
  std::optional<LabelVector> y;
  Json j;
  if (!o.graph.empty()) {
    g = load_graph(o.graph, o.directed, run);
    if (g.num_entries() == 0) {
      j["input"] = "file";
      j["nodes"] = g.num_nodes();
      j["edges"] = 0;
      j["stages"] = Json::array();
      j["scaling"] = Json::array();
      j["zero_work"] = true;
      return j;
    }
    x = load_features(o.features, run);
    if (!o.labels.empty()) y = load_labels(o.labels, run);
    io::check_attached(g, &x, y ? &*y : nullptr);
    j["input"] = "file";
  } else {
    std::vector<double> props(o.classes, 1.0 / static_cast<double>(o.classes));
    y = synth::random_labels(o.nodes, props, root.split(0));
    g = synth::generate_mixed(*y, 0.05, 0.5, o.degree, root.split(1));
    x = synth::noisy_onehot_features(*y, o.feature_dim, 1.0, 0.5, root.split(2));
    j["input"] = "synthetic";
  }
  j["nodes"] = g.num_nodes();
  j["edges"] = g.num_edges();
  j["repeats"] = o.repeats;

  const auto cosine = similarity::make_similarity(similarity::SimKind::cosine);
  const PmfSpec spec;
  Json stages = Json::array();
  j["zero_work"] = false;
  std::optional<RankTable> base_sim, base_div;
  for (auto w : o.worker_counts) {
    RankTable ts, td;
    const double t_sim = best_time(o.repeats, [&] {
      ts = ranking::rank_by_similarity(g, x, cosine, spec, w);
    });
    const double t_div = best_time(o.repeats, [&] {
      td = ranking::rank_by_diversity(g, x, cosine, {}, spec, w);
    });
    if (!base_sim) {
      base_sim = ts;
      base_div = td;
    }
    auto seeds = random_seeds(g.num_nodes(), o.sample_batch, root.split(3));
    sampling::NodeSampleOptions opt{{25, 10}, false, false, w};
    const double t_sample = best_time(o.repeats, [&] {
      sampling::node_sample_khop(g, *base_sim, seeds, opt, root.split(4));
    });
    stages.push_back({{"workers", w},
                      {"similarity_ranking_s", t_sim},
                      {"diversity_ranking_s", t_div},
                      {"sampling_s", t_sample},
                      {"sampled_seeds_per_s", static_cast<double>(seeds.size()) / t_sample},
                      {"identical_tables", ts == *base_sim && td == *base_div}});
  }
  j["stages"] = stages;
  if (!stages.empty()) {
    const double t1s = stages[0]["similarity_ranking_s"], t1d = stages[0]["diversity_ranking_s"];
    for (auto& s : stages) {
      s["similarity_speedup"] = t1s / s["similarity_ranking_s"].get<double>();
      s["diversity_speedup"] = t1d / s["diversity_ranking_s"].get<double>();
    }
    j["stages"] = stages;
  }
  if (y) {
    auto split = sage::random_split(g.num_nodes(), root.split(5), 0.6, 0.0);
    similarity::SiameseConfig cfg{.h1 = 64, .h2 = 64, .batch = 1024, .epochs = 1, .seed = 1};
    j["similarity_learning_s_per_epoch"] = best_time(1, [&] {
      similarity::train_similarity(g, x, *y, split.train, cfg);
    });
  }

  // Similarity ranking time against edge count on synthetic graphs of
  // fixed degree; a slope near 1 in log-log means O(m log d) scaling.
  Json scaling = Json::array();
  std::vector<double> lx, ly;
  for (auto n : o.sizes) {
    std::vector<double> props(o.classes, 1.0 / static_cast<double>(o.classes));
    auto yy = synth::random_labels(n, props, root.split(6, n));
    Graph gg = synth::generate_mixed(yy, 0.05, 0.5, o.degree, root.split(7, n));
    auto xx = synth::noisy_onehot_features(yy, o.feature_dim, 1.0, 0.5, root.split(8, n));
    const double t = best_time(o.repeats, [&] {
      ranking::rank_by_similarity(gg, xx, cosine, spec, 1);
    });
    scaling.push_back({{"nodes", n}, {"entries", gg.num_entries()}, {"similarity_ranking_s", t}});
    if (t > 0 && gg.num_entries() > 0) {
      lx.push_back(std::log(static_cast<double>(gg.num_entries())));
      ly.push_back(std::log(t));
    }
  }
  j["scaling"] = scaling;
  if (lx.size() >= 2) {
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    j["scaling_loglog_slope"] = sxx > 0 ? Json(sxy / sxx) : Json();
  }
  return j;
}

}  // namespace ags::cli
