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

#include "ags/sage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ags/common.hpp"
#include "ags/sampling.hpp"

namespace ags::sage {

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

Matrix glorot(std::size_t out, std::size_t in, std::size_t fan_in, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + out));
  Matrix w(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = (2.0 * rng.uniform() - 1.0) * limit;
  return w;
}

Matrix relu_mask(const Matrix& z) {
  return z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; });
}

Matrix gather(const FeatureMatrix& x, const Subgraph& sg) {
  Matrix h(static_cast<Eigen::Index>(sg.num_nodes()), static_cast<Eigen::Index>(x.dim()));
  for (std::size_t i = 0; i < sg.num_nodes(); ++i) {
    const auto r = x.row(sg.parent_ids[i]);
    for (std::size_t j = 0; j < r.size(); ++j) {
      h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = r[j];
    }
  }
  return h;
}

struct ChannelCache {
  std::vector<Matrix> input;  // layer input over the rows it needs
  std::vector<SpMat> agg;
  std::vector<Matrix> agg_h;  // agg * input
  std::vector<Matrix> pre;
  std::vector<Eigen::Index> rows;
};

Matrix channel_forward(const SageChannel& ch, const Subgraph& sg, const FeatureMatrix& x,
                       ChannelCache* cache) {
  AGS_CHECK(!ch.layers.empty(), "channel has no layers");
  AGS_CHECK(x.rows() > 0 && static_cast<Eigen::Index>(x.dim()) == ch.layers[0].w_self.cols(),
            "feature width does not match the first layer");
  const auto depth = static_cast<std::uint32_t>(ch.layers.size());
  Matrix h = gather(x, sg);
  for (std::uint32_t l = 1; l <= depth; ++l) {
    const auto& layer = ch.layers[l - 1];
    SpMat a = aggregation_matrix(sg, depth - l);
    AGS_CHECK(a.cols() <= h.rows(), "subgraph is deeper than the model");
    const Matrix prev = h.topRows(a.cols());
    const Eigen::Index p = a.rows();
    Matrix ah = a * prev;
    Matrix z = (prev.topRows(p) * layer.w_self.transpose() + ah * layer.w_neigh.transpose())
                   .rowwise() +
               layer.bias;
    h = z.cwiseMax(0.0);
    if (cache) {
      cache->input.push_back(prev);
      cache->agg.push_back(std::move(a));
      cache->agg_h.push_back(std::move(ah));
      cache->pre.push_back(std::move(z));
      cache->rows.push_back(p);
    }
  }
  return h;
}

/// Appends parameter gradients for one channel in parameters() order.
void channel_backward(const SageChannel& ch, const ChannelCache& c, Matrix dh,
                      std::vector<Matrix>& out) {
  const std::size_t depth = ch.layers.size();
  std::vector<Matrix> gws(depth), gwn(depth), gb(depth);
  for (std::size_t l = depth; l-- > 0;) {
    const auto& layer = ch.layers[l];
    const Matrix dz = dh.cwiseProduct(relu_mask(c.pre[l]));
    const Eigen::Index p = c.rows[l];
    gws[l] = dz.transpose() * c.input[l].topRows(p);
    gwn[l] = dz.transpose() * c.agg_h[l];
    gb[l] = dz.colwise().sum();
    if (l > 0) {
      Matrix prev = c.agg[l].transpose() * (dz * layer.w_neigh);
      prev.topRows(p) += dz * layer.w_self;
      dh = std::move(prev);
    }
  }
  for (std::size_t l = 0; l < depth; ++l) {
    out.push_back(std::move(gws[l]));
    out.push_back(std::move(gwn[l]));
    out.push_back(std::move(gb[l]));
  }
}

struct HeadCache {
  Matrix u;  // skip pre-activation
  Matrix z;
};

Matrix head_forward(const SageModel& m, const std::vector<Matrix>& h, HeadCache* cache) {
  if (h.size() == 1) return (h[0] * m.head_a.transpose()).rowwise() + m.head_bias;
  AGS_CHECK(h[0].rows() == h[1].rows() && h[0].cols() == h[1].cols(),
            "channel embeddings differ in shape");
  if (m.combiner == Combiner::concat) {
    return (h[0] * m.head_a.transpose() + h[1] * m.head_b.transpose()).rowwise() +
           m.head_bias;
  }
  Matrix u = (h[0] * m.skip_a.transpose() + h[1] * m.skip_b.transpose()).rowwise() +
             m.skip_bias;
  u += h[0] + h[1];
  Matrix z = u.cwiseMax(0.0);
  Matrix logits = (z * m.head_a.transpose()).rowwise() + m.head_bias;
  if (cache) {
    cache->u = std::move(u);
    cache->z = std::move(z);
  }
  return logits;
}

void check_batch(const SageModel& m, const Batch& b) {
  AGS_CHECK(b.channels.size() == m.channels.size(),
            "batch has " + std::to_string(b.channels.size()) + " channels, model has " +
                std::to_string(m.channels.size()));
  for (const auto& sg : b.channels) {
    AGS_CHECK(sg.num_seeds() == b.channels[0].num_seeds(), "channels differ in seed count");
  }
}

Batch sample_batch(const Graph& g, std::span<const RankTable* const> tables,
                   std::span<const NodeId> seeds, const TrainConfig& cfg, const Rng& rng) {
  sampling::NodeSampleOptions opt;
  opt.fanouts = cfg.fanouts;
  opt.replace = cfg.replace;
  opt.workers = cfg.workers;
  Batch b;
  if (tables.size() == 1) {
    b.channels.push_back(sampling::node_sample_khop(g, *tables[0], seeds, opt, rng));
  } else {
    auto [s, d] = sampling::node_sample_dual(g, *tables[0], *tables[1], seeds, opt, rng);
    b.channels.push_back(std::move(s));
    b.channels.push_back(std::move(d));
  }
  return b;
}

std::vector<std::int32_t> seed_labels(const Subgraph& sg, const LabelVector& y) {
  std::vector<std::int32_t> out(sg.num_seeds());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[sg.parent_ids[i]];
  return out;
}

}  // namespace

Combiner parse_combiner(std::string_view name) {
  if (name == "concat" || name == "concat_mlp") return Combiner::concat;
  if (name == "skip") return Combiner::skip;
  throw Error("ags: unknown combiner '" + std::string(name) + "'");
}

std::string_view to_string(Combiner c) { return c == Combiner::concat ? "concat" : "skip"; }

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::converged: return "converged";
    case StopReason::epoch_cap: return "epoch_cap";
    case StopReason::non_finite: return "non_finite";
  }
  return "?";
}

SageModel SageModel::init(std::size_t features, std::size_t hidden, std::size_t classes,
                          std::size_t layers, std::size_t channels, Combiner combiner,
                          Rng& rng) {
  AGS_CHECK(features > 0 && hidden > 0 && classes > 0 && layers > 0,
            "model dims must be positive");
  AGS_CHECK(channels == 1 || channels == 2, "channel count must be 1 or 2");
  SageModel m;
  m.combiner = combiner;
  for (std::size_t c = 0; c < channels; ++c) {
    SageChannel ch;
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = l == 0 ? features : hidden;
      SageLayer layer;
      layer.w_self = glorot(hidden, in, 2 * in, rng);
      layer.w_neigh = glorot(hidden, in, 2 * in, rng);
      layer.bias = RowVector::Zero(static_cast<Eigen::Index>(hidden));
      ch.layers.push_back(std::move(layer));
    }
    m.channels.push_back(std::move(ch));
  }
  if (channels == 2 && combiner == Combiner::skip) {
    m.skip_a = glorot(hidden, hidden, 2 * hidden, rng);
    m.skip_b = glorot(hidden, hidden, 2 * hidden, rng);
    m.skip_bias = RowVector::Zero(static_cast<Eigen::Index>(hidden));
    m.head_a = glorot(classes, hidden, hidden, rng);
  } else if (channels == 2) {
    m.head_a = glorot(classes, hidden, 2 * hidden, rng);
    m.head_b = glorot(classes, hidden, 2 * hidden, rng);
  } else {
    m.head_a = glorot(classes, hidden, hidden, rng);
  }
  m.head_bias = RowVector::Zero(static_cast<Eigen::Index>(classes));
  return m;
}

std::size_t SageModel::num_layers() const {
  return channels.empty() ? 0 : channels[0].layers.size();
}

std::size_t SageModel::hidden() const {
  return channels.empty() ? 0 : static_cast<std::size_t>(channels[0].layers[0].w_self.rows());
}

std::vector<std::span<double>> SageModel::parameters() {
  std::vector<std::span<double>> out;
  auto add = [&](auto& m) {
    if (m.size() > 0) out.emplace_back(m.data(), static_cast<std::size_t>(m.size()));
  };
  for (auto& ch : channels) {
    for (auto& l : ch.layers) {
      add(l.w_self);
      add(l.w_neigh);
      add(l.bias);
    }
  }
  add(skip_a);
  add(skip_b);
  add(skip_bias);
  add(head_a);
  add(head_b);
  add(head_bias);
  return out;
}

std::size_t SageModel::num_parameters() {
  std::size_t n = 0;
  for (auto p : parameters()) n += p.size();
  return n;
}

SpMat aggregation_matrix(const Subgraph& sg, std::uint32_t depth) {
  const auto rows = static_cast<Eigen::Index>(sg.prefix_size(depth));
  const auto cols = static_cast<Eigen::Index>(sg.prefix_size(depth + 1));
  const auto offs = sg.local.offsets();
  const auto tgt = sg.local.targets();
  const auto w = sg.local.weights();
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index u = 0; u < rows; ++u) {
    double total = 0.0;
    for (auto i = offs[u]; i < offs[u + 1]; ++i) total += w.empty() ? 1.0 : w[i];
    for (auto i = offs[u]; i < offs[u + 1]; ++i) {
      AGS_CHECK(static_cast<Eigen::Index>(tgt[i]) < cols,
                "subgraph edge skips a layer; not a layered node sample");
      trip.emplace_back(u, tgt[i], (w.empty() ? 1.0 : w[i]) / total);
    }
  }
  SpMat a(rows, cols);
  a.setFromTriplets(trip.begin(), trip.end());
  return a;
}

Matrix forward_channel(const SageChannel& ch, const Subgraph& sg, const FeatureMatrix& x) {
  return channel_forward(ch, sg, x, nullptr);
}

Matrix forward(const SageModel& model, const FeatureMatrix& x, const Batch& batch) {
  check_batch(model, batch);
  std::vector<Matrix> h;
  for (std::size_t c = 0; c < model.channels.size(); ++c) {
    h.push_back(channel_forward(model.channels[c], batch.channels[c], x, nullptr));
  }
  return head_forward(model, h, nullptr);
}

std::vector<std::span<const double>> SageGrad::views() const {
  std::vector<std::span<const double>> out;
  for (const auto& g : grads) out.emplace_back(g.data(), static_cast<std::size_t>(g.size()));
  return out;
}

SageGrad loss_and_grad(const SageModel& model, const FeatureMatrix& x, const Batch& batch,
                       std::span<const std::int32_t> labels) {
  check_batch(model, batch);
  const std::size_t nc = model.channels.size();
  std::vector<ChannelCache> caches(nc);
  std::vector<Matrix> h;
  for (std::size_t c = 0; c < nc; ++c) {
    h.push_back(channel_forward(model.channels[c], batch.channels[c], x, &caches[c]));
  }
  HeadCache hc;
  const Matrix logits = head_forward(model, h, &hc);
  auto loss = nn::softmax_cross_entropy(logits, labels);
  const Matrix& dl = loss.grad;

  std::vector<Matrix> dh(nc);
  std::vector<Matrix> head_grads;  // in parameters() order after the channels
  if (nc == 1) {
    dh[0] = dl * model.head_a;
    head_grads.push_back(dl.transpose() * h[0]);
    head_grads.push_back(dl.colwise().sum());
  } else if (model.combiner == Combiner::concat) {
    dh[0] = dl * model.head_a;
    dh[1] = dl * model.head_b;
    head_grads.push_back(dl.transpose() * h[0]);
    head_grads.push_back(dl.transpose() * h[1]);
    head_grads.push_back(dl.colwise().sum());
  } else {
    const Matrix du = (dl * model.head_a).cwiseProduct(relu_mask(hc.u));
    dh[0] = du * model.skip_a + du;
    dh[1] = du * model.skip_b + du;
    head_grads.push_back(du.transpose() * h[0]);
    head_grads.push_back(du.transpose() * h[1]);
    head_grads.push_back(du.colwise().sum());
    head_grads.push_back(dl.transpose() * hc.z);
    head_grads.push_back(dl.colwise().sum());
  }

  SageGrad out;
  out.loss = loss.value;
  for (std::size_t c = 0; c < nc; ++c) {
    channel_backward(model.channels[c], caches[c], std::move(dh[c]), out.grads);
  }
  for (auto& g : head_grads) out.grads.push_back(std::move(g));
  return out;
}

Split random_split(std::size_t n, const Rng& rng, double train_frac, double val_frac) {
  AGS_CHECK(train_frac > 0 && val_frac >= 0 && train_frac + val_frac <= 1.0,
            "invalid split fractions");
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  Rng r = rng;
  r.shuffle(perm.begin(), perm.end());
  const auto nt = static_cast<std::size_t>(std::llround(train_frac * static_cast<double>(n)));
  const auto nv = static_cast<std::size_t>(std::llround(val_frac * static_cast<double>(n)));
  Split s;
  s.train.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(nt));
  s.val.assign(perm.begin() + static_cast<std::ptrdiff_t>(nt),
               perm.begin() + static_cast<std::ptrdiff_t>(std::min(n, nt + nv)));
  s.test.assign(perm.begin() + static_cast<std::ptrdiff_t>(std::min(n, nt + nv)), perm.end());
  for (auto* part : {&s.train, &s.val, &s.test}) std::sort(part->begin(), part->end());
  return s;
}

bool converged(std::span<const double> losses, std::size_t window, double threshold) {
  if (window == 0 || losses.size() < window) return false;
  const auto tail = losses.subspan(losses.size() - window);
  const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / double(window);
  double var = 0.0;
  for (double v : tail) var += (v - mean) * (v - mean);
  return std::sqrt(var / double(window)) < threshold;
}

double evaluate(const SageModel& model, const Graph& g, const FeatureMatrix& x,
                const LabelVector& y, std::span<const RankTable* const> tables,
                std::span<const NodeId> nodes, const TrainConfig& cfg, const Rng& rng) {
  AGS_CHECK(!nodes.empty(), "evaluation split is empty");
  AGS_CHECK(cfg.batch > 0 && cfg.mc_samples > 0, "batch and mc_samples must be positive");
  std::vector<std::int32_t> pred, truth;
  for (std::size_t lo = 0, bi = 0; lo < nodes.size(); lo += cfg.batch, ++bi) {
    const auto seeds = nodes.subspan(lo, std::min(cfg.batch, nodes.size() - lo));
    Matrix prob;
    std::vector<std::int32_t> labels;
    for (std::size_t s = 0; s < cfg.mc_samples; ++s) {
      Batch b = sample_batch(g, tables, seeds, cfg, rng.split(bi, s));
      Matrix p = nn::softmax(forward(model, x, b));
      if (s == 0) {
        prob = std::move(p);
        labels = seed_labels(b.channels[0], y);
      } else {
        prob += p;
      }
    }
    auto am = nn::argmax_rows(prob);
    pred.insert(pred.end(), am.begin(), am.end());
    truth.insert(truth.end(), labels.begin(), labels.end());
  }
  return nn::micro_f1(pred, truth);
}

TrainResult train(const Graph& g, const FeatureMatrix& x, const LabelVector& y,
                  std::span<const RankTable* const> tables, const Split& split,
                  const TrainConfig& cfg) {
  AGS_CHECK(tables.size() == 1 || tables.size() == 2, "need one or two rank tables");
  for (const auto* t : tables) AGS_CHECK(t != nullptr, "null rank table");
  AGS_CHECK(x.rows() == g.num_nodes() && y.size() == g.num_nodes(),
            "features/labels do not match graph");
  AGS_CHECK(!split.train.empty() && !split.val.empty(), "train and validation splits must be non-empty");
  AGS_CHECK(!cfg.fanouts.empty() && cfg.batch > 0 && cfg.epochs > 0 && cfg.hidden > 0,
            "invalid training config");

  const Rng root(cfg.seed);
  Rng init_rng = root.split(0);
  TrainResult res;
  SageModel model = SageModel::init(x.dim(), cfg.hidden,
                                    static_cast<std::size_t>(y.num_classes()),
                                    cfg.fanouts.size(), tables.size(), cfg.combiner, init_rng);
  res.model = model;
  res.history.best_val_f1 = -1.0;
  nn::Adam adam(nn::Adam::Options{.lr = cfg.lr});
  auto& hist = res.history;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<NodeId> order = split.train;
    Rng er = root.split(1, epoch);
    er.shuffle(order.begin(), order.end());
    double sum = 0.0;
    std::size_t count = 0;
    bool failed = false;
    for (std::size_t lo = 0, bi = 0; lo < order.size(); lo += cfg.batch, ++bi) {
      const auto seeds = std::span<const NodeId>(order).subspan(
          lo, std::min(cfg.batch, order.size() - lo));
      Batch b = sample_batch(g, tables, seeds, cfg, root.split(2, epoch, bi));
      const auto labels = seed_labels(b.channels[0], y);
      SageGrad grad = loss_and_grad(model, x, b, labels);
      try {
        AGS_CHECK(std::isfinite(grad.loss), "non-finite training loss");
        auto params = model.parameters();
        auto views = grad.views();
        adam.step(params, views);
      } catch (const Error& e) {
        hist.stop = StopReason::non_finite;
        hist.error = e.what();
        failed = true;
        break;
      }
      sum += grad.loss * static_cast<double>(labels.size());
      count += labels.size();
    }
    if (failed) break;
    hist.epoch_loss.push_back(sum / static_cast<double>(count));
    const double f1 = evaluate(model, g, x, y, tables, split.val, cfg, root.split(3, epoch));
    hist.val_f1.push_back(f1);
    if (f1 > hist.best_val_f1) {
      hist.best_val_f1 = f1;
      hist.best_epoch = epoch;
      res.model = model;
    }
    if (converged(hist.epoch_loss, cfg.window, cfg.threshold)) {
      hist.stop = StopReason::converged;
      break;
    }
  }
  if (hist.best_val_f1 < 0.0) hist.best_val_f1 = 0.0;
  return res;
}

}  // namespace ags::sage
