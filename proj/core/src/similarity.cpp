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

#include "ags/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "binio.hpp"

namespace ags::similarity {

namespace {

constexpr char kMagic[4] = {'A', 'G', 'S', 'M'};
constexpr std::uint32_t kVersion = 1;
// Cap on same-class pairs materialized by the no-edge fallback.
constexpr std::size_t kMaxFallbackPairs = 2'000'000;

nn::Matrix rows_of(std::span<const double> v) {
  nn::Matrix m(1, static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) m(0, static_cast<Eigen::Index>(i)) = v[i];
  return m;
}

struct Combined {
  nn::Matrix e1, e2, z;
  nn::ForwardCache c1, c2, head;
  nn::Matrix out;
};

Combined run(const SiameseModel& model, const nn::Matrix& a, const nn::Matrix& b,
             bool keep_cache) {
  AGS_CHECK(a.rows() == b.rows(), "siamese: batch size mismatch");
  AGS_CHECK(static_cast<std::size_t>(a.cols()) == model.feature_dim() &&
                static_cast<std::size_t>(b.cols()) == model.feature_dim(),
            "siamese: feature width " + std::to_string(a.cols()) + " != model " +
                std::to_string(model.feature_dim()));
  Combined r;
  r.e1 = nn::forward(model.tower(), a, keep_cache ? &r.c1 : nullptr);
  r.e2 = nn::forward(model.tower(), b, keep_cache ? &r.c2 : nullptr);
  const auto h = r.e1.cols();
  r.z.resize(a.rows(), 2 * h);
  r.z.leftCols(h) = (r.e1 - r.e2).cwiseAbs();
  r.z.rightCols(h) = r.e1.cwiseProduct(r.e2);
  r.out = nn::forward(model.head(), r.z, keep_cache ? &r.head : nullptr);
  return r;
}

}  // namespace

double cosine(std::span<const double> a, std::span<const double> b,
              bool* zero_vector) {
  AGS_CHECK(a.size() == b.size(), "cosine: length mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const bool zero = na == 0.0 || nb == 0.0;
  if (zero_vector) *zero_vector = zero;
  if (zero) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  AGS_CHECK(a.size() == b.size(), "distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

SimKind parse_sim_kind(std::string_view name) {
  if (name == "cosine") return SimKind::cosine;
  if (name == "euclidean" || name == "neg_euclidean") return SimKind::neg_euclidean;
  if (name == "learned") return SimKind::learned;
  throw Error("ags: unknown similarity '" + std::string(name) + "'");
}

std::string_view to_string(SimKind kind) {
  switch (kind) {
    case SimKind::cosine: return "cosine";
    case SimKind::neg_euclidean: return "euclidean";
    case SimKind::learned: return "learned";
  }
  return "?";
}

SiameseModel::SiameseModel(std::size_t features, std::size_t h1, std::size_t h2,
                           Rng& rng) {
  const std::size_t tdims[] = {features, h1, h2};
  const nn::Activation tacts[] = {nn::Activation::relu, nn::Activation::relu};
  tower_ = nn::DenseNet(tdims, tacts, rng);
  const std::size_t hdims[] = {2 * h2, 1};
  const nn::Activation hacts[] = {nn::Activation::sigmoid};
  head_ = nn::DenseNet(hdims, hacts, rng);
}

SiameseModel::SiameseModel(nn::DenseNet tower, nn::DenseNet head)
    : tower_(std::move(tower)), head_(std::move(head)) {
  AGS_CHECK(!tower_.layers().empty() && !head_.layers().empty(),
            "siamese: empty tower or head");
  AGS_CHECK(head_.input_dim() == 2 * tower_.output_dim(),
            "siamese: head input must be twice the embedding width");
  AGS_CHECK(head_.output_dim() == 1 &&
                head_.layers().back().act == nn::Activation::sigmoid,
            "siamese: head must end in a single sigmoid unit");
}

std::vector<std::span<double>> SiameseModel::parameters() {
  auto p = tower_.parameters();
  auto h = head_.parameters();
  p.insert(p.end(), h.begin(), h.end());
  return p;
}

bool operator==(const SiameseModel& a, const SiameseModel& b) {
  auto same = [](const nn::DenseNet& x, const nn::DenseNet& y) {
    if (x.layers().size() != y.layers().size()) return false;
    for (std::size_t i = 0; i < x.layers().size(); ++i) {
      const auto& l = x.layers()[i];
      const auto& r = y.layers()[i];
      if (l.act != r.act || l.weight != r.weight || l.bias != r.bias) return false;
    }
    return true;
  };
  return same(a.tower_, b.tower_) && same(a.head_, b.head_);
}

nn::Matrix predict(const SiameseModel& model, const nn::Matrix& a,
                   const nn::Matrix& b) {
  return run(model, a, b, false).out;
}

double predict_edge_weight(const SiameseModel& model, std::span<const double> xu,
                           std::span<const double> xv) {
  AGS_CHECK(xu.size() == model.feature_dim() && xv.size() == model.feature_dim(),
            "siamese: feature width mismatch");
  return predict(model, rows_of(xu), rows_of(xv))(0, 0);
}

std::vector<std::span<const double>> SiameseGrad::views() const {
  std::vector<std::span<const double>> out;
  for (const auto& g : grads) out.emplace_back(g.data(), static_cast<std::size_t>(g.size()));
  return out;
}

SiameseGrad siamese_loss_grad(const SiameseModel& model, const nn::Matrix& a,
                              const nn::Matrix& b, const nn::Matrix& target) {
  auto r = run(model, a, b, true);
  auto loss = nn::mse(r.out, target);
  auto gh = nn::backward(model.head(), r.head, loss.grad);
  const auto h = r.e1.cols();
  const nn::Matrix sgn =
      (r.e1 - r.e2).unaryExpr([](double v) { return double((v > 0) - (v < 0)); });
  const nn::Matrix dabs = gh.input.leftCols(h).cwiseProduct(sgn);
  const nn::Matrix dprod = gh.input.rightCols(h);
  const nn::Matrix de1 = dabs + dprod.cwiseProduct(r.e2);
  const nn::Matrix de2 = -dabs + dprod.cwiseProduct(r.e1);
  auto g1 = nn::backward(model.tower(), r.c1, de1);
  auto g2 = nn::backward(model.tower(), r.c2, de2);

  SiameseGrad out;
  out.loss = loss.value;
  for (std::size_t i = 0; i < g1.weight.size(); ++i) {
    out.grads.push_back(g1.weight[i] + g2.weight[i]);
    out.grads.push_back(g1.bias[i] + g2.bias[i]);
  }
  for (std::size_t i = 0; i < gh.weight.size(); ++i) {
    out.grads.push_back(gh.weight[i]);
    out.grads.push_back(gh.bias[i]);
  }
  return out;
}

SiameseModel train_similarity(const Graph& g, const FeatureMatrix& x,
                              const LabelVector& y, std::span<const NodeId> train,
                              const SiameseConfig& cfg, SiameseTrainReport* report) {
  const std::size_t n = g.num_nodes();
  AGS_CHECK(x.rows() == n && y.size() == n, "siamese: features/labels do not match graph");
  AGS_CHECK(cfg.batch >= 2 && cfg.epochs >= 1 && cfg.h1 > 0 && cfg.h2 > 0 && cfg.lr > 0,
            "siamese: invalid training config");

  std::vector<NodeId> nodes(train.begin(), train.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  AGS_CHECK(nodes.size() >= 2, "siamese: need at least two training nodes");
  AGS_CHECK(nodes.back() < n, "siamese: training node out of range");
  std::vector<std::uint8_t> in_train(n, 0);
  for (auto v : nodes) in_train[v] = 1;

  Rng rng(cfg.seed);
  std::vector<std::pair<NodeId, NodeId>> pool;
  for (const auto& e : g.unique_edges()) {
    if (e.src != e.dst && in_train[e.src] && in_train[e.dst]) pool.emplace_back(e.src, e.dst);
  }
  const bool fallback = pool.empty();
  if (fallback) {
    // Connect training nodes of the same class instead.
    std::vector<std::vector<NodeId>> by_class(static_cast<std::size_t>(y.num_classes()));
    for (auto v : nodes) by_class[static_cast<std::size_t>(y[v])].push_back(v);
    std::size_t total = 0;
    for (const auto& c : by_class) total += c.size() * (c.size() - (c.empty() ? 0 : 1)) / 2;
    AGS_CHECK(total > 0, "siamese: no edges and no same-class pairs among training nodes");
    if (total <= kMaxFallbackPairs) {
      for (const auto& c : by_class) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          for (std::size_t j = i + 1; j < c.size(); ++j) pool.emplace_back(c[i], c[j]);
        }
      }
    } else {
      Rng pr = rng.split(0xfa11);
      std::vector<std::size_t> eligible;
      for (std::size_t k = 0; k < by_class.size(); ++k) {
        if (by_class[k].size() >= 2) eligible.push_back(k);
      }
      while (pool.size() < kMaxFallbackPairs) {
        const auto& c = by_class[eligible[pr.below(eligible.size())]];
        const auto i = pr.below(c.size());
        auto j = pr.below(c.size() - 1);
        if (j >= i) ++j;
        pool.emplace_back(c[i], c[j]);
      }
    }
  }

  SiameseModel model(x.dim(), cfg.h1, cfg.h2, rng);
  nn::Adam adam(nn::Adam::Options{.lr = cfg.lr});
  const auto f = static_cast<Eigen::Index>(x.dim());
  const std::size_t half = std::max<std::size_t>(1, cfg.batch / 2);

  auto is_positive = [&](NodeId u, NodeId v) {
    return fallback ? y[u] == y[v] : g.has_edge(u, v);
  };

  SiameseTrainReport rep;
  rep.used_class_fallback = fallback;
  rep.num_pairs = pool.size();
  double best = std::numeric_limits<double>::infinity();
  std::size_t wait = 0, steps = 0;
  bool done = false;
  for (std::size_t epoch = 0; epoch < cfg.epochs && !done; ++epoch) {
    Rng er = rng.split(1, epoch);
    auto order = pool;
    er.shuffle(order.begin(), order.end());
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t lo = 0; lo < order.size(); lo += half) {
      const std::size_t k = std::min(half, order.size() - lo);
      const auto rows = static_cast<Eigen::Index>(2 * k);
      nn::Matrix a(rows, f), b(rows, f), t(rows, 1);
      auto put = [&](Eigen::Index r, NodeId u, NodeId v) {
        for (Eigen::Index j = 0; j < f; ++j) {
          a(r, j) = x.row(u)[static_cast<std::size_t>(j)];
          b(r, j) = x.row(v)[static_cast<std::size_t>(j)];
        }
        t(r, 0) = y[u] == y[v] ? 1.0 : 0.0;
      };
      for (std::size_t i = 0; i < k; ++i) {
        put(static_cast<Eigen::Index>(i), order[lo + i].first, order[lo + i].second);
        NodeId u = 0, v = 0;
        for (int attempt = 0; attempt < 64; ++attempt) {
          u = nodes[er.below(nodes.size())];
          v = nodes[er.below(nodes.size())];
          if (u != v && !is_positive(u, v)) break;
        }
        put(static_cast<Eigen::Index>(k + i), u, v);
      }
      auto grad = siamese_loss_grad(model, a, b, t);
      auto params = model.parameters();
      auto views = grad.views();
      adam.step(params, views);
      rep.step_loss.push_back(grad.loss);
      sum += grad.loss * static_cast<double>(rows);
      count += static_cast<std::size_t>(rows);
      if (cfg.max_steps && ++steps >= cfg.max_steps) {
        done = true;
        break;
      }
    }
    const double loss = sum / static_cast<double>(count);
    rep.epoch_loss.push_back(loss);
    if (loss < best * (1.0 - cfg.min_delta)) {
      best = loss;
      wait = 0;
    } else if (++wait >= cfg.patience) {
      done = true;
    }
  }
  if (report) *report = std::move(rep);
  return model;
}

std::vector<std::uint8_t> encode_model(const SiameseModel& model) {
  binio::Writer w;
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(model.tower().layers().size()));
  w.u32(static_cast<std::uint32_t>(model.head().layers().size()));
  for (const auto* net : {&model.tower(), &model.head()}) {
    for (const auto& l : net->layers()) {
      w.u64(l.in());
      w.u64(l.out());
      w.u8(static_cast<std::uint8_t>(l.act));
      for (Eigen::Index i = 0; i < l.weight.size(); ++i) w.f64(l.weight.data()[i]);
      for (Eigen::Index i = 0; i < l.bias.size(); ++i) w.f64(l.bias[i]);
    }
  }
  w.crc();
  return std::move(w.buffer());
}

SiameseModel decode_model(std::span<const std::uint8_t> bytes) {
  binio::Reader head(bytes);
  head.expect_magic(kMagic, 4);
  const auto version = head.u32();
  if (version != kVersion) {
    throw FormatError("ags: unsupported model version " + std::to_string(version));
  }
  binio::Reader r(binio::check_crc(bytes));
  r.expect_magic(kMagic, 4);
  r.u32();
  const auto nt = r.u32();
  const auto nh = r.u32();
  auto read_net = [&](std::uint32_t count) {
    std::vector<nn::Dense> layers;
    for (std::uint32_t k = 0; k < count; ++k) {
      const auto in = r.u64();
      const auto out = r.u64();
      const auto act = r.u8();
      if (act > 2) throw FormatError("ags: bad activation code in model");
      if (in == 0 || out == 0 || in > r.remaining() || out > r.remaining() ||
          in * out > r.remaining() / 8) {
        throw FormatError("ags: truncated file");
      }
      nn::Dense l;
      l.act = static_cast<nn::Activation>(act);
      l.weight.resize(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
      for (Eigen::Index i = 0; i < l.weight.size(); ++i) l.weight.data()[i] = r.f64();
      l.bias.resize(static_cast<Eigen::Index>(out));
      for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias[i] = r.f64();
      if (!l.weight.allFinite() || !l.bias.allFinite()) {
        throw FormatError("ags: non-finite model parameter");
      }
      layers.push_back(std::move(l));
    }
    return layers;
  };
  auto tower = read_net(nt);
  auto headnet = read_net(nh);
  if (r.remaining() != 0) throw FormatError("ags: trailing bytes in model file");
  try {
    return SiameseModel(nn::DenseNet(std::move(tower)), nn::DenseNet(std::move(headnet)));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

void save_model(const SiameseModel& model, const std::filesystem::path& path) {
  binio::write_file(path, encode_model(model));
}

SiameseModel load_model(const std::filesystem::path& path) {
  return decode_model(binio::read_file(path));
}

double SimilarityFn::operator()(std::span<const double> a,
                                std::span<const double> b) const {
  switch (kind) {
    case SimKind::cosine: return cosine(a, b);
    case SimKind::neg_euclidean: return -squared_distance(a, b);
    case SimKind::learned:
      AGS_CHECK(model != nullptr, "learned similarity needs a model");
      return predict_edge_weight(*model, a, b);
  }
  return 0.0;
}

SimilarityFn make_similarity(SimKind kind, std::shared_ptr<const SiameseModel> model) {
  AGS_CHECK(kind != SimKind::learned || model != nullptr,
            "learned similarity needs a model");
  return SimilarityFn{kind, std::move(model)};
}

nn::Matrix pairwise_kernel(const nn::Matrix& p, const SimilarityFn& sim) {
  const auto m = p.rows();
  AGS_CHECK(m >= 1, "kernel needs at least one point");
  AGS_CHECK(p.allFinite(), "kernel: non-finite feature");
  nn::Matrix k(m, m);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::RowVectorXd r = p.row(i);
    pts[static_cast<std::size_t>(i)].assign(r.data(), r.data() + r.size());
  }
  switch (sim.kind) {
    case SimKind::cosine:
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j) {
          k(i, j) = k(j, i) = (cosine(pts[i], pts[j]) + 1.0) / 2.0;
        }
      }
      break;
    case SimKind::neg_euclidean: {
      double mx = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        k(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
          k(i, j) = k(j, i) = squared_distance(pts[i], pts[j]);
          mx = std::max(mx, k(i, j));
        }
      }
      k = (mx - k.array()).matrix();
      break;
    }
    case SimKind::learned: {
      AGS_CHECK(sim.model != nullptr, "learned similarity needs a model");
      // Score every unordered pair in one batch, then mirror.
      const auto pairs = m * (m + 1) / 2;
      nn::Matrix a(pairs, p.cols()), b(pairs, p.cols());
      Eigen::Index r = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j, ++r) {
          a.row(r) = p.row(i);
          b.row(r) = p.row(j);
        }
      }
      const nn::Matrix out = predict(*sim.model, a, b);
      r = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = i; j < m; ++j, ++r) k(i, j) = k(j, i) = out(r, 0);
      }
      break;
    }
  }
  return k;
}

nn::Matrix pairwise_kernel(const FeatureMatrix& x, std::span<const NodeId> rows,
                           const SimilarityFn& sim) {
  nn::Matrix p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(x.dim()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    AGS_CHECK(rows[i] < x.rows(), "kernel: row out of range");
    const auto src = x.row(rows[i]);
    for (std::size_t j = 0; j < src.size(); ++j) {
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = src[j];
    }
  }
  return pairwise_kernel(p, sim);
}

}  // namespace ags::similarity
