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

#include "ags/nn.hpp"

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>

#include "ags/common.hpp"

namespace ags::nn {

Dense make_dense(std::size_t in, std::size_t out, Activation act, Rng& rng) {
  Dense d;
  const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
  d.weight.resize(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in));
  // Fill column-major so the draw order is tied to the storage layout.
  for (Eigen::Index i = 0; i < d.weight.size(); ++i) {
    d.weight.data()[i] = (2.0 * rng.uniform() - 1.0) * limit;
  }
  d.bias = RowVector::Zero(static_cast<Eigen::Index>(out));
  d.act = act;
  return d;
}

DenseNet::DenseNet(std::span<const std::size_t> dims,
                   std::span<const Activation> acts, Rng& rng) {
  AGS_CHECK(dims.size() == acts.size() + 1, "need one activation per layer");
  for (std::size_t i = 0; i < acts.size(); ++i) {
    AGS_CHECK(dims[i] > 0 && dims[i + 1] > 0, "layer dims must be positive");
    layers_.push_back(make_dense(dims[i], dims[i + 1], acts[i], rng));
  }
}

DenseNet::DenseNet(std::vector<Dense> layers) : layers_(std::move(layers)) {
  check_chain();
}

DenseNet DenseNet::identity(std::size_t dim) {
  Dense d;
  d.weight = Matrix::Identity(static_cast<Eigen::Index>(dim),
                              static_cast<Eigen::Index>(dim));
  d.bias = RowVector::Zero(static_cast<Eigen::Index>(dim));
  return DenseNet({d});
}

void DenseNet::check_chain() const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    AGS_CHECK(layers_[i].bias.size() == layers_[i].weight.rows(),
              "bias length differs from layer width");
    AGS_CHECK(i == 0 || layers_[i].in() == layers_[i - 1].out(),
              "layer dims do not chain");
  }
}

std::size_t DenseNet::input_dim() const {
  return layers_.empty() ? 0 : layers_.front().in();
}
std::size_t DenseNet::output_dim() const {
  return layers_.empty() ? 0 : layers_.back().out();
}

std::size_t DenseNet::num_parameters() const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  }
  return n;
}

std::vector<std::span<double>> DenseNet::parameters() {
  std::vector<std::span<double>> out;
  for (auto& l : layers_) {
    out.emplace_back(l.weight.data(), static_cast<std::size_t>(l.weight.size()));
    out.emplace_back(l.bias.data(), static_cast<std::size_t>(l.bias.size()));
  }
  return out;
}

Matrix activate(const Matrix& z, Activation act) {
  switch (act) {
    case Activation::identity: return z;
    case Activation::relu: return z.cwiseMax(0.0);
    case Activation::sigmoid:
      return z.unaryExpr([](double v) {
        // Split by sign so exp never overflows.
        if (v >= 0) return 1.0 / (1.0 + std::exp(-v));
        const double e = std::exp(v);
        return e / (1.0 + e);
      });
  }
  return z;
}

Matrix activation_backward(const Matrix& z, const Matrix& y, Activation act,
                           const Matrix& grad_y) {
  switch (act) {
    case Activation::identity: return grad_y;
    case Activation::relu:
      return grad_y.cwiseProduct(
          z.unaryExpr([](double v) { return v > 0.0 ? 1.0 : 0.0; }));
    case Activation::sigmoid:
      return grad_y.cwiseProduct(y.cwiseProduct((1.0 - y.array()).matrix()));
  }
  return grad_y;
}

Matrix forward(const DenseNet& net, const Matrix& x, ForwardCache* cache) {
  AGS_CHECK(static_cast<std::size_t>(x.cols()) == net.input_dim(),
            "input width " + std::to_string(x.cols()) + " != net input " +
                std::to_string(net.input_dim()));
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
    cache->post.clear();
  }
  Matrix h = x;
  for (const auto& l : net.layers()) {
    Matrix z = (h * l.weight.transpose()).rowwise() + l.bias;
    Matrix y = activate(z, l.act);
    if (cache) {
      cache->inputs.push_back(std::move(h));
      cache->pre.push_back(std::move(z));
      cache->post.push_back(y);
    }
    h = std::move(y);
  }
  return h;
}

Gradients backward(const DenseNet& net, const ForwardCache& cache,
                   const Matrix& grad_out) {
  const auto& layers = net.layers();
  AGS_CHECK(cache.inputs.size() == layers.size(), "forward cache does not match net");
  Gradients g;
  g.weight.resize(layers.size());
  g.bias.resize(layers.size());
  Matrix grad = grad_out;
  for (std::size_t i = layers.size(); i-- > 0;) {
    AGS_CHECK(grad.rows() == cache.post[i].rows() && grad.cols() == cache.post[i].cols(),
              "gradient shape mismatch");
    Matrix dz = activation_backward(cache.pre[i], cache.post[i], layers[i].act, grad);
    g.weight[i] = dz.transpose() * cache.inputs[i];
    g.bias[i] = dz.colwise().sum();
    grad = dz * layers[i].weight;
  }
  g.input = std::move(grad);
  return g;
}

std::vector<std::span<const double>> Gradients::views() const {
  std::vector<std::span<const double>> out;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    out.emplace_back(weight[i].data(), static_cast<std::size_t>(weight[i].size()));
    out.emplace_back(bias[i].data(), static_cast<std::size_t>(bias[i].size()));
  }
  return out;
}

void Adam::step(std::span<const std::span<double>> params,
                std::span<const std::span<const double>> grads) {
  AGS_CHECK(params.size() == grads.size(), "adam: parameter/gradient count mismatch");
  if (m_.empty()) {
    for (const auto& p : params) {
      m_.emplace_back(p.size(), 0.0);
      v_.emplace_back(p.size(), 0.0);
    }
  }
  AGS_CHECK(m_.size() == params.size(), "adam: parameter set changed");
  for (std::size_t k = 0; k < params.size(); ++k) {
    AGS_CHECK(params[k].size() == grads[k].size() && params[k].size() == m_[k].size(),
              "adam: shape mismatch in tensor " + std::to_string(k));
    for (std::size_t i = 0; i < grads[k].size(); ++i) {
      if (!std::isfinite(grads[k][i])) {
        std::ostringstream os;
        os << "ags: non-finite gradient (tensor " << k << ", entry " << i
           << ", value " << grads[k][i] << ") at adam step " << t_ + 1;
        throw Error(os.str());
      }
    }
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(opt_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(opt_.beta2, static_cast<double>(t_));
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto& m = m_[k];
    auto& v = v_[k];
    for (std::size_t i = 0; i < params[k].size(); ++i) {
      const double g = grads[k][i];
      m[i] = opt_.beta1 * m[i] + (1.0 - opt_.beta1) * g;
      v[i] = opt_.beta2 * v[i] + (1.0 - opt_.beta2) * g * g;
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      params[k][i] -= opt_.lr * mhat / (std::sqrt(vhat) + opt_.eps);
    }
  }
}

Loss mse(const Matrix& pred, const Matrix& target) {
  AGS_CHECK(pred.rows() == target.rows() && pred.cols() == target.cols(),
            "mse: shape mismatch");
  AGS_CHECK(pred.size() > 0, "mse: empty batch");
  const double n = static_cast<double>(pred.size());
  Matrix diff = pred - target;
  return {diff.squaredNorm() / n, (2.0 / n) * diff};
}

Matrix softmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    auto e = (logits.row(i).array() - mx).exp();
    out.row(i) = e / e.sum();
  }
  return out;
}

Loss softmax_cross_entropy(const Matrix& logits,
                           std::span<const std::int32_t> classes) {
  AGS_CHECK(logits.rows() > 0, "cross-entropy: empty batch");
  AGS_CHECK(static_cast<std::size_t>(logits.rows()) == classes.size(),
            "cross-entropy: label count mismatch");
  const double b = static_cast<double>(logits.rows());
  Loss out;
  out.grad = softmax(logits);
  double total = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const auto k = classes[static_cast<std::size_t>(i)];
    AGS_CHECK(k >= 0 && k < logits.cols(), "cross-entropy: class out of range");
    const double mx = logits.row(i).maxCoeff();
    const double lse = mx + std::log((logits.row(i).array() - mx).exp().sum());
    total += lse - logits(i, k);
    out.grad(i, k) -= 1.0;
  }
  out.grad /= b;
  out.value = total / b;
  return out;
}

std::vector<std::int32_t> argmax_rows(const Matrix& scores) {
  std::vector<std::int32_t> out(static_cast<std::size_t>(scores.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    scores.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
  }
  return out;
}

double micro_f1(std::span<const std::int32_t> predicted,
                std::span<const std::int32_t> truth) {
  AGS_CHECK(predicted.size() == truth.size(), "micro-F1: length mismatch");
  AGS_CHECK(!predicted.empty(), "micro-F1: empty batch");
  std::map<std::int32_t, std::array<std::size_t, 3>> counts;  // tp, fp, fn
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) {
      ++counts[truth[i]][0];
    } else {
      ++counts[predicted[i]][1];
      ++counts[truth[i]][2];
    }
  }
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [cls, c] : counts) {
    tp += c[0];
    fp += c[1];
    fn += c[2];
  }
  const double denom = static_cast<double>(2 * tp + fp + fn);
  return denom > 0.0 ? 2.0 * static_cast<double>(tp) / denom : 0.0;
}

}  // namespace ags::nn
