#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trustlens/detail/random.hpp"
#include "trustlens/learners/matrix.hpp"

namespace trustlens::learners {

enum class Activation { tanh, relu, logistic };

inline std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::tanh: return "tanh";
    case Activation::relu: return "relu";
    case Activation::logistic: return "logistic";
  }
  return "tanh";
}

inline Activation activation_from_string(std::string_view s) {
  if (s == "tanh") return Activation::tanh;
  if (s == "relu") return Activation::relu;
  if (s == "logistic") return Activation::logistic;
  throw ValidationError("unknown activation '" + std::string(s) + "'");
}

enum class Optimizer { adam, sgd };

struct MlpParams {
  std::vector<std::size_t> hidden{50};
  Activation activation = Activation::tanh;
  std::uint32_t epochs = 200;
  double lr = 0.001;
  std::size_t batch_size = 200;
  double alpha = 1e-4;  // L2 penalty
  Optimizer optimizer = Optimizer::adam;
  std::uint64_t seed = 0;

  bool operator==(const MlpParams&) const = default;
};

/// Feed-forward network with a two-unit softmax output trained on
/// cross-entropy by mini-batch gradient descent.
class Mlp {
 public:
  Mlp() = default;

  /// An initialized, untrained network.
  static Mlp init(std::size_t inputs, const MlpParams& params) {
    Mlp m;
    m.params_ = params;
    m.sizes_.push_back(inputs);
    for (auto h : params.hidden) {
      if (h == 0) throw ValidationError("hidden layer width must be positive");
      m.sizes_.push_back(h);
    }
    m.sizes_.push_back(2);
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < m.sizes_.size(); ++l) total += m.sizes_[l + 1] * (m.sizes_[l] + 1);
    m.weights_.assign(total, 0.0);
    trustlens::detail::Rng rng(trustlens::detail::mix_seed(params.seed, 0x4D4C50));
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < m.sizes_.size(); ++l) {
      const double fan_in = static_cast<double>(m.sizes_[l]);
      const double fan_out = static_cast<double>(m.sizes_[l + 1]);
      double bound = std::sqrt(6.0 / (fan_in + fan_out));
      if (params.activation == Activation::logistic) bound *= std::sqrt(2.0);
      const std::size_t count = m.sizes_[l + 1] * (m.sizes_[l] + 1);
      for (std::size_t k = 0; k < count; ++k) m.weights_[off + k] = trustlens::detail::uniform(rng, -bound, bound);
      off += count;
    }
    return m;
  }

  static Mlp fit(const Matrix& x, std::span<const int> y, const MlpParams& params = {}) {
    detail::check_training_set(x, y);
    Mlp m = init(x.cols(), params);
    m.train(x, y);
    return m;
  }

  Proba predict_proba(std::span<const double> row) const {
    detail::check_width(row, sizes_.front());
    std::vector<std::vector<double>> acts;
    forward(row, acts);
    return {acts.back()[0], acts.back()[1]};
  }

  int predict(std::span<const double> row) const { return argmax(predict_proba(row)); }

  /// Mean cross-entropy over the rows plus the L2 term, and its gradient
  /// with respect to weights() (same layout).
  double loss_and_gradient(const Matrix& x, std::span<const int> y, std::vector<double>& grad) const {
    std::vector<std::size_t> idx(x.rows());
    std::iota(idx.begin(), idx.end(), 0);
    return batch_loss(x, y, idx, grad);
  }

  double loss(const Matrix& x, std::span<const int> y) const {
    std::vector<double> g;
    return loss_and_gradient(x, y, g);
  }

  const std::vector<double>& weights() const noexcept { return weights_; }
  void set_weights(std::vector<double> w) {
    if (w.size() != weights_.size()) throw ValidationError("weight vector size mismatch");
    weights_ = std::move(w);
  }
  const std::vector<std::size_t>& layer_sizes() const noexcept { return sizes_; }
  const MlpParams& params() const noexcept { return params_; }
  double final_loss() const noexcept { return final_loss_; }

  bool operator==(const Mlp&) const = default;

  friend void to_json(nlohmann::json& j, const Mlp& m) {
    j = nlohmann::json::object();
    j["params"] = {{"hidden", m.params_.hidden},
                   {"activation", to_string(m.params_.activation)},
                   {"epochs", m.params_.epochs},
                   {"lr", m.params_.lr},
                   {"batch_size", m.params_.batch_size},
                   {"alpha", m.params_.alpha},
                   {"optimizer", m.params_.optimizer == Optimizer::adam ? "adam" : "sgd"},
                   {"seed", m.params_.seed}};
    j["layer_sizes"] = m.sizes_;
    j["weights"] = m.weights_;
    j["final_loss"] = m.final_loss_;
  }

  friend void from_json(const nlohmann::json& j, Mlp& m) {
    const auto& p = j.at("params");
    m.params_.hidden = p.at("hidden").get<std::vector<std::size_t>>();
    m.params_.activation = activation_from_string(p.at("activation").get<std::string>());
    m.params_.epochs = p.at("epochs").get<std::uint32_t>();
    m.params_.lr = p.at("lr").get<double>();
    m.params_.batch_size = p.at("batch_size").get<std::size_t>();
    m.params_.alpha = p.at("alpha").get<double>();
    m.params_.optimizer = p.at("optimizer").get<std::string>() == "sgd" ? Optimizer::sgd : Optimizer::adam;
    m.params_.seed = p.at("seed").get<std::uint64_t>();
    m.sizes_ = j.at("layer_sizes").get<std::vector<std::size_t>>();
    m.weights_ = j.at("weights").get<std::vector<double>>();
    m.final_loss_ = j.value("final_loss", 0.0);
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < m.sizes_.size(); ++l) total += m.sizes_[l + 1] * (m.sizes_[l] + 1);
    if (m.sizes_.size() < 2 || m.sizes_.back() != 2 || total != m.weights_.size()) {
      throw ValidationError("MLP snapshot layer sizes do not match weights");
    }
  }

 private:
  // Layer l maps sizes_[l] -> sizes_[l+1]; its block stores, per output unit,
  // the input weights followed by the bias.
  std::size_t layer_offset(std::size_t l) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < l; ++k) off += sizes_[k + 1] * (sizes_[k] + 1);
    return off;
  }

  double activate(double z) const {
    switch (params_.activation) {
      case Activation::tanh: return std::tanh(z);
      case Activation::relu: return z > 0.0 ? z : 0.0;
      case Activation::logistic: return 1.0 / (1.0 + std::exp(-z));
    }
    return z;
  }

  // Derivative expressed through the activation output a = f(z).
  double activate_grad(double a) const {
    switch (params_.activation) {
      case Activation::tanh: return 1.0 - a * a;
      case Activation::relu: return a > 0.0 ? 1.0 : 0.0;
      case Activation::logistic: return a * (1.0 - a);
    }
    return 1.0;
  }

  void forward(std::span<const double> row, std::vector<std::vector<double>>& acts) const {
    acts.assign(sizes_.size(), {});
    acts[0].assign(row.begin(), row.end());
    const std::size_t layers = sizes_.size() - 1;
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = sizes_[l], out = sizes_[l + 1];
      const double* w = weights_.data() + layer_offset(l);
      auto& a = acts[l + 1];
      a.assign(out, 0.0);
      for (std::size_t o = 0; o < out; ++o) {
        const double* wo = w + o * (in + 1);
        double z = wo[in];
        for (std::size_t k = 0; k < in; ++k) z += wo[k] * acts[l][k];
        a[o] = z;
      }
      if (l + 1 < layers) {
        for (auto& v : a) v = activate(v);
      } else {
        const double mx = std::max(a[0], a[1]);
        const double e0 = std::exp(a[0] - mx), e1 = std::exp(a[1] - mx);
        a[0] = e0 / (e0 + e1);
        a[1] = e1 / (e0 + e1);
      }
    }
  }

  double batch_loss(const Matrix& x, std::span<const int> y, std::span<const std::size_t> idx,
                    std::vector<double>& grad) const {
    grad.assign(weights_.size(), 0.0);
    const std::size_t layers = sizes_.size() - 1;
    std::vector<std::vector<double>> acts;
    std::vector<std::vector<double>> deltas(sizes_.size());
    double loss = 0.0;
    for (auto r : idx) {
      forward(x.row(r), acts);
      const auto& out = acts.back();
      const int t = y[r];
      loss -= std::log(std::max(out[static_cast<std::size_t>(t)], 1e-300));
      deltas[layers] = {out[0] - (t == 0 ? 1.0 : 0.0), out[1] - (t == 1 ? 1.0 : 0.0)};
      for (std::size_t l = layers; l-- > 0;) {
        const std::size_t in = sizes_[l], outn = sizes_[l + 1];
        const std::size_t off = layer_offset(l);
        const double* w = weights_.data() + off;
        double* g = grad.data() + off;
        const auto& d = deltas[l + 1];
        for (std::size_t o = 0; o < outn; ++o) {
          double* go = g + o * (in + 1);
          for (std::size_t k = 0; k < in; ++k) go[k] += d[o] * acts[l][k];
          go[in] += d[o];
        }
        if (l > 0) {
          auto& dl = deltas[l];
          dl.assign(in, 0.0);
          for (std::size_t o = 0; o < outn; ++o) {
            const double* wo = w + o * (in + 1);
            for (std::size_t k = 0; k < in; ++k) dl[k] += wo[k] * d[o];
          }
          for (std::size_t k = 0; k < in; ++k) dl[k] *= activate_grad(acts[l][k]);
        }
      }
    }
    const double n = static_cast<double>(idx.size());
    loss /= n;
    for (auto& v : grad) v /= n;
    // L2 on weights, not biases.
    double reg = 0.0;
    for (std::size_t l = 0; l < layers; ++l) {
      const std::size_t in = sizes_[l], outn = sizes_[l + 1];
      const std::size_t off = layer_offset(l);
      for (std::size_t o = 0; o < outn; ++o) {
        for (std::size_t k = 0; k < in; ++k) {
          const double w = weights_[off + o * (in + 1) + k];
          reg += w * w;
          grad[off + o * (in + 1) + k] += params_.alpha * w;
        }
      }
    }
    return loss + 0.5 * params_.alpha * reg;
  }

  void train(const Matrix& x, std::span<const int> y) {
    const std::size_t n = x.rows();
    const std::size_t batch = std::clamp<std::size_t>(params_.batch_size, 1, n);
    trustlens::detail::Rng rng(trustlens::detail::mix_seed(params_.seed, 0x5348));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad, m1(weights_.size(), 0.0), m2(weights_.size(), 0.0);
    const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    std::uint64_t step = 0;
    for (std::uint32_t epoch = 0; epoch < params_.epochs; ++epoch) {
      trustlens::detail::shuffle(order, rng);
      double epoch_loss = 0.0;
      for (std::size_t start = 0; start < n; start += batch) {
        const std::size_t len = std::min(batch, n - start);
        const std::span<const std::size_t> idx(order.data() + start, len);
        const double l = batch_loss(x, y, idx, grad);
        if (!std::isfinite(l)) throw Error("diverged; lower lr");
        epoch_loss += l * static_cast<double>(len);
        ++step;
        if (params_.optimizer == Optimizer::adam) {
          const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
          const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
          for (std::size_t k = 0; k < weights_.size(); ++k) {
            m1[k] = beta1 * m1[k] + (1.0 - beta1) * grad[k];
            m2[k] = beta2 * m2[k] + (1.0 - beta2) * grad[k] * grad[k];
            weights_[k] -= params_.lr * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + eps);
          }
        } else {
          for (std::size_t k = 0; k < weights_.size(); ++k) weights_[k] -= params_.lr * grad[k];
        }
      }
      final_loss_ = epoch_loss / static_cast<double>(n);
      if (!std::isfinite(final_loss_)) throw Error("diverged; lower lr");
    }
  }

  MlpParams params_;
  std::vector<std::size_t> sizes_;
  std::vector<double> weights_;
  double final_loss_ = 0.0;
};

}  // namespace trustlens::learners
