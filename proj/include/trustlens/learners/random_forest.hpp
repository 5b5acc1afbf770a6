#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "json.hpp"
#include "trustlens/detail/random.hpp"
#include "trustlens/learners/matrix.hpp"

namespace trustlens::learners {

struct RandomForestParams {
  std::uint32_t n_trees = 100;
  std::uint32_t max_depth = 0;  // 0 = grow until pure
  std::uint32_t min_split = 2;
  std::uint32_t max_features = 0;  // 0 = floor(sqrt(d))
  std::uint64_t seed = 0;

  bool operator==(const RandomForestParams&) const = default;
};

/// CART classification tree with Gini impurity.
class DecisionTree {
 public:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t label = 0;

    bool operator==(const Node&) const = default;
  };

  DecisionTree() = default;
  explicit DecisionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  /// Grows a tree on the rows `sample` (may repeat) of `x`.
  static DecisionTree grow(const Matrix& x, std::span<const int> y, std::vector<std::size_t> sample,
                           const RandomForestParams& p, std::size_t mtry, trustlens::detail::Rng& rng) {
    DecisionTree t;
    Builder b{x, y, p, mtry, rng, t.nodes_};
    b.build(sample, 0);
    return t;
  }

  int predict(std::span<const double> row) const {
    std::int32_t i = 0;
    while (nodes_[i].feature >= 0) {
      const auto& n = nodes_[i];
      i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
    }
    return nodes_[i].label;
  }

  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  std::size_t depth() const {
    std::size_t best = 0;
    std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
      auto [i, d] = stack.back();
      stack.pop_back();
      best = std::max(best, d);
      if (nodes_[i].feature >= 0) {
        stack.push_back({nodes_[i].left, d + 1});
        stack.push_back({nodes_[i].right, d + 1});
      }
    }
    return best;
  }

  bool operator==(const DecisionTree&) const = default;

 private:
  struct Builder {
    const Matrix& x;
    std::span<const int> y;
    const RandomForestParams& p;
    std::size_t mtry;
    trustlens::detail::Rng& rng;
    std::vector<Node>& nodes;

    struct Split {
      std::int32_t feature = -1;
      double threshold = 0.0;
      double impurity = 0.0;
    };

    static double gini(double n0, double n1) {
      const double n = n0 + n1;
      if (n == 0.0) return 0.0;
      const double a = n0 / n, b = n1 / n;
      return 1.0 - a * a - b * b;
    }

    std::int32_t build(std::vector<std::size_t>& idx, std::size_t depth) {
      const auto me = static_cast<std::int32_t>(nodes.size());
      nodes.push_back({});
      std::size_t ones = 0;
      for (auto i : idx) ones += static_cast<std::size_t>(y[i] == 1);
      const std::size_t zeros = idx.size() - ones;
      nodes[me].label = ones > zeros ? 1 : 0;

      const bool pure = ones == 0 || zeros == 0;
      const bool depth_cap = p.max_depth != 0 && depth >= p.max_depth;
      if (pure || depth_cap || idx.size() < std::max<std::uint32_t>(2, p.min_split)) return me;

      const Split s = best_split(idx, static_cast<double>(zeros), static_cast<double>(ones));
      if (s.feature < 0) return me;

      std::vector<std::size_t> left, right;
      left.reserve(idx.size());
      right.reserve(idx.size());
      for (auto i : idx) {
        (x(i, static_cast<std::size_t>(s.feature)) <= s.threshold ? left : right).push_back(i);
      }
      idx.clear();
      idx.shrink_to_fit();
      nodes[me].feature = s.feature;
      nodes[me].threshold = s.threshold;
      const auto l = build(left, depth + 1);
      nodes[me].left = l;
      const auto r = build(right, depth + 1);
      nodes[me].right = r;
      return me;
    }

    // Examines random features until `mtry` non-constant ones have been
    // scored. Zero-gain splits are allowed so parity-like patterns can still
    // be separated deeper down.
    Split best_split(const std::vector<std::size_t>& idx, double zeros, double ones) {
      std::vector<std::size_t> order(x.cols());
      std::iota(order.begin(), order.end(), 0);
      Split best;
      double best_score = std::numeric_limits<double>::infinity();
      std::size_t examined = 0;
      std::vector<std::pair<double, int>> col(idx.size());
      const double n = static_cast<double>(idx.size());
      for (std::size_t k = 0; k < order.size() && examined < mtry; ++k) {
        const std::size_t pick = k + trustlens::detail::uniform_index(rng, order.size() - k);
        std::swap(order[k], order[pick]);
        const std::size_t f = order[k];
        for (std::size_t i = 0; i < idx.size(); ++i) col[i] = {x(idx[i], f), y[idx[i]]};
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (col.front().first == col.back().first) continue;
        ++examined;
        double l0 = 0.0, l1 = 0.0;
        for (std::size_t i = 0; i + 1 < col.size(); ++i) {
          (col[i].second == 1 ? l1 : l0) += 1.0;
          if (col[i].first == col[i + 1].first) continue;
          const double nl = static_cast<double>(i + 1);
          const double nr = n - nl;
          const double score = nl * gini(l0, l1) + nr * gini(zeros - l0, ones - l1);
          if (score < best_score) {
            best_score = score;
            best.feature = static_cast<std::int32_t>(f);
            best.threshold = col[i].first + (col[i + 1].first - col[i].first) / 2.0;
            if (!(best.threshold < col[i + 1].first)) best.threshold = col[i].first;
          }
        }
      }
      best.impurity = best_score;
      return best;
    }
  };

  std::vector<Node> nodes_;
};

/// Bagged CART trees; predict_proba is the fraction of tree votes.
class RandomForest {
 public:
  RandomForest() = default;

  static RandomForest fit(const Matrix& x, std::span<const int> y, const RandomForestParams& params = {}) {
    detail::check_training_set(x, y);
    if (params.n_trees == 0) throw ValidationError("n_trees must be positive");
    RandomForest rf;
    rf.params_ = params;
    rf.width_ = x.cols();
    const std::size_t d = x.cols();
    const std::size_t mtry =
        params.max_features == 0
            ? std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))))
            : std::min<std::size_t>(params.max_features, d);
    rf.trees_.reserve(params.n_trees);
    for (std::uint32_t t = 0; t < params.n_trees; ++t) {
      trustlens::detail::Rng rng(trustlens::detail::mix_seed(params.seed, t));
      std::vector<std::size_t> sample(x.rows());
      for (auto& s : sample) s = trustlens::detail::uniform_index(rng, x.rows());
      rf.trees_.push_back(DecisionTree::grow(x, y, std::move(sample), params, mtry, rng));
    }
    return rf;
  }

  Proba predict_proba(std::span<const double> row) const {
    detail::check_width(row, width_);
    std::size_t votes = 0;
    for (const auto& t : trees_) votes += static_cast<std::size_t>(t.predict(row));
    const double p1 = static_cast<double>(votes) / static_cast<double>(trees_.size());
    return {1.0 - p1, p1};
  }

  int predict(std::span<const double> row) const { return argmax(predict_proba(row)); }

  const RandomForestParams& params() const noexcept { return params_; }
  const std::vector<DecisionTree>& trees() const noexcept { return trees_; }
  std::size_t width() const noexcept { return width_; }

  bool operator==(const RandomForest&) const = default;

  friend void to_json(nlohmann::json& j, const RandomForest& rf) {
    j = nlohmann::json::object();
    j["params"] = {{"n_trees", rf.params_.n_trees},
                   {"max_depth", rf.params_.max_depth},
                   {"min_split", rf.params_.min_split},
                   {"max_features", rf.params_.max_features},
                   {"seed", rf.params_.seed}};
    j["width"] = rf.width_;
    auto& trees = j["trees"] = nlohmann::json::array();
    for (const auto& t : rf.trees_) {
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto& n : t.nodes()) nodes.push_back({n.feature, n.threshold, n.left, n.right, n.label});
      trees.push_back(std::move(nodes));
    }
  }

  friend void from_json(const nlohmann::json& j, RandomForest& rf) {
    const auto& p = j.at("params");
    rf.params_.n_trees = p.at("n_trees").get<std::uint32_t>();
    rf.params_.max_depth = p.at("max_depth").get<std::uint32_t>();
    rf.params_.min_split = p.at("min_split").get<std::uint32_t>();
    rf.params_.max_features = p.at("max_features").get<std::uint32_t>();
    rf.params_.seed = p.at("seed").get<std::uint64_t>();
    rf.width_ = j.at("width").get<std::size_t>();
    rf.trees_.clear();
    for (const auto& tj : j.at("trees")) {
      std::vector<DecisionTree::Node> nodes;
      for (const auto& n : tj) {
        nodes.push_back({n.at(0).get<std::int32_t>(), n.at(1).get<double>(), n.at(2).get<std::int32_t>(),
                         n.at(3).get<std::int32_t>(), n.at(4).get<std::int32_t>()});
      }
      if (nodes.empty()) throw ValidationError("empty tree in model snapshot");
      rf.trees_.emplace_back(std::move(nodes));
    }
    if (rf.trees_.empty()) throw ValidationError("random forest snapshot has no trees");
  }

 private:
  RandomForestParams params_;
  std::size_t width_ = 0;
  std::vector<DecisionTree> trees_;
};

}  // namespace trustlens::learners
