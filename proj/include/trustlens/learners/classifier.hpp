#pragma once

#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "json.hpp"
#include "trustlens/learners/matrix.hpp"
#include "trustlens/learners/mlp.hpp"
#include "trustlens/learners/random_forest.hpp"
#include "trustlens/learners/svm.hpp"
#include "trustlens/model.hpp"

namespace trustlens::learners {

/// Hyperparameters for every learner; `kind` selects the one used.
struct LearnerParams {
  LearnerKind kind = LearnerKind::random_forest;
  RandomForestParams forest;
  SvmParams svm;
  MlpParams mlp;

  /// Seeds all three learners at once.
  LearnerParams& with_seed(std::uint64_t seed) {
    forest.seed = seed;
    svm.seed = seed;
    mlp.seed = seed;
    return *this;
  }

  bool operator==(const LearnerParams&) const = default;
};

inline std::map<std::string, std::string> hyperparameter_map(const LearnerParams& p) {
  auto num = [](double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
  };
  switch (p.kind) {
    case LearnerKind::random_forest:
      return {{"n_trees", std::to_string(p.forest.n_trees)},
              {"max_depth", std::to_string(p.forest.max_depth)},
              {"min_split", std::to_string(p.forest.min_split)},
              {"max_features", std::to_string(p.forest.max_features)},
              {"seed", std::to_string(p.forest.seed)}};
    case LearnerKind::svm:
      return {{"c", num(p.svm.c)},
              {"kernel", p.svm.kernel == KernelKind::linear ? "linear" : "rbf"},
              {"gamma", num(p.svm.gamma)},
              {"tolerance", num(p.svm.tolerance)},
              {"seed", std::to_string(p.svm.seed)}};
    case LearnerKind::mlp: {
      std::string hidden;
      for (std::size_t i = 0; i < p.mlp.hidden.size(); ++i) {
        if (i) hidden += ',';
        hidden += std::to_string(p.mlp.hidden[i]);
      }
      return {{"hidden", hidden},
              {"activation", std::string(to_string(p.mlp.activation))},
              {"epochs", std::to_string(p.mlp.epochs)},
              {"lr", num(p.mlp.lr)},
              {"batch_size", std::to_string(p.mlp.batch_size)},
              {"alpha", num(p.mlp.alpha)},
              {"seed", std::to_string(p.mlp.seed)}};
    }
  }
  return {};
}

/// A trained probabilistic classifier of any supported kind.
class Classifier {
 public:
  Classifier() = default;
  explicit Classifier(RandomForest m) : model_(std::move(m)) {}
  explicit Classifier(Svm m) : model_(std::move(m)) {}
  explicit Classifier(Mlp m) : model_(std::move(m)) {}

  static Classifier train(const Matrix& x, std::span<const int> y, const LearnerParams& p) {
    switch (p.kind) {
      case LearnerKind::random_forest: return Classifier(RandomForest::fit(x, y, p.forest));
      case LearnerKind::svm: return Classifier(Svm::fit(x, y, p.svm));
      case LearnerKind::mlp: return Classifier(Mlp::fit(x, y, p.mlp));
    }
    throw ValidationError("unknown learner");
  }

  LearnerKind kind() const {
    switch (model_.index()) {
      case 1: return LearnerKind::svm;
      case 2: return LearnerKind::mlp;
      default: return LearnerKind::random_forest;
    }
  }

  Proba predict_proba(std::span<const double> row) const {
    return std::visit([&](const auto& m) { return m.predict_proba(row); }, model_);
  }

  int predict(std::span<const double> row) const { return argmax(predict_proba(row)); }

  std::vector<int> predict_all(const Matrix& x) const {
    std::vector<int> out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = predict(x.row(i));
    return out;
  }

  template <typename T>
  const T* as() const noexcept {
    return std::get_if<T>(&model_);
  }

  bool operator==(const Classifier&) const = default;

  friend void to_json(nlohmann::json& j, const Classifier& c) {
    j = nlohmann::json::object();
    j["format"] = "trustlens-model";
    j["version"] = 1;
    j["learner_kind"] = c.kind();
    std::visit([&](const auto& m) { j["model"] = m; }, c.model_);
  }

  friend void from_json(const nlohmann::json& j, Classifier& c) {
    if (j.value("format", "") != "trustlens-model") throw ValidationError("not a trustlens model snapshot");
    if (j.value("version", 0) != 1) throw ValidationError("unsupported model snapshot version");
    switch (j.at("learner_kind").get<LearnerKind>()) {
      case LearnerKind::random_forest: c.model_ = j.at("model").get<RandomForest>(); break;
      case LearnerKind::svm: c.model_ = j.at("model").get<Svm>(); break;
      case LearnerKind::mlp: c.model_ = j.at("model").get<Mlp>(); break;
    }
  }

 private:
  std::variant<RandomForest, Svm, Mlp> model_;
};

}  // namespace trustlens::learners
