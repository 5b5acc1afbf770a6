#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "trustlens/learners/classifier.hpp"

using namespace trustlens;
using namespace trustlens::learners;
using testing_support::accuracy;
using testing_support::blobs;
using testing_support::circles;
using testing_support::predict_rows;
using testing_support::xor4;

namespace {

template <typename Model>
void expect_proba_contract(const Model& m, const Matrix& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto p = m.predict_proba(x.row(i));
    ASSERT_GE(p[0], 0.0);
    ASSERT_GE(p[1], 0.0);
    ASSERT_LE(p[0], 1.0);
    ASSERT_LE(p[1], 1.0);
    ASSERT_NEAR(p[0] + p[1], 1.0, 1e-9);
    ASSERT_EQ(m.predict(x.row(i)), argmax(p));
  }
}

}  // namespace

TEST(RandomForest, SeparatedBlobs) {
  const auto d = blobs(200, 7);
  RandomForestParams p;
  p.seed = 7;
  const auto rf = RandomForest::fit(d.x, d.y, p);
  EXPECT_GE(accuracy(d.y, predict_rows(rf, d.x)), 0.99);
  expect_proba_contract(rf, d.x);
}

TEST(RandomForest, FitsXor) {
  const auto d = xor4();
  RandomForestParams p;
  p.max_features = 2;
  p.seed = 1;
  // bagging may leave a corner out of a tree; the ensemble still gets all four
  const auto rf = RandomForest::fit(d.x, d.y, p);
  EXPECT_EQ(predict_rows(rf, d.x), d.y);
}

TEST(RandomForest, DuplicatedPointGetsCertainVote) {
  std::vector<std::vector<double>> rows(12, {0.2, 0.8});
  rows.push_back({0.9, 0.1});
  std::vector<int> y(12, 1);
  y.push_back(0);
  const auto rf = RandomForest::fit(Matrix::from_rows(rows), y);
  const std::vector<double> q{0.2, 0.8};
  EXPECT_EQ(rf.predict_proba(q)[1], 1.0);
}

TEST(RandomForest, MoreTreesLessVariance) {
  const auto d = blobs(120, 3, 2.0);
  const std::vector<double> q{0.1, -0.2};
  auto spread = [&](std::uint32_t trees) {
    double lo = 1.0, hi = 0.0;
    for (std::uint64_t s = 0; s < 8; ++s) {
      RandomForestParams p;
      p.n_trees = trees;
      p.seed = s;
      const double v = RandomForest::fit(d.x, d.y, p).predict_proba(q)[1];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  };
  EXPECT_LT(spread(200), spread(10));
}

TEST(RandomForest, DeterministicAndValidated) {
  const auto d = blobs(80, 2, 2.0);
  RandomForestParams p;
  p.seed = 4;
  const auto a = RandomForest::fit(d.x, d.y, p);
  const auto b = RandomForest::fit(d.x, d.y, p);
  for (std::size_t i = 0; i < d.x.rows(); ++i) ASSERT_EQ(a.predict_proba(d.x.row(i)), b.predict_proba(d.x.row(i)));
  EXPECT_THROW(RandomForest::fit(d.x, std::vector<int>(80, 1)), ValidationError);
  EXPECT_THROW(a.predict_proba(std::vector<double>{1.0}), ValidationError);
}

TEST(Svm, TwoPoints) {
  const auto x = Matrix::from_rows({{0.0, 0.0}, {1.0, 1.0}});
  const std::vector<int> y{0, 1};
  SvmParams p;
  p.kernel = KernelKind::linear;
  const auto m = Svm::fit(x, y, p);
  EXPECT_GT(m.decision_value(x.row(1)), 0.0);
  EXPECT_LT(m.decision_value(x.row(0)), 0.0);
  EXPECT_GT(m.predict_proba(x.row(1))[1], 0.5);
}

TEST(Svm, LinearBlobs) {
  const auto d = blobs(200, 7);
  SvmParams p;
  p.kernel = KernelKind::linear;
  const auto m = Svm::fit(d.x, d.y, p);
  EXPECT_GE(accuracy(d.y, predict_rows(m, d.x)), 0.99);
  expect_proba_contract(m, d.x);
}

TEST(Svm, CirclesNeedRbf) {
  const auto d = circles(300, 9);
  const auto rbf = Svm::fit(d.x, d.y);
  SvmParams lin;
  lin.kernel = KernelKind::linear;
  const auto linear = Svm::fit(d.x, d.y, lin);
  EXPECT_GE(accuracy(d.y, predict_rows(rbf, d.x)), 0.95);
  EXPECT_LE(accuracy(d.y, predict_rows(linear, d.x)), 0.6);
}

TEST(Svm, ConvergenceDiagnostics) {
  const auto d = blobs(200, 12, 2.0);
  const auto m = Svm::fit(d.x, d.y);
  const auto& g = m.diagnostics();
  EXPECT_LE(g.kkt_violation, m.params().tolerance);
  EXPECT_LE(std::abs(g.duality_gap), 1e-2 * std::abs(g.primal_objective));
  SvmParams tight;
  tight.max_iterations = 1;
  EXPECT_THROW(Svm::fit(d.x, d.y, tight), SvmConvergenceError);
}

TEST(Mlp, BlobsAllActivations) {
  const auto d = blobs(200, 7);
  for (auto a : {Activation::tanh, Activation::relu, Activation::logistic}) {
    MlpParams p;
    p.activation = a;
    p.lr = 0.01;
    const auto m = Mlp::fit(d.x, d.y, p);
    EXPECT_GE(accuracy(d.y, predict_rows(m, d.x)), 0.98) << to_string(a);
    expect_proba_contract(m, d.x);
  }
}

TEST(Mlp, Xor) {
  const auto d = xor4();
  MlpParams p;
  p.hidden = {4};
  p.epochs = 2000;
  p.lr = 0.05;
  p.alpha = 0.0;
  p.seed = 1;
  const auto m = Mlp::fit(d.x, d.y, p);
  EXPECT_EQ(predict_rows(m, d.x), d.y);
}

TEST(Mlp, ZeroEpochsStillProbabilities) {
  const auto d = blobs(20, 1);
  MlpParams p;
  p.epochs = 0;
  const auto m = Mlp::fit(d.x, d.y, p);
  expect_proba_contract(m, d.x);
}

TEST(Mlp, GradientMatchesFiniteDifferences) {
  const auto d = blobs(5, 21, 1.0);
  for (auto a : {Activation::tanh, Activation::relu, Activation::logistic}) {
    MlpParams p;
    p.hidden = {6, 3};
    p.activation = a;
    p.alpha = 1e-2;
    p.seed = 5;
    auto m = Mlp::init(2, p);
    std::vector<double> grad;
    m.loss_and_gradient(d.x, d.y, grad);
    auto w = m.weights();
    ASSERT_EQ(grad.size(), w.size());
    const double h = 1e-6;
    for (std::size_t k = 0; k < w.size(); ++k) {
      auto wp = w, wm = w;
      wp[k] += h;
      wm[k] -= h;
      m.set_weights(wp);
      const double lp = m.loss(d.x, d.y);
      m.set_weights(wm);
      const double lm = m.loss(d.x, d.y);
      const double numeric = (lp - lm) / (2 * h);
      const double rel = std::abs(numeric - grad[k]) / std::max(1.0, std::abs(numeric) + std::abs(grad[k]));
      ASSERT_LE(rel, 1e-5) << to_string(a) << " weight " << k;
    }
    m.set_weights(w);
  }
}

TEST(Mlp, DivergenceReported) {
  const auto d = blobs(50, 2);
  MlpParams p;
  p.optimizer = Optimizer::sgd;
  p.lr = 1e200;
  p.alpha = 0.0;
  p.activation = Activation::relu;
  try {
    Mlp::fit(d.x, d.y, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "diverged; lower lr");
  }
}

TEST(Classifier, JsonRoundTripPreservesPredictions) {
  const auto d = blobs(60, 8, 3.0);
  for (auto kind : {LearnerKind::random_forest, LearnerKind::svm, LearnerKind::mlp}) {
    LearnerParams p;
    p.kind = kind;
    p.forest.n_trees = 20;
    p.mlp.epochs = 30;
    p.with_seed(3);
    const auto c = Classifier::train(d.x, d.y, p);
    EXPECT_EQ(c.kind(), kind);
    const auto back = nlohmann::json::parse(nlohmann::json(c).dump()).get<Classifier>();
    for (std::size_t i = 0; i < d.x.rows(); ++i) {
      ASSERT_EQ(back.predict_proba(d.x.row(i)), c.predict_proba(d.x.row(i)));
    }
    EXPECT_FALSE(hyperparameter_map(p).empty());
  }
  EXPECT_THROW(nlohmann::json::object().get<Classifier>(), ValidationError);
}
