#include <gtest/gtest.h>

#include <set>

#include "support/helpers.hpp"
#include "trustlens/active.hpp"

using namespace trustlens;
using namespace trustlens::active;

namespace {

const preprocess::FeatureSet kMask2{Feature::followers, Feature::friends};

FeatureVector point(const std::string& id, double a, double b) {
  FeatureVector v;
  v.user_id = id;
  v[Feature::followers] = a;
  v[Feature::friends] = b;
  v.normalized = true;
  return v;
}

std::string id_of(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "p%05zu", i);
  return buf;
}

// Blob points as a pool: the first `seed` points are labeled.
struct BlobPool {
  Pool pool;
  std::unordered_map<std::string, Label> truth;
};

BlobPool blob_pool(std::size_t n, std::size_t seed, std::size_t batch, std::uint64_t rng_seed, double sep) {
  const auto d = testing_support::blobs(n, rng_seed, sep);
  BlobPool b;
  b.pool.batch_size = batch;
  for (std::size_t i = 0; i < n; ++i) {
    auto v = point(id_of(i), d.x(i, 0), d.x(i, 1));
    const Label l = label_from_int(d.y[i]);
    b.truth[v.user_id] = l;
    if (i < seed) b.pool.labeled.push_back({v, l, {"seed"}, LabelSource::seed});
    else b.pool.unlabeled.push_back(v);
  }
  return b;
}

LoopConfig small_config() {
  LoopConfig c;
  c.mask = kMask2;
  c.learner.forest.n_trees = 25;
  c.folds = 5;
  c.seed = 3;
  c.learner.with_seed(3);
  return c;
}

}  // namespace

TEST(Sampling, Uncertainty) {
  EXPECT_NEAR(uncertainty(std::vector<double>{0.9, 0.1}), 0.1, 1e-15);
  EXPECT_EQ(uncertainty(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_EQ(uncertainty(std::vector<double>{0.5, 0.5}), 0.5);
}

TEST(Sampling, Margin) {
  EXPECT_NEAR(margin(std::vector<double>{0.6, 0.4}), 0.2, 1e-15);
  EXPECT_EQ(margin(std::vector<double>{0.5, 0.5}), 0.0);
  EXPECT_EQ(margin(std::vector<double>{1.0, 0.0}), 1.0);
  EXPECT_NEAR(margin(std::vector<double>{0.2, 0.5, 0.3}), 0.2, 1e-15);
}

TEST(Sampling, Entropy) {
  EXPECT_NEAR(entropy(std::vector<double>{0.5, 0.5}), std::log(2.0), 1e-15);
  EXPECT_EQ(entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(entropy(std::vector<double>{0.9, 0.1}), 0.3251, 5e-5);
  EXPECT_NEAR(entropy(std::vector<double>{0.5, 0.5}, 2.0), 1.0, 1e-15);
}

TEST(Sampling, MarginPicksSmallestGaps) {
  // margins a:0.1 b:0.5 c:0.2
  const std::vector<learners::Proba> p{{0.45, 0.55}, {0.25, 0.75}, {0.6, 0.4}};
  const std::vector<std::string> ids{"a", "b", "c"};
  EXPECT_EQ(rank_by_ambiguity(p, ids, Strategy::margin, 2), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(rank_by_ambiguity(p, ids, Strategy::margin, 10).size(), 3u);
}

TEST(Sampling, TiesGoToLowerUserId) {
  const std::vector<learners::Proba> p{{0.3, 0.7}, {0.7, 0.3}, {0.9, 0.1}};
  const std::vector<std::string> ids{"zed", "amy", "bob"};
  for (auto s : {Strategy::uncertainty, Strategy::margin, Strategy::entropy}) {
    EXPECT_EQ(rank_by_ambiguity(p, ids, s, 1), (std::vector<std::size_t>{1})) << to_string(s);
  }
}

TEST(Sampling, BinaryStrategiesRankIdentically) {
  trustlens::detail::Rng rng(17);
  std::vector<learners::Proba> p(1000);
  std::vector<std::string> ids(1000);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double p1 = trustlens::detail::uniform01(rng);
    p[i] = {1.0 - p1, p1};
    ids[i] = id_of(i);
  }
  const auto u = rank_by_ambiguity(p, ids, Strategy::uncertainty, 100);
  EXPECT_EQ(rank_by_ambiguity(p, ids, Strategy::margin, 100), u);
  EXPECT_EQ(rank_by_ambiguity(p, ids, Strategy::entropy, 100), u);
}

TEST(Sampling, EntropyBaseDoesNotChangeSelection) {
  trustlens::detail::Rng rng(4);
  std::vector<std::pair<double, double>> scores;
  for (int i = 0; i < 200; ++i) {
    const double p1 = trustlens::detail::uniform01(rng);
    const std::vector<double> p{1 - p1, p1};
    scores.emplace_back(entropy(p), entropy(p, 2.0));
  }
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = 0; j < scores.size(); ++j)
      if (scores[i].first < scores[j].first - 1e-12) {
        ASSERT_LT(scores[i].second, scores[j].second);
      }
}

TEST(Sampling, StrategyNames) {
  for (auto s : {Strategy::uncertainty, Strategy::margin, Strategy::entropy, Strategy::random})
    EXPECT_EQ(strategy_from_string(to_string(s)), s);
  EXPECT_THROW(strategy_from_string("qbc"), ValidationError);
}

TEST(Pool, ValidateRejectsOverlapAndZeroBatch) {
  Pool p;
  p.labeled.push_back({point("a", 0, 0), Label::trusted, {}, LabelSource::seed});
  p.unlabeled.push_back(point("a", 1, 1));
  EXPECT_THROW(p.validate(), ValidationError);
  p.unlabeled[0].user_id = "b";
  EXPECT_NO_THROW(p.validate());
  p.batch_size = 0;
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(SelectBatch, WholePoolAndEmptyPool) {
  auto b = blob_pool(60, 40, 100, 1, 6.0);
  const auto cfg = small_config();
  const auto model = ActiveSession::train(b.pool.labeled, cfg).model;
  EXPECT_EQ(select_batch(b.pool, model, Strategy::margin, kMask2).size(), 20u);
  b.pool.unlabeled.clear();
  EXPECT_TRUE(select_batch(b.pool, model, Strategy::margin, kMask2).empty());
}

TEST(EvaluateCv, Errors) {
  auto b = blob_pool(20, 20, 5, 2, 6.0);
  const auto cfg = small_config();
  EXPECT_THROW(evaluate_cv(b.pool.labeled, cfg.learner, kMask2, 1), ValidationError);
  EXPECT_THROW(evaluate_cv(std::span(b.pool.labeled).first(5), cfg.learner, kMask2, 10), ValidationError);
  auto one_class = b.pool.labeled;
  for (auto& l : one_class) l.label = Label::trusted;
  EXPECT_THROW(evaluate_cv(one_class, cfg.learner, kMask2, 5), ValidationError);
}

TEST(EvaluateCv, SeparableDataIsPerfect) {
  auto b = blob_pool(100, 100, 5, 2, 12.0);
  const auto m = evaluate_cv(b.pool.labeled, small_config().learner, kMask2, 10, 1);
  EXPECT_EQ(m.accuracy, 1.0);
  EXPECT_EQ(m.trusted.f1, 1.0);
  EXPECT_EQ(m.untrusted.f1, 1.0);
  EXPECT_EQ(m.confusion.total(), 100u);
  EXPECT_EQ(m.folds, 10u);
}

TEST(EvaluateCv, FoldsAreStratified) {
  std::vector<int> y;
  for (int i = 0; i < 582; ++i) y.push_back(1);
  for (int i = 0; i < 418; ++i) y.push_back(0);
  const auto f = stratified_folds(y, 10, 5);
  std::vector<int> ones(10, 0), total(10, 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    ++total[f[i]];
    ones[f[i]] += y[i];
  }
  for (int k = 0; k < 10; ++k) {
    EXPECT_EQ(total[k], 100);
    EXPECT_GE(ones[k], 58);
    EXPECT_LE(ones[k], 59);
  }
}

TEST(Loop, MinGainOneStopsAfterSecondRound) {
  auto b = blob_pool(300, 60, 20, 5, 1.5);
  auto cfg = small_config();
  cfg.stop.min_gain = 1.0;
  ActiveSession s(b.pool, cfg);
  const auto r = run_loop(s, SyntheticOracle(b.truth));
  EXPECT_EQ(r.reason, StopReason::plateau);
  EXPECT_EQ(s.history().size(), 2u);
}

TEST(Loop, EmptyPoolStopsAfterFirstRound) {
  auto b = blob_pool(50, 50, 10, 5, 4.0);
  ActiveSession s(b.pool, small_config());
  const auto r = run_loop(s, SyntheticOracle(b.truth));
  EXPECT_EQ(r.reason, StopReason::pool_exhausted);
  EXPECT_EQ(s.history().size(), 1u);
}

TEST(Loop, LabeledSizeGrowsByBatch) {
  auto b = blob_pool(200, 40, 30, 6, 3.0);
  auto cfg = small_config();
  cfg.stop.min_gain = -1.0;
  cfg.stop.max_rounds = 20;
  ActiveSession s(b.pool, cfg);
  const auto r = run_loop(s, SyntheticOracle(b.truth));
  EXPECT_EQ(r.reason, StopReason::pool_exhausted);
  const auto& h = s.history();
  ASSERT_EQ(h.size(), 7u);
  for (std::size_t i = 0; i < h.size(); ++i) {
    EXPECT_EQ(h[i].round_index, i + 1);
    EXPECT_EQ(h[i].labeled_size, std::min<std::size_t>(40 + i * 30, 200));
  }
  EXPECT_TRUE(s.pool().unlabeled.empty());
}

TEST(Loop, MaxRoundsStops) {
  auto b = blob_pool(200, 40, 10, 6, 3.0);
  auto cfg = small_config();
  cfg.stop.min_gain = -1.0;
  cfg.stop.max_rounds = 3;
  ActiveSession s(b.pool, cfg);
  EXPECT_EQ(run_loop(s, SyntheticOracle(b.truth)).reason, StopReason::max_rounds);
  EXPECT_EQ(s.history().size(), 3u);
  EXPECT_EQ(s.pool().labeled.size(), 60u);
}

TEST(Loop, RandomStrategyNeverDuplicates) {
  auto b = blob_pool(150, 30, 25, 8, 3.0);
  auto cfg = small_config();
  cfg.strategy = Strategy::random;
  cfg.stop.min_gain = -1.0;
  ActiveSession s(b.pool, cfg);
  run_loop(s, SyntheticOracle(b.truth));
  std::set<std::string> ids;
  for (const auto& l : s.pool().labeled) ids.insert(l.features.user_id);
  EXPECT_EQ(ids.size(), s.pool().labeled.size());
  EXPECT_EQ(ids.size(), 150u);
}

TEST(Loop, OracleFailurePreservesPoolAndResumes) {
  auto b = blob_pool(120, 40, 20, 9, 3.0);
  auto cfg = small_config();
  cfg.stop.min_gain = -1.0;
  cfg.stop.max_rounds = 4;
  ActiveSession s(b.pool, cfg);
  int calls = 0;
  const SyntheticOracle truth(b.truth);
  auto flaky = [&](const FeatureVector& v) {
    if (++calls == 25) throw Error("annotator went home");
    return truth(v);
  };
  const auto r = run_loop(s, flaky);
  EXPECT_EQ(r.reason, StopReason::oracle_failed);
  EXPECT_EQ(r.error, "annotator went home");
  EXPECT_EQ(s.pool().labeled.size(), 60u);
  EXPECT_EQ(s.pool().unlabeled.size(), 60u);
  EXPECT_EQ(s.history().size(), 2u);

  const auto again = run_loop(s, flaky);
  EXPECT_EQ(again.reason, StopReason::max_rounds);
  EXPECT_EQ(s.history().size(), 4u);
  EXPECT_EQ(s.pool().labeled.size(), 100u);
}

TEST(Loop, SessionRejectsBadSeed) {
  Pool p;
  EXPECT_THROW(ActiveSession(p, small_config()), ValidationError);
  p.labeled.push_back({point("a", 0, 0), Label::trusted, {}, LabelSource::seed});
  p.labeled.push_back({point("b", 1, 0), Label::trusted, {}, LabelSource::seed});
  EXPECT_THROW(ActiveSession(p, small_config()), ValidationError);
  p.labeled[1].label = Label::untrusted;
  auto cfg = small_config();
  cfg.mask.clear();
  EXPECT_THROW(ActiveSession(p, cfg), ValidationError);
}

TEST(Loop, NextBatchIsStableUntilCommit) {
  auto b = blob_pool(100, 30, 10, 3, 2.0);
  ActiveSession s(b.pool, small_config());
  EXPECT_THROW(s.next_batch(), ValidationError);
  s.train_round();
  const auto first = s.next_batch();
  EXPECT_EQ(s.next_batch(), first);
  std::vector<Answer> answers;
  for (const auto& v : first) answers.push_back({v.user_id, b.truth.at(v.user_id), {"x"}, LabelSource::active_loop});
  s.commit(answers);
  EXPECT_EQ(s.pool().labeled.back().features.user_id, first.back().user_id);
  EXPECT_THROW(s.commit(answers), ValidationError);
  EXPECT_THROW(s.install(ActiveSession::train(b.pool.labeled, small_config())), Error);
}

TEST(Loop, RandomForestMarginOnBlobs) {
  auto b = blob_pool(1500, 100, 50, 10, 4.0);
  auto cfg = small_config();
  cfg.learner.forest.n_trees = 50;
  cfg.stop.max_rounds = 10;
  cfg.stop.min_gain = -1.0;
  ActiveSession s(b.pool, cfg);
  run_loop(s, SyntheticOracle(b.truth));
  ASSERT_EQ(s.history().size(), 10u);
  std::vector<int> truth, pred;
  for (const auto& v : s.pool().unlabeled) {
    truth.push_back(to_int(b.truth.at(v.user_id)));
    pred.push_back(s.model()->predict(row_of(v, kMask2)));
  }
  EXPECT_GE(testing_support::accuracy(truth, pred), 0.95);
}

TEST(LearningCurve, CsvFormat) {
  RoundRecord r;
  r.round_index = 1;
  r.labeled_size = 20;
  r.metrics = metrics_from_confusion({8, 2, 2, 8}, 10);
  const std::vector<RoundRecord> rs{r};
  EXPECT_EQ(learning_curve_csv(rs),
            "round,labeled_size,accuracy,precision_0,recall_0,f1_0,precision_1,recall_1,f1_1\n"
            "1,20,0.800000,0.800000,0.800000,0.800000,0.800000,0.800000,0.800000\n");
}
