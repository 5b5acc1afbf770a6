#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "trustlens/detail/random.hpp"
#include "trustlens/error.hpp"
#include "trustlens/learners/classifier.hpp"
#include "trustlens/metrics.hpp"
#include "trustlens/model.hpp"
#include "trustlens/preprocess.hpp"

namespace trustlens::active {

using learners::Classifier;
using learners::LearnerParams;
using learners::Matrix;
using preprocess::FeatureSet;

// ---------------------------------------------------------------------------
// Query strategies

enum class Strategy { uncertainty, margin, entropy, random };

inline std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::uncertainty: return "uncertainty";
    case Strategy::margin: return "margin";
    case Strategy::entropy: return "entropy";
    case Strategy::random: return "random";
  }
  return "margin";
}

inline Strategy strategy_from_string(std::string_view s) {
  if (s == "uncertainty") return Strategy::uncertainty;
  if (s == "margin") return Strategy::margin;
  if (s == "entropy") return Strategy::entropy;
  if (s == "random") return Strategy::random;
  throw ValidationError("unknown strategy '" + std::string(s) + "'");
}

/// 1 - max_k p_k
inline double uncertainty(std::span<const double> p) {
  if (p.empty()) throw ValidationError("empty probability vector");
  return 1.0 - *std::max_element(p.begin(), p.end());
}

/// Gap between the two most likely classes.
inline double margin(std::span<const double> p) {
  if (p.size() < 2) throw ValidationError("margin needs at least two classes");
  double first = -1.0, second = -1.0;
  for (double v : p) {
    if (v > first) {
      second = first;
      first = v;
    } else if (v > second) {
      second = v;
    }
  }
  return first - second;
}

/// -sum p_k log p_k with 0 log 0 = 0. Natural log unless `base` is given.
inline double entropy(std::span<const double> p, double base = 0.0) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return base > 0.0 ? h / std::log(base) : h;
}

/// Larger means more ambiguous, for every strategy.
inline double ambiguity(const learners::Proba& p, Strategy s) {
  switch (s) {
    case Strategy::uncertainty: return uncertainty(p);
    case Strategy::margin: return -margin(p);
    case Strategy::entropy: return entropy(p);
    case Strategy::random: return 0.0;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Pool

struct Pool {
  std::vector<LabeledInstance> labeled;
  std::vector<FeatureVector> unlabeled;
  std::size_t batch_size = 100;

  /// Throws when the labeled and unlabeled sets share a user_id or the batch
  /// size is zero.
  void validate() const {
    if (batch_size == 0) throw ValidationError("batch_size must be at least 1");
    std::unordered_set<std::string> ids;
    for (const auto& l : labeled) {
      if (!ids.insert(l.features.user_id).second) {
        throw ValidationError("duplicate labeled user_id '" + l.features.user_id + "'");
      }
    }
    std::unordered_set<std::string> pending;
    for (const auto& u : unlabeled) {
      if (ids.contains(u.user_id)) throw ValidationError("user '" + u.user_id + "' is both labeled and unlabeled");
      if (!pending.insert(u.user_id).second) throw ValidationError("duplicate unlabeled user_id '" + u.user_id + "'");
    }
  }
};

inline Matrix design_matrix(std::span<const FeatureVector> vs, const FeatureSet& mask) {
  Matrix m(vs.size(), mask.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t k = 0; k < mask.size(); ++k) m(i, k) = vs[i][mask[k]];
  }
  return m;
}

inline Matrix design_matrix(std::span<const LabeledInstance> ls, const FeatureSet& mask) {
  Matrix m(ls.size(), mask.size());
  for (std::size_t i = 0; i < ls.size(); ++i) {
    for (std::size_t k = 0; k < mask.size(); ++k) m(i, k) = ls[i].features[mask[k]];
  }
  return m;
}

inline std::vector<int> label_vector(std::span<const LabeledInstance> ls) {
  std::vector<int> y(ls.size());
  for (std::size_t i = 0; i < ls.size(); ++i) y[i] = to_int(ls[i].label);
  return y;
}

inline std::vector<double> row_of(const FeatureVector& v, const FeatureSet& mask) {
  std::vector<double> r(mask.size());
  for (std::size_t k = 0; k < mask.size(); ++k) r[k] = v[mask[k]];
  return r;
}

namespace detail {

// Ambiguity scores are compared on a 1e-12 grid so that values that are
// equal in exact arithmetic (e.g. p and 1-p) tie and fall to the user_id rule.
inline std::int64_t quantize(double score) {
  return static_cast<std::int64_t>(std::llround(score * 1e12));
}

}  // namespace detail

/// Indices into `probas` of the `batch` most ambiguous entries, ties broken
/// by ascending user id.
inline std::vector<std::size_t> rank_by_ambiguity(std::span<const learners::Proba> probas,
                                                  std::span<const std::string> ids, Strategy s,
                                                  std::size_t batch) {
  std::vector<std::int64_t> keys(probas.size());
  for (std::size_t i = 0; i < probas.size(); ++i) keys[i] = detail::quantize(ambiguity(probas[i], s));
  std::vector<std::size_t> order(probas.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t take = std::min(batch, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (keys[a] != keys[b]) return keys[a] > keys[b];
                      return ids[a] < ids[b];
                    });
  order.resize(take);
  return order;
}

/// The next query batch: the pool's `batch_size` most ambiguous unlabeled
/// instances, or a seeded uniform sample for Strategy::random.
inline std::vector<FeatureVector> select_batch(const Pool& pool, const Classifier& model, Strategy strategy,
                                               const FeatureSet& mask, std::uint64_t seed = 0) {
  if (pool.batch_size == 0) throw ValidationError("batch_size must be at least 1");
  if (pool.unlabeled.empty()) return {};
  std::vector<std::size_t> chosen;
  if (strategy == Strategy::random) {
    std::vector<std::size_t> order(pool.unlabeled.size());
    std::iota(order.begin(), order.end(), 0);
    trustlens::detail::Rng rng(trustlens::detail::mix_seed(seed, 0x52414E44));
    trustlens::detail::shuffle(order, rng);
    order.resize(std::min(pool.batch_size, order.size()));
    chosen = std::move(order);
  } else {
    std::vector<learners::Proba> probas;
    std::vector<std::string> ids;
    probas.reserve(pool.unlabeled.size());
    ids.reserve(pool.unlabeled.size());
    for (const auto& v : pool.unlabeled) {
      probas.push_back(model.predict_proba(row_of(v, mask)));
      ids.push_back(v.user_id);
    }
    chosen = rank_by_ambiguity(probas, ids, strategy, pool.batch_size);
  }
  std::vector<FeatureVector> out;
  out.reserve(chosen.size());
  for (auto i : chosen) out.push_back(pool.unlabeled[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Cross-validation

/// Stratified fold assignment: each class is shuffled with `seed` and dealt
/// round-robin, continuing the deal across classes.
inline std::vector<std::uint32_t> stratified_folds(std::span<const int> y, std::uint32_t folds, std::uint64_t seed) {
  std::vector<std::uint32_t> fold(y.size(), 0);
  trustlens::detail::Rng rng(trustlens::detail::mix_seed(seed, 0x4346));
  std::uint32_t next = 0;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (y[i] == cls) members.push_back(i);
    }
    trustlens::detail::shuffle(members, rng);
    for (auto i : members) {
      fold[i] = next;
      next = (next + 1) % folds;
    }
  }
  return fold;
}

inline MetricsReport evaluate_cv(std::span<const LabeledInstance> labeled, const LearnerParams& learner,
                                 const FeatureSet& mask, std::uint32_t folds = 10, std::uint64_t seed = 0) {
  if (folds < 2) throw ValidationError("cross-validation needs at least 2 folds");
  if (labeled.size() < folds) throw ValidationError("fewer instances than folds");
  const auto y = label_vector(labeled);
  const bool both = std::find(y.begin(), y.end(), 0) != y.end() && std::find(y.begin(), y.end(), 1) != y.end();
  if (!both) throw ValidationError("cross-validation needs both classes present");
  const Matrix x = design_matrix(labeled, mask);
  const auto fold = stratified_folds(y, folds, seed);
  Confusion total;
  for (std::uint32_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < y.size(); ++i) (fold[i] == f ? test : train).push_back(i);
    if (test.empty()) continue;
    std::vector<int> ytrain, ytest;
    for (auto i : train) ytrain.push_back(y[i]);
    for (auto i : test) ytest.push_back(y[i]);
    const auto model = Classifier::train(x.select(train), ytrain, learner);
    const auto pred = model.predict_all(x.select(test));
    total += confusion_of(ytest, pred);
  }
  return metrics_from_confusion(total, folds);
}

// ---------------------------------------------------------------------------
// Loop

struct StopRule {
  std::uint32_t max_rounds = 50;
  double min_gain = 0.005;  // absolute CV accuracy
  std::uint32_t patience = 2;
};

struct LoopConfig {
  LearnerParams learner;
  Strategy strategy = Strategy::margin;
  FeatureSet mask = preprocess::feature_mask(preprocess::MaskMode::paper_default);
  std::uint32_t folds = 10;
  std::uint64_t seed = 0;
  StopRule stop;
};

enum class StopReason { running, pool_exhausted, max_rounds, plateau, oracle_failed };

inline std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::running: return "running";
    case StopReason::pool_exhausted: return "pool_exhausted";
    case StopReason::max_rounds: return "max_rounds";
    case StopReason::plateau: return "plateau";
    case StopReason::oracle_failed: return "oracle_failed";
  }
  return "running";
}

/// One labeling answer for a queried instance.
struct Answer {
  std::string user_id;
  Label label = Label::untrusted;
  std::vector<std::string> annotator_ids;
  LabelSource source = LabelSource::active_loop;
};

/// Pool, model and history of one active-learning run. Each round trains on
/// the labeled set, records the cross-validated metrics, and then the caller
/// queries `next_batch()` and hands the answers to `commit()`. The in-process
/// loop and the HTTP service both drive this type.
class ActiveSession {
 public:
  ActiveSession(Pool pool, LoopConfig config) : pool_(std::move(pool)), config_(std::move(config)) {
    pool_.validate();
    if (config_.mask.empty()) throw ValidationError("feature mask is empty");
    if (pool_.labeled.empty()) throw ValidationError("labeled seed set is empty");
    const auto y = label_vector(pool_.labeled);
    if (std::find(y.begin(), y.end(), 0) == y.end() || std::find(y.begin(), y.end(), 1) == y.end()) {
      throw ValidationError("labeled seed set must contain both classes");
    }
    state_.learner_kind = config_.learner.kind;
    state_.hyperparameters = learners::hyperparameter_map(config_.learner);
  }

  /// Model and cross-validated metrics for a labeled set. Pure, so the
  /// service can run it outside its state lock.
  struct Trained {
    Classifier model;
    MetricsReport metrics;
    std::size_t labeled_size = 0;
  };

  static Trained train(std::span<const LabeledInstance> labeled, const LoopConfig& config) {
    const auto x = design_matrix(labeled, config.mask);
    const auto y = label_vector(labeled);
    Trained t;
    t.model = Classifier::train(x, y, config.learner);
    t.metrics = evaluate_cv(labeled, config.learner, config.mask, config.folds, config.seed);
    t.labeled_size = labeled.size();
    return t;
  }

  /// Records a round trained on the current labeled set.
  const RoundRecord& install(Trained t) {
    if (t.labeled_size != pool_.labeled.size()) throw Error("trained model is stale");
    RoundRecord rec;
    rec.round_index = static_cast<std::uint32_t>(state_.history.size() + 1);
    rec.labeled_size = t.labeled_size;
    rec.metrics = t.metrics;
    const double previous = state_.history.empty() ? 0.0 : state_.history.back().metrics.accuracy;
    if (rec.metrics.accuracy - previous < config_.stop.min_gain) ++stalled_;
    else stalled_ = 0;
    model_ = std::move(t.model);
    state_.trained = true;
    state_.training_set_size = pool_.labeled.size();
    state_.record(rec);
    batch_.reset();
    return state_.history.back();
  }

  /// Trains on the current labeled set and appends the round's metrics.
  const RoundRecord& train_round() { return install(train(pool_.labeled, config_)); }

  /// Restores the round history of an earlier session and refits the model
  /// on the current labeled set without recording a round.
  void restore(const ModelState& state) {
    state_.history.clear();
    stalled_ = 0;
    double previous = 0.0;
    for (const auto& r : state.history) {
      state_.record(r);
      if (r.metrics.accuracy - previous < config_.stop.min_gain) ++stalled_;
      else stalled_ = 0;
      previous = r.metrics.accuracy;
    }
    if (!state_.history.empty()) {
      const auto x = design_matrix(pool_.labeled, config_.mask);
      model_ = Classifier::train(x, label_vector(pool_.labeled), config_.learner);
      state_.trained = true;
      state_.training_set_size = pool_.labeled.size();
    }
    batch_.reset();
  }

  /// Pins the pending batch to the given unlabeled users, in order.
  void set_batch(std::span<const std::string> ids) {
    std::unordered_map<std::string, const FeatureVector*> where;
    for (const auto& v : pool_.unlabeled) where.emplace(v.user_id, &v);
    std::vector<FeatureVector> b;
    for (const auto& id : ids) {
      auto it = where.find(id);
      if (it == where.end()) throw ValidationError("user '" + id + "' is not in the unlabeled pool");
      b.push_back(*it->second);
    }
    batch_ = std::move(b);
  }

  /// Changes the strategy or batch size for the next selection.
  void set_strategy(Strategy s) {
    if (s != config_.strategy) batch_.reset();
    config_.strategy = s;
  }

  void set_batch_size(std::size_t n) {
    if (n == 0) throw ValidationError("batch_size must be at least 1");
    if (n != pool_.batch_size) batch_.reset();
    pool_.batch_size = n;
  }

  /// Plateau or round cap reached after the latest round.
  std::optional<StopReason> stop_condition() const {
    if (state_.history.empty()) return std::nullopt;
    if (stalled_ >= config_.stop.patience) return StopReason::plateau;
    if (state_.history.size() >= config_.stop.max_rounds) return StopReason::max_rounds;
    return std::nullopt;
  }

  /// Query batch for the current model. Stable until commit() or the next
  /// train_round().
  const std::vector<FeatureVector>& next_batch() {
    if (!model_) throw ValidationError("model not trained");
    if (!batch_) {
      batch_ = select_batch(pool_, *model_, config_.strategy, config_.mask,
                            trustlens::detail::mix_seed(config_.seed, state_.history.size()));
    }
    return *batch_;
  }

  bool has_pending_batch() const noexcept { return batch_.has_value() && !batch_->empty(); }

  /// Moves answered instances from the unlabeled pool to the labeled set, in
  /// answer order. Every answer must name a pending unlabeled instance.
  void commit(std::span<const Answer> answers) {
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t i = 0; i < pool_.unlabeled.size(); ++i) where.emplace(pool_.unlabeled[i].user_id, i);
    std::unordered_set<std::string> seen;
    for (const auto& a : answers) {
      if (!where.contains(a.user_id)) throw ValidationError("user '" + a.user_id + "' is not in the unlabeled pool");
      if (!seen.insert(a.user_id).second) throw ValidationError("duplicate answer for '" + a.user_id + "'");
    }
    std::vector<bool> taken(pool_.unlabeled.size(), false);
    for (const auto& a : answers) {
      const auto i = where.at(a.user_id);
      taken[i] = true;
      pool_.labeled.push_back({pool_.unlabeled[i], a.label, a.annotator_ids, a.source});
    }
    std::vector<FeatureVector> rest;
    rest.reserve(pool_.unlabeled.size() - answers.size());
    for (std::size_t i = 0; i < pool_.unlabeled.size(); ++i) {
      if (!taken[i]) rest.push_back(std::move(pool_.unlabeled[i]));
    }
    pool_.unlabeled = std::move(rest);
    batch_.reset();
  }

  const Pool& pool() const noexcept { return pool_; }
  const LoopConfig& config() const noexcept { return config_; }
  const ModelState& state() const noexcept { return state_; }
  const std::vector<RoundRecord>& history() const noexcept { return state_.history; }
  const Classifier* model() const noexcept { return model_ ? &*model_ : nullptr; }

 private:
  Pool pool_;
  LoopConfig config_;
  ModelState state_;
  std::optional<Classifier> model_;
  std::optional<std::vector<FeatureVector>> batch_;
  std::uint32_t stalled_ = 0;
};

/// Labels one queried instance. May throw; a throwing oracle aborts the
/// round without touching the pool.
using Oracle = std::function<Label(const FeatureVector&)>;

struct LoopResult {
  StopReason reason = StopReason::running;
  std::string error;
};

/// Runs rounds until the pool is exhausted, the round cap is hit, the gain
/// plateaus, or the oracle fails. Resumable: calling again continues from the
/// session's current state.
inline LoopResult run_loop(ActiveSession& session, const Oracle& oracle,
                           std::string annotator = "oracle",
                           LabelSource source = LabelSource::active_loop) {
  while (true) {
    // a resumed session whose model already covers the labeled set skips the refit
    const auto& h = session.history();
    if (h.empty() || h.back().labeled_size != session.pool().labeled.size()) session.train_round();
    if (auto stop = session.stop_condition()) return {*stop, {}};
    const auto batch = session.next_batch();
    if (batch.empty()) return {StopReason::pool_exhausted, {}};
    std::vector<Answer> answers;
    answers.reserve(batch.size());
    try {
      for (const auto& v : batch) answers.push_back({v.user_id, oracle(v), {annotator}, source});
    } catch (const std::exception& e) {
      return {StopReason::oracle_failed, e.what()};
    }
    session.commit(answers);
  }
}

/// Answers from a known ground truth.
class SyntheticOracle {
 public:
  explicit SyntheticOracle(std::unordered_map<std::string, Label> truth) : truth_(std::move(truth)) {}

  Label operator()(const FeatureVector& v) const {
    auto it = truth_.find(v.user_id);
    if (it == truth_.end()) throw Error("oracle has no label for '" + v.user_id + "'");
    return it->second;
  }

 private:
  std::unordered_map<std::string, Label> truth_;
};

// ---------------------------------------------------------------------------
// Learning curve CSV

inline std::string learning_curve_csv(std::span<const RoundRecord> rounds) {
  std::string out = "round,labeled_size,accuracy,precision_0,recall_0,f1_0,precision_1,recall_1,f1_1\n";
  char buf[256];
  for (const auto& r : rounds) {
    const auto& m = r.metrics;
    std::snprintf(buf, sizeof buf, "%u,%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.round_index, r.labeled_size,
                  m.accuracy, m.untrusted.precision, m.untrusted.recall, m.untrusted.f1, m.trusted.precision,
                  m.trusted.recall, m.trusted.f1);
    out += buf;
  }
  return out;
}

}  // namespace trustlens::active
