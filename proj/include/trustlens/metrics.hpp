#pragma once

#include <algorithm>
#include <cstdint>
#include <span>

#include "json.hpp"

namespace trustlens {

struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const noexcept { return tp + fp + fn + tn; }

  Confusion& operator+=(const Confusion& o) noexcept {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }

  bool operator==(const Confusion&) const = default;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const ClassScores&) const = default;
};

/// Binary classification report. Class 1 is "trusted" and is the positive
/// class of the confusion counts; class 0 scores are computed with the roles
/// of positive and negative swapped.
struct MetricsReport {
  ClassScores untrusted;  // class 0
  ClassScores trusted;    // class 1
  double accuracy = 0.0;
  Confusion confusion;
  std::uint32_t folds = 0;

  bool operator==(const MetricsReport&) const = default;
};

namespace detail {

inline double safe_ratio(std::uint64_t num, std::uint64_t den) noexcept {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

inline ClassScores class_scores(std::uint64_t hit, std::uint64_t false_alarm,
                                std::uint64_t miss) noexcept {
  ClassScores s;
  s.precision = safe_ratio(hit, hit + false_alarm);
  s.recall = safe_ratio(hit, hit + miss);
  const double denom = s.precision + s.recall;
  s.f1 = denom == 0.0 ? 0.0 : 2.0 * s.precision * s.recall / denom;
  return s;
}

}  // namespace detail

inline MetricsReport metrics_from_confusion(const Confusion& c,
                                            std::uint32_t folds = 1) {
  MetricsReport r;
  r.confusion = c;
  r.folds = folds;
  r.trusted = detail::class_scores(c.tp, c.fp, c.fn);
  r.untrusted = detail::class_scores(c.tn, c.fn, c.fp);
  r.accuracy = detail::safe_ratio(c.tp + c.tn, c.total());
  return r;
}

/// Confusion counts of predicted against true 0/1 labels.
inline Confusion confusion_of(std::span<const int> truth,
                              std::span<const int> predicted) {
  Confusion c;
  const auto n = std::min(truth.size(), predicted.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool t = truth[i] == 1;
    const bool p = predicted[i] == 1;
    if (t && p) ++c.tp;
    else if (!t && p) ++c.fp;
    else if (t && !p) ++c.fn;
    else ++c.tn;
  }
  return c;
}

inline void to_json(nlohmann::json& j, const ClassScores& s) {
  j = {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

inline void from_json(const nlohmann::json& j, ClassScores& s) {
  s.precision = j.at("precision").get<double>();
  s.recall = j.at("recall").get<double>();
  s.f1 = j.at("f1").get<double>();
}

inline void to_json(nlohmann::json& j, const MetricsReport& r) {
  j = {{"untrusted", r.untrusted},
       {"trusted", r.trusted},
       {"accuracy", r.accuracy},
       {"confusion",
        {{"tp", r.confusion.tp},
         {"fp", r.confusion.fp},
         {"fn", r.confusion.fn},
         {"tn", r.confusion.tn}}},
       {"folds", r.folds}};
}

inline void from_json(const nlohmann::json& j, MetricsReport& r) {
  r.untrusted = j.at("untrusted").get<ClassScores>();
  r.trusted = j.at("trusted").get<ClassScores>();
  r.accuracy = j.at("accuracy").get<double>();
  const auto& c = j.at("confusion");
  r.confusion = {c.at("tp").get<std::uint64_t>(), c.at("fp").get<std::uint64_t>(),
                 c.at("fn").get<std::uint64_t>(), c.at("tn").get<std::uint64_t>()};
  r.folds = j.at("folds").get<std::uint32_t>();
}

}  // namespace trustlens
