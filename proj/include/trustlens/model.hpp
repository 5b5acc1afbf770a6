#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "trustlens/error.hpp"
#include "trustlens/metrics.hpp"

namespace trustlens {

using Count = std::uint64_t;
using TweetId = std::uint64_t;

/// Account-level counters for one user.
struct UserProfile {
  std::string user_id;
  Count followers = 0;
  Count friends = 0;
  Count statuses = 0;
  Count listed = 0;
  bool is_public = true;

  bool operator==(const UserProfile&) const = default;
};

/// Selection rule applied to ingested profiles: public accounts with
/// non-zero followers, friends and statuses.
inline std::optional<std::string> selection_reject_reason(const UserProfile& p) {
  if (p.user_id.empty()) return "missing user_id";
  if (!p.is_public) return "private profile";
  if (p.followers == 0) return "zero followers";
  if (p.friends == 0) return "zero friends";
  if (p.statuses == 0) return "inactive user";
  return std::nullopt;
}

enum class SelectionRule { off, on };

inline UserProfile make_profile(std::string user_id, Count followers, Count friends,
                                Count statuses, Count listed, bool is_public,
                                SelectionRule rule = SelectionRule::on) {
  UserProfile p{std::move(user_id), followers, friends, statuses, listed, is_public};
  if (p.user_id.empty()) throw ValidationError("missing user_id");
  if (rule == SelectionRule::on) {
    if (auto reason = selection_reject_reason(p)) throw ValidationError(*reason);
  }
  return p;
}

struct TweetRecord {
  TweetId tweet_id = 0;
  std::string user_id;
  Count retweet_count = 0;
  Count like_count = 0;
  bool has_url = false;
  bool has_hashtag = false;
  bool is_retweet_of_other = false;
  std::string text;

  bool operator==(const TweetRecord&) const = default;
};

// Column order of every feature matrix built from FeatureVector values.
enum class Feature : std::size_t {
  followers,
  friends,
  statuses,
  listed,
  n_ret,
  n_lik,
  url_count,
  r_ret,
  r_lik,
  r_url,
  r_has,
  r_ori,
  social_reputation,
  retweet_hindex,
  liked_hindex,
  sentiment_score,
  tweet_credibility,
  influence,
  n_pos,
  n_neu,
  n_neg,
};

inline constexpr std::size_t kFeatureCount = 21;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "followers",     "friends",         "statuses",          "listed",
    "n_ret",         "n_lik",           "url_count",         "r_ret",
    "r_lik",         "r_url",           "r_has",             "r_ori",
    "social_reputation", "retweet_hindex", "liked_hindex",   "sentiment_score",
    "tweet_credibility", "influence",   "n_pos",             "n_neu",
    "n_neg",
};

inline constexpr std::array<Feature, kFeatureCount> all_features() {
  std::array<Feature, kFeatureCount> out{};
  for (std::size_t i = 0; i < kFeatureCount; ++i) out[i] = static_cast<Feature>(i);
  return out;
}

inline constexpr std::size_t index_of(Feature f) noexcept {
  return static_cast<std::size_t>(f);
}

inline constexpr std::string_view feature_name(Feature f) noexcept {
  return kFeatureNames[index_of(f)];
}

inline std::optional<Feature> feature_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (kFeatureNames[i] == name) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

/// Per-user feature record. Holds the raw values until `normalized` is set,
/// after which every value lies in [0,1].
struct FeatureVector {
  std::string user_id;
  std::array<double, kFeatureCount> values{};
  bool normalized = false;

  double operator[](Feature f) const noexcept { return values[index_of(f)]; }
  double& operator[](Feature f) noexcept { return values[index_of(f)]; }

  bool operator==(const FeatureVector&) const = default;
};

enum class Label : int { untrusted = 0, trusted = 1 };

inline int to_int(Label l) noexcept { return static_cast<int>(l); }

inline Label label_from_int(long long v) {
  if (v == 0) return Label::untrusted;
  if (v == 1) return Label::trusted;
  throw ValidationError("label must be 0 or 1, got " + std::to_string(v));
}

enum class LabelSource { seed, active_loop, synthetic_oracle };

struct LabeledInstance {
  FeatureVector features;
  Label label = Label::untrusted;
  std::vector<std::string> annotator_ids;
  LabelSource source = LabelSource::seed;

  bool operator==(const LabeledInstance&) const = default;
};

enum class LearnerKind { random_forest, svm, mlp };

struct RoundRecord {
  std::uint32_t round_index = 0;
  std::size_t labeled_size = 0;
  MetricsReport metrics;

  bool operator==(const RoundRecord&) const = default;
};

struct ModelState {
  LearnerKind learner_kind = LearnerKind::random_forest;
  std::map<std::string, std::string> hyperparameters;
  bool trained = false;
  std::size_t training_set_size = 0;
  std::vector<RoundRecord> history;

  /// Appends a round; round indices must be strictly increasing.
  void record(RoundRecord r) {
    if (!history.empty() && r.round_index <= history.back().round_index) {
      throw ValidationError("round_index must be strictly increasing");
    }
    history.push_back(std::move(r));
  }

  bool operator==(const ModelState&) const = default;
};

// ---------------------------------------------------------------------------
// Enum spellings shared by JSON, CSV and CLI flags.

NLOHMANN_JSON_SERIALIZE_ENUM(LabelSource, {
                                              {LabelSource::seed, "seed"},
                                              {LabelSource::active_loop, "active_loop"},
                                              {LabelSource::synthetic_oracle, "synthetic_oracle"},
                                          })

NLOHMANN_JSON_SERIALIZE_ENUM(LearnerKind, {
                                              {LearnerKind::random_forest, "random_forest"},
                                              {LearnerKind::svm, "svm"},
                                              {LearnerKind::mlp, "mlp"},
                                          })

inline std::string_view to_string(LearnerKind k) noexcept {
  switch (k) {
    case LearnerKind::random_forest: return "rf";
    case LearnerKind::svm: return "svm";
    case LearnerKind::mlp: return "mlp";
  }
  return "rf";
}

inline LearnerKind learner_from_string(std::string_view s) {
  if (s == "rf" || s == "random_forest") return LearnerKind::random_forest;
  if (s == "svm") return LearnerKind::svm;
  if (s == "mlp") return LearnerKind::mlp;
  throw ValidationError("unknown learner '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const UserProfile& p) {
  j = {{"user_id", p.user_id},     {"followers", p.followers}, {"friends", p.friends},
       {"statuses", p.statuses},   {"listed", p.listed},       {"is_public", p.is_public}};
}

inline void from_json(const nlohmann::json& j, UserProfile& p) {
  p.user_id = j.at("user_id").get<std::string>();
  p.followers = j.at("followers").get<Count>();
  p.friends = j.at("friends").get<Count>();
  p.statuses = j.at("statuses").get<Count>();
  p.listed = j.at("listed").get<Count>();
  p.is_public = j.at("is_public").get<bool>();
}

inline void to_json(nlohmann::json& j, const TweetRecord& t) {
  j = {{"tweet_id", t.tweet_id},
       {"user_id", t.user_id},
       {"retweet_count", t.retweet_count},
       {"like_count", t.like_count},
       {"has_url", t.has_url},
       {"has_hashtag", t.has_hashtag},
       {"is_retweet_of_other", t.is_retweet_of_other},
       {"text", t.text}};
}

inline void from_json(const nlohmann::json& j, TweetRecord& t) {
  t.tweet_id = j.at("tweet_id").get<TweetId>();
  t.user_id = j.at("user_id").get<std::string>();
  t.retweet_count = j.at("retweet_count").get<Count>();
  t.like_count = j.at("like_count").get<Count>();
  t.has_url = j.at("has_url").get<bool>();
  t.has_hashtag = j.at("has_hashtag").get<bool>();
  t.is_retweet_of_other = j.at("is_retweet_of_other").get<bool>();
  t.text = j.at("text").get<std::string>();
}

inline void to_json(nlohmann::json& j, const FeatureVector& v) {
  j = nlohmann::json::object();
  j["user_id"] = v.user_id;
  for (std::size_t i = 0; i < kFeatureCount; ++i) j[std::string(kFeatureNames[i])] = v.values[i];
  j["normalized"] = v.normalized;
}

inline void from_json(const nlohmann::json& j, FeatureVector& v) {
  v.user_id = j.at("user_id").get<std::string>();
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    v.values[i] = j.at(std::string(kFeatureNames[i])).get<double>();
  }
  v.normalized = j.value("normalized", false);
}

inline void to_json(nlohmann::json& j, const LabeledInstance& l) {
  j = {{"features", l.features},
       {"label", to_int(l.label)},
       {"annotator_ids", l.annotator_ids},
       {"source", l.source}};
}

inline void from_json(const nlohmann::json& j, LabeledInstance& l) {
  l.features = j.at("features").get<FeatureVector>();
  l.label = label_from_int(j.at("label").get<long long>());
  l.annotator_ids = j.value("annotator_ids", std::vector<std::string>{});
  l.source = j.value("source", LabelSource::seed);
}

inline void to_json(nlohmann::json& j, const RoundRecord& r) {
  j = {{"round_index", r.round_index}, {"labeled_size", r.labeled_size}, {"metrics", r.metrics}};
}

inline void from_json(const nlohmann::json& j, RoundRecord& r) {
  r.round_index = j.at("round_index").get<std::uint32_t>();
  r.labeled_size = j.at("labeled_size").get<std::size_t>();
  r.metrics = j.at("metrics").get<MetricsReport>();
}

inline void to_json(nlohmann::json& j, const ModelState& s) {
  j = {{"learner_kind", s.learner_kind},
       {"hyperparameters", s.hyperparameters},
       {"trained", s.trained},
       {"training_set_size", s.training_set_size},
       {"history", s.history}};
}

inline void from_json(const nlohmann::json& j, ModelState& s) {
  s.learner_kind = j.at("learner_kind").get<LearnerKind>();
  s.hyperparameters = j.at("hyperparameters").get<std::map<std::string, std::string>>();
  s.trained = j.at("trained").get<bool>();
  s.training_set_size = j.at("training_set_size").get<std::size_t>();
  s.history.clear();
  for (const auto& r : j.at("history")) s.record(r.get<RoundRecord>());
}

}  // namespace trustlens
