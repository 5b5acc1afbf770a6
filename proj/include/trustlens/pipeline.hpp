#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "trustlens/active.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/error.hpp"
#include "trustlens/ingest.hpp"
#include "trustlens/model.hpp"
#include "trustlens/preprocess.hpp"
#include "trustlens/scoring.hpp"
#include "trustlens/sentiment.hpp"

// Glue from a persisted dataset directory to an active-learning pool.
namespace trustlens::pipeline {

struct Corpus {
  std::vector<FeatureVector> raw;         // scored, influence filled in
  std::vector<FeatureVector> normalized;  // same order as raw
  preprocess::NormalizationParams normalization;
  scoring::InfluenceContext influence;
  std::vector<scoring::ScoreReject> rejects;
  std::unordered_map<std::string, std::vector<std::string>> sample_tweets;  // at most 5 per user
};

inline Corpus score_corpus(const ingest::Dataset& ds, const scoring::ScoringOptions& opts = {},
                           const sentiment::Lexicon& lexicon = sentiment::Lexicon::bundled()) {
  auto scored = scoring::score_dataset(ds.users, ds.tweets, lexicon, opts);
  Corpus c;
  c.normalization = preprocess::fit(scored.vectors, opts.clip_percentile);
  c.normalized = preprocess::transform_all(scored.vectors, c.normalization);
  c.raw = std::move(scored.vectors);
  c.influence = scored.context;
  c.rejects = std::move(scored.rejects);
  for (const auto& t : ds.tweets) {
    auto& texts = c.sample_tweets[t.user_id];
    if (texts.size() < 5) texts.push_back(t.text);
  }
  return c;
}

/// One line of a labels file: {"user_id", "label", "annotator_ids"?}.
struct LabelEntry {
  std::string user_id;
  Label label = Label::untrusted;
  std::vector<std::string> annotator_ids;
};

inline void to_json(nlohmann::json& j, const LabelEntry& e) {
  j = {{"user_id", e.user_id}, {"label", to_int(e.label)}, {"annotator_ids", e.annotator_ids}};
}

inline void from_json(const nlohmann::json& j, LabelEntry& e) {
  if (!j.is_object()) throw ValidationError("label entry must be an object");
  if (!j.contains("user_id")) throw ValidationError("missing field: user_id");
  if (!j.contains("label")) throw ValidationError("missing field: label");
  const auto& id = j.at("user_id");
  e.user_id = id.is_string() ? id.get<std::string>() : id.dump();
  const auto& l = j.at("label");
  if (!l.is_number_integer()) throw ValidationError("label must be 0 or 1");
  e.label = label_from_int(l.get<long long>());
  e.annotator_ids = j.value("annotator_ids", std::vector<std::string>{});
}

inline std::vector<LabelEntry> read_labels(const std::filesystem::path& path) {
  auto entries = trustlens::detail::read_jsonl<LabelEntry>(path);
  std::unordered_set<std::string> seen;
  for (const auto& e : entries) {
    if (!seen.insert(e.user_id).second) throw ValidationError("duplicate label for user '" + e.user_id + "'");
  }
  return entries;
}

inline std::unordered_map<std::string, Label> label_map(const std::vector<LabelEntry>& entries) {
  std::unordered_map<std::string, Label> m;
  for (const auto& e : entries) m.emplace(e.user_id, e.label);
  return m;
}

/// Seed-labeled users form the labeled set; every other scored user is
/// unlabeled. Seed labels for users missing from the corpus are an error.
inline active::Pool make_pool(const std::vector<FeatureVector>& normalized, const std::vector<LabelEntry>& seed,
                              std::size_t batch_size) {
  std::unordered_map<std::string, const FeatureVector*> by_id;
  for (const auto& v : normalized) by_id.emplace(v.user_id, &v);
  active::Pool pool;
  pool.batch_size = batch_size;
  std::unordered_set<std::string> labeled;
  for (const auto& e : seed) {
    auto it = by_id.find(e.user_id);
    if (it == by_id.end()) throw ValidationError("seed label for unknown user '" + e.user_id + "'");
    auto ids = e.annotator_ids.empty() ? std::vector<std::string>{"seed"} : e.annotator_ids;
    pool.labeled.push_back({*it->second, e.label, std::move(ids), LabelSource::seed});
    labeled.insert(e.user_id);
  }
  for (const auto& v : normalized) {
    if (!labeled.contains(v.user_id)) pool.unlabeled.push_back(v);
  }
  pool.validate();
  return pool;
}

}  // namespace trustlens::pipeline
