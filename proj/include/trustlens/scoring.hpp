#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "trustlens/error.hpp"
#include "trustlens/features.hpp"
#include "trustlens/model.hpp"
#include "trustlens/preprocess.hpp"
#include "trustlens/sentiment.hpp"

namespace trustlens::scoring {

/// Largest h such that at least h of the counts are >= h.
inline Count h_index(std::span<const Count> counts) {
  std::vector<Count> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Count h = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < static_cast<Count>(i + 1)) break;
    h = static_cast<Count>(i + 1);
  }
  return h;
}

inline Count retweet_hindex(std::span<const TweetRecord> tweets) {
  std::vector<Count> c;
  c.reserve(tweets.size());
  for (const auto& t : tweets) c.push_back(t.retweet_count);
  return h_index(c);
}

inline Count liked_hindex(std::span<const TweetRecord> tweets) {
  std::vector<Count> c;
  c.reserve(tweets.size());
  for (const auto& t : tweets) c.push_back(t.like_count);
  return h_index(c);
}

/// 2 log(1+followers) + log(1+statuses) - log(1+friends), base 10 unless
/// another base is given.
inline double social_reputation(Count followers, Count statuses, Count friends, double base = 10.0) {
  auto lg = [base](Count x) {
    const double v = 1.0 + static_cast<double>(x);
    return base == 10.0 ? std::log10(v) : std::log(v) / std::log(base);
  };
  return 2.0 * lg(followers) + lg(statuses) - lg(friends);
}

inline double social_reputation(const UserProfile& p, double base = 10.0) {
  return social_reputation(p.followers, p.statuses, p.friends, base);
}

/// Share of analyzed tweets that are not negative.
inline double sentiment_score(Count n_pos, Count n_neu, Count n_neg) {
  const Count total = n_pos + n_neu + n_neg;
  if (total == 0) throw ValidationError("no analyzed tweets");
  return static_cast<double>(n_neu + n_pos) / static_cast<double>(total);
}

inline double tweet_credibility(double r_ret, double r_lik, double r_has, double r_url, double r_ori) {
  for (double x : {r_ret, r_lik, r_has, r_url, r_ori}) {
    if (!std::isfinite(x) || x < 0.0) throw ValidationError("tweet credibility inputs must be finite and >= 0");
  }
  return (r_ret + r_lik + r_has + r_url) / 4.0 * r_ori;
}

/// Mean of the five dataset-normalized components.
inline double influence_score(double sen_s, double twt_cr, double r_s, double r_hind, double l_hind) {
  for (double x : {sen_s, twt_cr, r_s, r_hind, l_hind}) {
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("unnormalized component");
  }
  return (sen_s + twt_cr + r_s + r_hind + l_hind) / 5.0;
}

struct ScoringOptions {
  features::Denominator denominator = features::Denominator::statuses;
  double dead_zone = sentiment::kDefaultDeadZone;
  double clip_percentile = preprocess::kDefaultPercentile;
};

/// Every field except `influence`, which needs the dataset-level pass.
inline FeatureVector raw_features(const UserProfile& profile, std::span<const TweetRecord> tweets,
                                  const sentiment::Lexicon& lexicon,
                                  const ScoringOptions& opts = {}) {
  const Count n_t = features::denominator(profile, tweets, opts.denominator);
  FeatureVector v;
  v.user_id = profile.user_id;
  v[Feature::followers] = static_cast<double>(profile.followers);
  v[Feature::friends] = static_cast<double>(profile.friends);
  v[Feature::statuses] = static_cast<double>(profile.statuses);
  v[Feature::listed] = static_cast<double>(profile.listed);
  v[Feature::n_ret] = static_cast<double>(features::total_retweets(tweets));
  v[Feature::n_lik] = static_cast<double>(features::total_likes(tweets));
  v[Feature::url_count] = static_cast<double>(features::url_count(tweets));

  v[Feature::r_ret] = features::retweet_ratio(tweets, n_t);
  v[Feature::r_lik] = features::liked_ratio(tweets, n_t);
  v[Feature::r_url] = features::url_ratio(tweets, n_t);
  v[Feature::r_has] = features::hashtag_ratio(tweets, n_t);
  v[Feature::r_ori] = features::original_content_ratio(tweets, n_t);

  v[Feature::retweet_hindex] = static_cast<double>(retweet_hindex(tweets));
  v[Feature::liked_hindex] = static_cast<double>(liked_hindex(tweets));
  v[Feature::social_reputation] = social_reputation(profile);

  std::vector<std::string_view> texts;
  texts.reserve(tweets.size());
  for (const auto& t : tweets) texts.push_back(t.text);
  const auto counts = sentiment::count_polarities(texts, lexicon, opts.dead_zone);
  v[Feature::n_pos] = static_cast<double>(counts.positive);
  v[Feature::n_neu] = static_cast<double>(counts.neutral);
  v[Feature::n_neg] = static_cast<double>(counts.negative);
  v[Feature::sentiment_score] = sentiment_score(counts.positive, counts.neutral, counts.negative);

  v[Feature::tweet_credibility] = tweet_credibility(v[Feature::r_ret], v[Feature::r_lik], v[Feature::r_has],
                                                    v[Feature::r_url], v[Feature::r_ori]);
  return v;
}

inline constexpr std::array<Feature, 5> kInfluenceComponents = {
    Feature::sentiment_score, Feature::tweet_credibility, Feature::social_reputation,
    Feature::retweet_hindex, Feature::liked_hindex};

/// Dataset-level normalization of the five influence components.
struct InfluenceContext {
  std::array<preprocess::ColumnParams, 5> components{};
};

inline InfluenceContext fit_influence_context(std::span<const FeatureVector> raw,
                                              double percentile = preprocess::kDefaultPercentile) {
  if (raw.empty()) throw ValidationError("no records");
  const auto unbounded = preprocess::default_unbounded();
  InfluenceContext ctx;
  std::vector<double> column(raw.size());
  for (std::size_t k = 0; k < kInfluenceComponents.size(); ++k) {
    const Feature f = kInfluenceComponents[k];
    for (std::size_t i = 0; i < raw.size(); ++i) column[i] = raw[i][f];
    const bool clip = std::find(unbounded.begin(), unbounded.end(), f) != unbounded.end();
    ctx.components[k] = preprocess::fit_column(column, percentile, clip);
  }
  return ctx;
}

inline double influence_of(const FeatureVector& raw, const InfluenceContext& ctx) {
  std::array<double, 5> n{};
  for (std::size_t k = 0; k < n.size(); ++k) {
    n[k] = preprocess::transform_value(raw[kInfluenceComponents[k]], ctx.components[k]);
  }
  return influence_score(n[0], n[1], n[2], n[3], n[4]);
}

inline FeatureVector score_user(const UserProfile& profile, std::span<const TweetRecord> tweets,
                                const sentiment::Lexicon& lexicon, const InfluenceContext& ctx,
                                const ScoringOptions& opts = {}) {
  auto v = raw_features(profile, tweets, lexicon, opts);
  v[Feature::influence] = influence_of(v, ctx);
  return v;
}

struct ScoreReject {
  std::string user_id;
  std::string reason;
};

struct ScoredDataset {
  std::vector<FeatureVector> vectors;
  std::vector<ScoreReject> rejects;
  InfluenceContext context;
};

/// Raw pass over every user, dataset-level fit of the influence components,
/// then the influence pass. Users whose features cannot be computed are
/// reported in `rejects`.
inline ScoredDataset score_dataset(std::span<const UserProfile> users,
                                   std::span<const TweetRecord> tweets,
                                   const sentiment::Lexicon& lexicon,
                                   const ScoringOptions& opts = {}) {
  if (users.empty()) throw ValidationError("no records");
  std::unordered_map<std::string, std::vector<TweetRecord>> by_user;
  for (const auto& t : tweets) by_user[t.user_id].push_back(t);
  ScoredDataset out;
  static const std::vector<TweetRecord> kNone;
  for (const auto& u : users) {
    auto it = by_user.find(u.user_id);
    const auto& ts = it == by_user.end() ? kNone : it->second;
    try {
      out.vectors.push_back(raw_features(u, ts, lexicon, opts));
    } catch (const ValidationError& e) {
      out.rejects.push_back({u.user_id, e.what()});
    }
  }
  if (out.vectors.empty()) throw ValidationError("no scorable records");
  out.context = fit_influence_context(out.vectors, opts.clip_percentile);
  for (auto& v : out.vectors) v[Feature::influence] = influence_of(v, out.context);
  return out;
}

inline nlohmann::json influence_metadata(const InfluenceContext& ctx, const ScoringOptions& opts) {
  nlohmann::json comps = nlohmann::json::object();
  for (std::size_t k = 0; k < kInfluenceComponents.size(); ++k) {
    const auto& c = ctx.components[k];
    comps[std::string(feature_name(kInfluenceComponents[k]))] = {
        {"clip_low", c.clip_low}, {"clip_high", c.clip_high}, {"min", c.min}, {"max", c.max}};
  }
  return {{"influence_normalization", "components min-max normalized across the dataset before averaging"},
          {"influence_is_dataset_relative", true},
          {"log_base", 10},
          {"denominator", opts.denominator == features::Denominator::statuses ? "statuses" : "collected"},
          {"dead_zone", opts.dead_zone},
          {"clip_percentile", opts.clip_percentile},
          {"components", comps}};
}

}  // namespace trustlens::scoring
