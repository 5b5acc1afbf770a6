#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "trustlens/active.hpp"
#include "trustlens/detail/random.hpp"
#include "trustlens/error.hpp"
#include "trustlens/model.hpp"
#include "trustlens/preprocess.hpp"
#include "trustlens/scoring.hpp"
#include "trustlens/sentiment.hpp"

// Calibrated synthetic cohorts standing in for manually annotated accounts.
// Trusted accounts get larger audiences, more engagement per tweet, fewer
// retweets of others and more positive text; untrusted accounts are a mix of
// spam-like and low-quality profiles.
namespace trustlens::synthetic {

struct CohortParams {
  std::size_t users = 5000;
  double trusted_fraction = 0.55;
  std::size_t min_tweets = 10;
  std::size_t max_tweets = 40;
  double label_noise = 0.02;  // fraction of truth labels flipped
  std::uint64_t seed = 0;
};

struct Cohort {
  std::vector<UserProfile> users;
  std::vector<TweetRecord> tweets;
  std::unordered_map<std::string, Label> truth;
};

namespace detail {

using trustlens::detail::Rng;

struct Archetype {
  double log_followers, log_friends, log_statuses;  // means of log counts
  double log_quality;                               // mean engagement multiplier (log)
  double p_pos, p_neg;
  double p_url, p_hashtag, p_retweet_other;
};

// trusted, spam-like, low-quality
inline constexpr std::array<Archetype, 3> kArchetypes = {{
    {7.0, 5.8, 8.0, 0.0, 0.50, 0.12, 0.40, 0.40, 0.15},
    {4.5, 6.8, 9.0, -1.0, 0.25, 0.35, 0.75, 0.60, 0.50},
    {5.8, 6.0, 7.5, -0.5, 0.20, 0.45, 0.30, 0.30, 0.35},
}};

inline constexpr std::array<const char*, 10> kPositive = {
    "good", "great", "love", "happy", "excellent", "nice", "best", "wonderful", "beautiful", "amazing"};
inline constexpr std::array<const char*, 10> kNegative = {
    "bad", "terrible", "awful", "hate", "worst", "horrible", "sad", "angry", "poor", "wrong"};
inline constexpr std::array<const char*, 16> kFiller = {
    "the", "today", "team", "update", "news", "people", "city", "market",
    "project", "we", "report", "weekend", "meeting", "coffee", "morning", "music"};

template <std::size_t N>
const char* pick(Rng& rng, const std::array<const char*, N>& words) {
  return words[trustlens::detail::uniform_index(rng, N)];
}

inline bool coin(Rng& rng, double p) { return trustlens::detail::uniform01(rng) < p; }

inline Count log_normal_count(Rng& rng, double mu, double sigma) {
  const double v = std::exp(trustlens::detail::normal(rng, mu, sigma));
  return static_cast<Count>(std::max(1.0, std::round(v)));
}

inline std::string tweet_text(Rng& rng, const Archetype& a, bool has_url, bool has_hashtag) {
  std::string text;
  const std::size_t words = 5 + trustlens::detail::uniform_index(rng, 6);
  const double u = trustlens::detail::uniform01(rng);
  const char* mood = u < a.p_pos ? pick(rng, kPositive) : u < a.p_pos + a.p_neg ? pick(rng, kNegative) : nullptr;
  const std::size_t at = trustlens::detail::uniform_index(rng, words);
  for (std::size_t w = 0; w < words; ++w) {
    if (!text.empty()) text += ' ';
    text += (mood && w == at) ? mood : pick(rng, kFiller);
  }
  if (has_hashtag) text += " #topic";
  if (has_url) text += " https://t.co/x";
  return text;
}

}  // namespace detail

inline Cohort generate_cohort(const CohortParams& p) {
  if (p.users == 0) throw ValidationError("cohort needs at least one user");
  if (p.min_tweets == 0 || p.max_tweets < p.min_tweets) throw ValidationError("bad tweet count range");
  if (!(p.trusted_fraction > 0.0 && p.trusted_fraction < 1.0)) throw ValidationError("trusted_fraction must be in (0,1)");
  using namespace trustlens::detail;
  Cohort c;
  c.users.reserve(p.users);
  TweetId next_tweet = 1;
  for (std::size_t u = 0; u < p.users; ++u) {
    Rng rng(mix_seed(p.seed, u));
    char id[32];
    std::snprintf(id, sizeof id, "u%06zu", u);
    const bool trusted = uniform01(rng) < p.trusted_fraction;
    const auto& a = detail::kArchetypes[trusted ? 0 : 1 + uniform_index(rng, 2)];

    UserProfile prof;
    prof.user_id = id;
    prof.followers = detail::log_normal_count(rng, a.log_followers, 1.3);
    prof.friends = detail::log_normal_count(rng, a.log_friends, 1.0);
    const std::size_t n = p.min_tweets + uniform_index(rng, p.max_tweets - p.min_tweets + 1);
    prof.statuses = detail::log_normal_count(rng, a.log_statuses, 1.0) + n;
    prof.listed = poisson(rng, static_cast<double>(prof.followers) * uniform(rng, 0.002, 0.02));
    prof.is_public = true;

    const double quality = std::exp(normal(rng, a.log_quality, 0.6));
    const double reach = 0.01 * std::pow(static_cast<double>(prof.followers), 0.9) * quality;
    for (std::size_t t = 0; t < n; ++t) {
      TweetRecord tw;
      tw.tweet_id = next_tweet++;
      tw.user_id = prof.user_id;
      tw.has_url = detail::coin(rng, a.p_url);
      tw.has_hashtag = detail::coin(rng, a.p_hashtag);
      tw.is_retweet_of_other = detail::coin(rng, a.p_retweet_other);
      tw.retweet_count = poisson(rng, reach);
      tw.like_count = poisson(rng, 2.5 * reach);
      tw.text = detail::tweet_text(rng, a, tw.has_url, tw.has_hashtag);
      c.tweets.push_back(std::move(tw));
    }
    const bool flip = uniform01(rng) < p.label_noise;
    c.truth.emplace(prof.user_id, (trusted != flip) ? Label::trusted : Label::untrusted);
    c.users.push_back(std::move(prof));
  }
  return c;
}

/// A scored, normalized cohort split into a labeled seed set and an
/// unlabeled pool.
struct Experiment {
  active::Pool pool;
  std::vector<FeatureVector> vectors;  // normalized, cohort order
  std::unordered_map<std::string, Label> truth;
};

/// Picks `seed_trusted` trusted and `seed_untrusted` untrusted users (by truth
/// label) as the seed set; everything else is the pool.
inline Experiment make_experiment(const Cohort& cohort, std::size_t seed_trusted, std::size_t seed_untrusted,
                                  std::size_t batch_size, std::uint64_t seed,
                                  const scoring::ScoringOptions& opts = {},
                                  const sentiment::Lexicon& lexicon = sentiment::Lexicon::bundled()) {
  const auto scored = scoring::score_dataset(cohort.users, cohort.tweets, lexicon, opts);
  const auto params = preprocess::fit(scored.vectors, opts.clip_percentile);
  Experiment e;
  e.vectors = preprocess::transform_all(scored.vectors, params);
  e.truth = cohort.truth;

  std::vector<std::size_t> order(e.vectors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  trustlens::detail::Rng rng(trustlens::detail::mix_seed(seed, 0x5EED));
  trustlens::detail::shuffle(order, rng);
  std::size_t got_t = 0, got_u = 0;
  std::vector<bool> in_seed(order.size(), false);
  for (auto i : order) {
    const Label l = e.truth.at(e.vectors[i].user_id);
    if (l == Label::trusted && got_t < seed_trusted) {
      ++got_t;
      in_seed[i] = true;
    } else if (l == Label::untrusted && got_u < seed_untrusted) {
      ++got_u;
      in_seed[i] = true;
    }
  }
  if (got_t < seed_trusted || got_u < seed_untrusted) throw ValidationError("cohort too small for the seed split");
  for (auto i : order) {
    if (in_seed[i]) e.pool.labeled.push_back({e.vectors[i], e.truth.at(e.vectors[i].user_id), {"seed"}, LabelSource::seed});
  }
  for (std::size_t i = 0; i < e.vectors.size(); ++i) {
    if (!in_seed[i]) e.pool.unlabeled.push_back(e.vectors[i]);
  }
  e.pool.batch_size = batch_size;
  return e;
}

}  // namespace trustlens::synthetic
