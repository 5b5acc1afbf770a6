#pragma once

#include <algorithm>
#include <span>
#include <string_view>

#include "trustlens/error.hpp"
#include "trustlens/model.hpp"

// Per-user engagement ratios. Numerators sum over the collected tweets; the
// denominator is the account's status count (or, with Denominator::collected,
// the number of collected tweets).
namespace trustlens::features {

enum class Denominator { statuses, collected };

inline Denominator denominator_from_string(std::string_view s) {
  if (s == "statuses") return Denominator::statuses;
  if (s == "collected") return Denominator::collected;
  throw ValidationError("unknown denominator '" + std::string(s) + "'");
}

inline Count denominator(const UserProfile& profile, std::span<const TweetRecord> tweets,
                         Denominator kind) {
  return kind == Denominator::statuses ? profile.statuses : static_cast<Count>(tweets.size());
}

namespace detail {

inline void require_active(Count n_t) {
  if (n_t == 0) throw ValidationError("inactive user");
}

template <typename Pred>
Count count_if(std::span<const TweetRecord> tweets, Pred pred) {
  return static_cast<Count>(std::count_if(tweets.begin(), tweets.end(), pred));
}

inline double share(Count num, Count n_t) {
  return std::min(1.0, static_cast<double>(num) / static_cast<double>(n_t));
}

}  // namespace detail

inline Count total_retweets(std::span<const TweetRecord> tweets) {
  Count s = 0;
  for (const auto& t : tweets) s += t.retweet_count;
  return s;
}

inline Count total_likes(std::span<const TweetRecord> tweets) {
  Count s = 0;
  for (const auto& t : tweets) s += t.like_count;
  return s;
}

inline Count url_count(std::span<const TweetRecord> tweets) {
  return detail::count_if(tweets, [](const TweetRecord& t) { return t.has_url; });
}

inline Count hashtag_count(std::span<const TweetRecord> tweets) {
  return detail::count_if(tweets, [](const TweetRecord& t) { return t.has_hashtag; });
}

inline Count retweets_of_others(std::span<const TweetRecord> tweets) {
  return detail::count_if(tweets, [](const TweetRecord& t) { return t.is_retweet_of_other; });
}

/// Retweets received per status. Not bounded above.
inline double retweet_ratio(std::span<const TweetRecord> tweets, Count n_t) {
  detail::require_active(n_t);
  return static_cast<double>(total_retweets(tweets)) / static_cast<double>(n_t);
}

/// Likes received per status. Not bounded above.
inline double liked_ratio(std::span<const TweetRecord> tweets, Count n_t) {
  detail::require_active(n_t);
  return static_cast<double>(total_likes(tweets)) / static_cast<double>(n_t);
}

// The share ratios saturate at 1 when more tweets were collected than the
// account reports (stale status counters).
inline double url_ratio(std::span<const TweetRecord> tweets, Count n_t) {
  detail::require_active(n_t);
  return detail::share(url_count(tweets), n_t);
}

inline double hashtag_ratio(std::span<const TweetRecord> tweets, Count n_t) {
  detail::require_active(n_t);
  return detail::share(hashtag_count(tweets), n_t);
}

inline double original_content_ratio(std::span<const TweetRecord> tweets, Count n_t) {
  detail::require_active(n_t);
  const Count rts = retweets_of_others(tweets);
  if (rts >= n_t) return 0.0;
  return std::clamp(static_cast<double>(n_t - rts) / static_cast<double>(n_t), 0.0, 1.0);
}

/// Diagnostic only; not a classifier input.
inline double follower_following_ratio(const UserProfile& p) {
  if (p.friends == 0) throw ValidationError("zero friends");
  return static_cast<double>(p.followers) / static_cast<double>(p.friends);
}

}  // namespace trustlens::features
