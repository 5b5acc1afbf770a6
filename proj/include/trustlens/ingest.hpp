#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "json.hpp"
#include "trustlens/detail/csv.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/error.hpp"
#include "trustlens/model.hpp"

namespace trustlens::ingest {

enum class InputFormat { jsonl, csv };

inline InputFormat format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? InputFormat::csv : InputFormat::jsonl;
}

/// A record that was read but not accepted.
struct Reject {
  std::size_t line = 0;
  std::string reason;
  std::string record;

  bool operator==(const Reject&) const = default;
};

inline void to_json(nlohmann::json& j, const Reject& r) {
  j = {{"line", r.line}, {"reason", r.reason}, {"record", r.record}};
}

struct UserLoad {
  std::vector<UserProfile> users;
  std::vector<Reject> rejects;
};

struct TweetLoad {
  std::vector<TweetRecord> tweets;
  std::vector<Reject> rejects;
};

namespace detail {

// Thrown for a single bad record; the loaders turn it into a Reject.
struct RecordError : Error {
  using Error::Error;
};

inline const nlohmann::json* find_first(const nlohmann::json& obj,
                                        std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = obj.find(k);
    if (it != obj.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

inline std::uint64_t as_count(const nlohmann::json& v, const char* name) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) throw RecordError(std::string("negative counter: ") + name);
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d < 0) throw RecordError(std::string("negative counter: ") + name);
    if (d != std::floor(d) || !std::isfinite(d)) {
      throw RecordError(std::string("non-integer counter: ") + name);
    }
    return static_cast<std::uint64_t>(d);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (!s.empty() && s.front() == '-') throw RecordError(std::string("negative counter: ") + name);
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
      throw RecordError(std::string("non-integer counter: ") + name);
    }
    return out;
  }
  throw RecordError(std::string("non-integer counter: ") + name);
}

inline std::uint64_t count_field(const nlohmann::json& obj, const char* name,
                                 std::initializer_list<const char*> keys) {
  const auto* v = find_first(obj, keys);
  if (!v) throw RecordError(std::string("missing field: ") + name);
  return as_count(*v, name);
}

inline bool as_bool(const nlohmann::json& v, const char* name) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>() != 0;
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no" || s.empty()) return false;
  }
  throw RecordError(std::string("non-boolean field: ") + name);
}

inline std::string id_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw RecordError("malformed id");
}

inline bool non_empty_array(const nlohmann::json& entities, const char* key) {
  auto it = entities.find(key);
  return it != entities.end() && it->is_array() && !it->empty();
}

}  // namespace detail

/// Maps one API-shaped or canonical user object to a profile.
/// Throws detail::RecordError describing the first problem found.
inline UserProfile user_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw detail::RecordError("record is not an object");
  UserProfile p;
  const auto* id = detail::find_first(obj, {"user_id", "id_str", "id"});
  if (!id) throw detail::RecordError("missing field: user_id");
  p.user_id = detail::id_string(*id);
  if (p.user_id.empty()) throw detail::RecordError("missing field: user_id");
  p.followers = detail::count_field(obj, "followers", {"followers", "followers_count"});
  p.friends = detail::count_field(obj, "friends", {"friends", "friends_count"});
  p.statuses = detail::count_field(obj, "statuses", {"statuses", "statuses_count"});
  p.listed = detail::count_field(obj, "listed", {"listed", "listed_count"});
  if (const auto* pub = detail::find_first(obj, {"is_public", "public"})) {
    p.is_public = detail::as_bool(*pub, "is_public");
  } else if (const auto* prot = detail::find_first(obj, {"protected"})) {
    p.is_public = !detail::as_bool(*prot, "protected");
  } else {
    throw detail::RecordError("missing field: is_public");
  }
  return p;
}

inline TweetRecord tweet_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw detail::RecordError("record is not an object");
  TweetRecord t;
  const auto* id = detail::find_first(obj, {"tweet_id", "id_str", "id"});
  if (!id) throw detail::RecordError("missing field: tweet_id");
  t.tweet_id = detail::as_count(*id, "tweet_id");

  if (const auto* uid = detail::find_first(obj, {"user_id"})) {
    t.user_id = detail::id_string(*uid);
  } else if (const auto* user = detail::find_first(obj, {"user"}); user && user->is_object()) {
    const auto* inner = detail::find_first(*user, {"id_str", "id"});
    if (!inner) throw detail::RecordError("missing field: user_id");
    t.user_id = detail::id_string(*inner);
  }
  if (t.user_id.empty()) throw detail::RecordError("missing field: user_id");

  t.retweet_count = detail::count_field(obj, "retweet_count", {"retweet_count"});
  t.like_count = detail::count_field(obj, "like_count", {"like_count", "favorite_count"});

  const auto* entities = detail::find_first(obj, {"entities"});
  if (const auto* v = detail::find_first(obj, {"has_url"})) {
    t.has_url = detail::as_bool(*v, "has_url");
  } else if (entities && entities->is_object()) {
    t.has_url = detail::non_empty_array(*entities, "urls");
  }
  if (const auto* v = detail::find_first(obj, {"has_hashtag"})) {
    t.has_hashtag = detail::as_bool(*v, "has_hashtag");
  } else if (entities && entities->is_object()) {
    t.has_hashtag = detail::non_empty_array(*entities, "hashtags");
  }
  if (const auto* v = detail::find_first(obj, {"is_retweet_of_other"})) {
    t.is_retweet_of_other = detail::as_bool(*v, "is_retweet_of_other");
  } else {
    t.is_retweet_of_other = detail::find_first(obj, {"retweeted_status"}) != nullptr;
  }
  if (const auto* text = detail::find_first(obj, {"text", "full_text"})) {
    if (!text->is_string()) throw detail::RecordError("non-string field: text");
    t.text = text->get<std::string>();
  }
  return t;
}

namespace detail {

// Calls `on_record(json, line, raw)` for every record of a JSONL or CSV file.
// CSV rows become objects keyed by the header. `on_malformed(line, raw, why)`
// handles rows that cannot be parsed at all.
template <typename OnRecord, typename OnMalformed>
void for_each_record(const std::filesystem::path& path, InputFormat format,
                     OnRecord&& on_record, OnMalformed&& on_malformed) {
  auto in = trustlens::detail::open_input(path);
  if (format == InputFormat::jsonl) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trustlens::detail::is_blank(line)) continue;
      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(trustlens::detail::chomp(line));
      } catch (const nlohmann::json::parse_error& e) {
        on_malformed(lineno, line, std::string("malformed JSON: ") + e.what());
        continue;
      }
      on_record(obj, lineno, line);
    }
    return;
  }
  std::size_t lines = 0;
  auto header = trustlens::detail::read_csv_record(in, lines);
  if (!header) return;
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }
  while (true) {
    const std::size_t start = lines + 1;
    auto row = trustlens::detail::read_csv_record(in, lines);
    if (!row) break;
    if (row->size() == 1 && trustlens::detail::is_blank(row->front())) continue;
    std::string raw;
    for (std::size_t i = 0; i < row->size(); ++i) {
      if (i) raw += ',';
      raw += trustlens::detail::csv_escape((*row)[i]);
    }
    if (row->size() != header->size()) {
      on_malformed(start, raw, "column count mismatch");
      continue;
    }
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header->size(); ++i) {
      if (!(*row)[i].empty()) obj[(*header)[i]] = (*row)[i];
    }
    on_record(obj, start, raw);
  }
}

}  // namespace detail

/// Reads user profiles. A line that is not valid JSON is fatal (ParseError
/// carrying the line number); records that parse but fail validation or the
/// selection rule are routed to `rejects`.
inline UserLoad load_users(const std::filesystem::path& path, InputFormat format,
                           SelectionRule rule = SelectionRule::on) {
  UserLoad out;
  std::unordered_set<std::string> seen;
  detail::for_each_record(
      path, format,
      [&](const nlohmann::json& obj, std::size_t line, const std::string& raw) {
        try {
          auto p = user_from_json(obj);
          if (rule == SelectionRule::on) {
            if (auto reason = selection_reject_reason(p)) {
              out.rejects.push_back({line, *reason, raw});
              return;
            }
          }
          if (!seen.insert(p.user_id).second) {
            out.rejects.push_back({line, "duplicate user_id", raw});
            return;
          }
          out.users.push_back(std::move(p));
        } catch (const detail::RecordError& e) {
          out.rejects.push_back({line, e.what(), raw});
        }
      },
      [&](std::size_t line, const std::string&, const std::string& why) {
        throw ParseError(path.string() + ": " + why, line);
      });
  return out;
}

/// Applies the max-ID window and duplicate collapse to an in-memory tweet
/// list: keeps tweet_id <= max_id, keeps the first occurrence of each id, and
/// orders the result by user_id, then descending tweet_id.
inline std::vector<TweetRecord> filter_tweets(std::vector<TweetRecord> tweets,
                                              std::optional<TweetId> max_id) {
  std::unordered_set<TweetId> seen;
  std::vector<TweetRecord> kept;
  kept.reserve(tweets.size());
  for (auto& t : tweets) {
    if (max_id && t.tweet_id > *max_id) continue;
    if (!seen.insert(t.tweet_id).second) continue;
    kept.push_back(std::move(t));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const TweetRecord& a, const TweetRecord& b) {
    if (a.user_id != b.user_id) return a.user_id < b.user_id;
    return a.tweet_id > b.tweet_id;
  });
  return kept;
}

/// Reads tweets; malformed records of any kind are rejected, not fatal.
inline TweetLoad load_tweets(const std::filesystem::path& path,
                             std::optional<TweetId> max_id = std::nullopt,
                             std::optional<InputFormat> format = std::nullopt) {
  TweetLoad out;
  std::vector<TweetRecord> raw_tweets;
  detail::for_each_record(
      path, format.value_or(format_for(path)),
      [&](const nlohmann::json& obj, std::size_t line, const std::string& raw) {
        try {
          raw_tweets.push_back(tweet_from_json(obj));
        } catch (const detail::RecordError& e) {
          out.rejects.push_back({line, e.what(), raw});
        }
      },
      [&](std::size_t line, const std::string& raw, const std::string& why) {
        out.rejects.push_back({line, why, raw});
      });
  out.tweets = filter_tweets(std::move(raw_tweets), max_id);
  return out;
}

/// Drops tweets whose author is not among `users`.
inline std::vector<TweetRecord> restrict_to_users(std::vector<TweetRecord> tweets,
                                                  std::span<const UserProfile> users) {
  std::unordered_set<std::string> ids;
  for (const auto& u : users) ids.insert(u.user_id);
  std::erase_if(tweets, [&](const TweetRecord& t) { return !ids.contains(t.user_id); });
  return tweets;
}

// ---------------------------------------------------------------------------
// Descriptive statistics

enum class StddevKind { population, sample };

struct ColumnStats {
  double total = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
};

struct DescriptiveStats {
  std::size_t count = 0;
  ColumnStats statuses;
  ColumnStats followers;
  ColumnStats listed;
  ColumnStats friends;
};

namespace detail {

template <typename Get>
ColumnStats column_stats(std::span<const UserProfile> users, Get get, StddevKind kind) {
  ColumnStats s;
  const double n = static_cast<double>(users.size());
  for (const auto& u : users) s.total += static_cast<double>(get(u));
  s.mean = s.total / n;
  double ss = 0.0;
  for (const auto& u : users) {
    const double d = static_cast<double>(get(u)) - s.mean;
    ss += d * d;
  }
  const double dof = kind == StddevKind::sample ? n - 1.0 : n;
  s.stddev = dof > 0.0 ? std::sqrt(ss / dof) : 0.0;
  return s;
}

}  // namespace detail

inline DescriptiveStats descriptive_stats(std::span<const UserProfile> users,
                                          StddevKind kind = StddevKind::population) {
  if (users.empty()) throw ValidationError("no records");
  DescriptiveStats s;
  s.count = users.size();
  s.statuses = detail::column_stats(users, [](const UserProfile& u) { return u.statuses; }, kind);
  s.followers = detail::column_stats(users, [](const UserProfile& u) { return u.followers; }, kind);
  s.listed = detail::column_stats(users, [](const UserProfile& u) { return u.listed; }, kind);
  s.friends = detail::column_stats(users, [](const UserProfile& u) { return u.friends; }, kind);
  return s;
}

/// Number of records implied by a (total, mean) pair. For statistics computed
/// here it equals `count`; for externally reported tables it exposes totals
/// and means that cannot describe the same population.
inline double implied_count(const ColumnStats& c) {
  return c.mean == 0.0 ? 0.0 : c.total / c.mean;
}

inline void to_json(nlohmann::json& j, const ColumnStats& c) {
  j = {{"total", c.total}, {"mean", c.mean}, {"stddev", c.stddev}};
}

inline void to_json(nlohmann::json& j, const DescriptiveStats& s) {
  j = {{"count", s.count},       {"statuses", s.statuses}, {"followers", s.followers},
       {"listed", s.listed},     {"friends", s.friends}};
}

// ---------------------------------------------------------------------------
// Canonical on-disk dataset

struct DatasetManifest {
  std::size_t user_count = 0;
  std::size_t tweet_count = 0;
  std::vector<std::string> source_files;
  std::vector<std::string> filters_applied;
  std::string created_at;

  bool operator==(const DatasetManifest&) const = default;
};

inline void to_json(nlohmann::json& j, const DatasetManifest& m) {
  j = {{"user_count", m.user_count},
       {"tweet_count", m.tweet_count},
       {"source_files", m.source_files},
       {"filters_applied", m.filters_applied},
       {"created_at", m.created_at}};
}

inline void from_json(const nlohmann::json& j, DatasetManifest& m) {
  m.user_count = j.at("user_count").get<std::size_t>();
  m.tweet_count = j.at("tweet_count").get<std::size_t>();
  m.source_files = j.at("source_files").get<std::vector<std::string>>();
  m.filters_applied = j.at("filters_applied").get<std::vector<std::string>>();
  m.created_at = j.at("created_at").get<std::string>();
}

inline constexpr const char* kUsersFile = "users.jsonl";
inline constexpr const char* kTweetsFile = "tweets.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kRejectsFile = "rejects.jsonl";

struct Dataset {
  std::vector<UserProfile> users;
  std::vector<TweetRecord> tweets;
  DatasetManifest manifest;
};

/// Writes users.jsonl, tweets.jsonl, rejects.jsonl and manifest.json into
/// `dir`. Output is a pure function of the arguments.
inline DatasetManifest persist(std::span<const UserProfile> users,
                               std::span<const TweetRecord> tweets,
                               const std::filesystem::path& dir, DatasetManifest meta,
                               std::span<const Reject> rejects = {}) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error("cannot create output directory '" + dir.string() + "'");
  }
  std::string u, t, r;
  for (const auto& p : users) u += nlohmann::json(p).dump() + '\n';
  for (const auto& tw : tweets) t += nlohmann::json(tw).dump() + '\n';
  for (const auto& rej : rejects) r += nlohmann::json(rej).dump() + '\n';
  meta.user_count = users.size();
  meta.tweet_count = tweets.size();
  trustlens::detail::write_file(dir / kUsersFile, u);
  trustlens::detail::write_file(dir / kTweetsFile, t);
  trustlens::detail::write_file(dir / kRejectsFile, r);
  trustlens::detail::write_file(dir / kManifestFile, nlohmann::json(meta).dump(2) + '\n');
  return meta;
}

/// Reads a directory written by persist() and checks the manifest counts.
inline Dataset load_dataset(const std::filesystem::path& dir) {
  Dataset d;
  d.users = trustlens::detail::read_jsonl<UserProfile>(dir / kUsersFile);
  d.tweets = trustlens::detail::read_jsonl<TweetRecord>(dir / kTweetsFile);
  if (std::filesystem::exists(dir / kManifestFile)) {
    try {
      d.manifest = nlohmann::json::parse(trustlens::detail::read_file(dir / kManifestFile))
                       .get<DatasetManifest>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("malformed manifest: " + std::string(e.what()));
    }
    if (d.manifest.user_count != d.users.size() || d.manifest.tweet_count != d.tweets.size()) {
      throw ValidationError("manifest counts do not match dataset files in '" + dir.string() + "'");
    }
  } else {
    d.manifest.user_count = d.users.size();
    d.manifest.tweet_count = d.tweets.size();
  }
  return d;
}

}  // namespace trustlens::ingest
