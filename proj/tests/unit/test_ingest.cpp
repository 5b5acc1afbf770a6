#include <gtest/gtest.h>

#include "support/helpers.hpp"
#include "trustlens/ingest.hpp"

using namespace trustlens;
using namespace trustlens::ingest;
using testing_support::TempDir;
using testing_support::read_text;
using testing_support::write_text;

namespace {

std::string user_line(const std::string& id, int followers, int friends, int statuses, bool pub) {
  return R"({"user_id":")" + id + R"(","followers":)" + std::to_string(followers) +
         R"(,"friends":)" + std::to_string(friends) + R"(,"statuses":)" + std::to_string(statuses) +
         R"(,"listed":1,"is_public":)" + (pub ? "true" : "false") + "}\n";
}

std::string tweet_line(std::uint64_t id, const std::string& user) {
  return R"({"tweet_id":)" + std::to_string(id) + R"(,"user_id":")" + user +
         R"(","retweet_count":1,"like_count":2,"has_url":false,"has_hashtag":false,"is_retweet_of_other":false,"text":"hi"})" +
         "\n";
}

std::vector<TweetId> ids_of(const std::vector<TweetRecord>& ts) {
  std::vector<TweetId> out;
  for (const auto& t : ts) out.push_back(t.tweet_id);
  return out;
}

}  // namespace

TEST(Ingest, PrivateProfileRejected) {
  TempDir dir;
  write_text(dir / "users.jsonl", user_line("a", 5, 5, 5, true) + user_line("b", 5, 5, 5, true) +
                                      user_line("c", 5, 5, 5, true) + user_line("d", 5, 5, 5, false));
  const auto load = load_users(dir / "users.jsonl", InputFormat::jsonl);
  ASSERT_EQ(load.users.size(), 3u);
  ASSERT_EQ(load.rejects.size(), 1u);
  EXPECT_EQ(load.rejects[0].line, 4u);
  EXPECT_EQ(load.rejects[0].reason, "private profile");
}

TEST(Ingest, ZeroCountersRejected) {
  TempDir dir;
  write_text(dir / "u.jsonl", user_line("a", 0, 5, 5, true) + user_line("b", 5, 0, 5, true) +
                                  user_line("c", 5, 5, 0, true) + user_line("d", 1, 1, 1, true));
  const auto load = load_users(dir / "u.jsonl", InputFormat::jsonl);
  ASSERT_EQ(load.users.size(), 1u);
  EXPECT_EQ(load.users[0].user_id, "d");
  ASSERT_EQ(load.rejects.size(), 3u);
  EXPECT_EQ(load.rejects[0].reason, "zero followers");
  EXPECT_EQ(load.rejects[1].reason, "zero friends");
  EXPECT_EQ(load.rejects[2].reason, "inactive user");

  const auto all = load_users(dir / "u.jsonl", InputFormat::jsonl, SelectionRule::off);
  EXPECT_EQ(all.users.size(), 4u);
}

TEST(Ingest, EmptyFileYieldsNothing) {
  TempDir dir;
  write_text(dir / "u.jsonl", "");
  const auto load = load_users(dir / "u.jsonl", InputFormat::jsonl);
  EXPECT_TRUE(load.users.empty());
  EXPECT_TRUE(load.rejects.empty());
  EXPECT_THROW(descriptive_stats(load.users), ValidationError);
}

TEST(Ingest, MalformedUserLineIsFatalWithLineNumber) {
  TempDir dir;
  write_text(dir / "u.jsonl", user_line("a", 1, 1, 1, true) + "{not json\n");
  try {
    load_users(dir / "u.jsonl", InputFormat::jsonl);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Ingest, MissingFieldBecomesReject) {
  TempDir dir;
  write_text(dir / "u.jsonl", R"({"user_id":"a","followers":1,"friends":1,"statuses":1,"listed":0})" "\n");
  const auto load = load_users(dir / "u.jsonl", InputFormat::jsonl);
  EXPECT_TRUE(load.users.empty());
  ASSERT_EQ(load.rejects.size(), 1u);
  EXPECT_NE(load.rejects[0].reason.find("is_public"), std::string::npos);
}

TEST(Ingest, ApiShapedRecords) {
  TempDir dir;
  write_text(dir / "u.jsonl",
             R"({"id_str":"77","followers_count":3,"friends_count":4,"statuses_count":5,"listed_count":0,"protected":false})" "\n");
  write_text(dir / "t.jsonl",
             R"({"id":12,"user":{"id_str":"77"},"retweet_count":2,"favorite_count":9,"entities":{"urls":[{"u":1}],"hashtags":[]},"retweeted_status":{},"full_text":"ok"})" "\n");
  const auto users = load_users(dir / "u.jsonl", InputFormat::jsonl);
  ASSERT_EQ(users.users.size(), 1u);
  EXPECT_EQ(users.users[0], (UserProfile{"77", 3, 4, 5, 0, true}));
  const auto tweets = load_tweets(dir / "t.jsonl");
  ASSERT_EQ(tweets.tweets.size(), 1u);
  const auto& t = tweets.tweets[0];
  EXPECT_EQ(t.user_id, "77");
  EXPECT_EQ(t.like_count, 9u);
  EXPECT_TRUE(t.has_url);
  EXPECT_FALSE(t.has_hashtag);
  EXPECT_TRUE(t.is_retweet_of_other);
  EXPECT_EQ(t.text, "ok");
}

TEST(Ingest, CsvUsers) {
  TempDir dir;
  write_text(dir / "u.csv",
             "user_id,followers,friends,statuses,listed,is_public\n"
             "a,10,2,3,0,true\n"
             "b,0,2,3,0,true\n"
             "\"c,d\",4,4,4,1,1\n");
  const auto load = load_users(dir / "u.csv", format_for(dir / "u.csv"));
  ASSERT_EQ(load.users.size(), 2u);
  EXPECT_EQ(load.users[0].followers, 10u);
  EXPECT_EQ(load.users[1].user_id, "c,d");
  EXPECT_EQ(load.rejects.size(), 1u);
}

TEST(Ingest, MaxIdWindow) {
  TempDir dir;
  write_text(dir / "t.jsonl", tweet_line(9, "a") + tweet_line(7, "a") + tweet_line(7, "a") + tweet_line(3, "a"));
  const auto load = load_tweets(dir / "t.jsonl", TweetId{7});
  EXPECT_EQ(ids_of(load.tweets), (std::vector<TweetId>{7, 3}));

  write_text(dir / "one.jsonl", tweet_line(5, "a"));
  EXPECT_EQ(ids_of(load_tweets(dir / "one.jsonl", TweetId{7}).tweets), (std::vector<TweetId>{5}));
  EXPECT_TRUE(load_tweets(dir / "t.jsonl", TweetId{2}).tweets.empty());
}

TEST(Ingest, DuplicateCollapseIsIdempotent) {
  std::vector<TweetRecord> ts;
  for (TweetId id : {4, 2, 4, 8, 2}) ts.push_back({id, id % 4 == 0 ? "b" : "a", 0, 0, false, false, false, ""});
  const auto once = filter_tweets(ts, std::nullopt);
  EXPECT_EQ(ids_of(once), (std::vector<TweetId>{2, 8, 4}));
  EXPECT_EQ(filter_tweets(once, std::nullopt), once);
}

TEST(Ingest, MalformedTweetIsRejectNotFatal) {
  TempDir dir;
  write_text(dir / "t.jsonl", tweet_line(1, "a") + "garbage\n" + R"({"tweet_id":2})" "\n");
  const auto load = load_tweets(dir / "t.jsonl");
  EXPECT_EQ(load.tweets.size(), 1u);
  ASSERT_EQ(load.rejects.size(), 2u);
  EXPECT_EQ(load.rejects[0].line, 2u);
}

TEST(Ingest, RestrictToUsers) {
  std::vector<TweetRecord> ts{{1, "a", 0, 0, false, false, false, ""}, {2, "z", 0, 0, false, false, false, ""}};
  std::vector<UserProfile> us{{"a", 1, 1, 1, 0, true}};
  const auto kept = restrict_to_users(ts, us);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].user_id, "a");
}

TEST(Ingest, DescriptiveStats) {
  std::vector<UserProfile> us{{"a", 2, 1, 1, 0, true}, {"b", 4, 1, 1, 0, true}};
  const auto s = descriptive_stats(us);
  EXPECT_DOUBLE_EQ(s.followers.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.followers.stddev, 1.0);
  EXPECT_DOUBLE_EQ(s.followers.total, 6.0);
  EXPECT_DOUBLE_EQ(implied_count(s.followers), 2.0);
  EXPECT_DOUBLE_EQ(descriptive_stats(us, StddevKind::sample).followers.stddev, std::sqrt(2.0));

  std::vector<UserProfile> one{{"a", 7, 1, 1, 0, true}};
  const auto single = descriptive_stats(one);
  EXPECT_DOUBLE_EQ(single.followers.mean, 7.0);
  EXPECT_DOUBLE_EQ(single.followers.stddev, 0.0);
  EXPECT_DOUBLE_EQ(descriptive_stats(one, StddevKind::sample).followers.stddev, 0.0);
}

TEST(Ingest, ImpliedCountExposesInconsistentTable) {
  ColumnStats reported{1000.0, 20.0, 0.0};
  EXPECT_DOUBLE_EQ(implied_count(reported), 50.0);
}

TEST(Ingest, PersistIsDeterministicAndRoundTrips) {
  TempDir dir;
  std::vector<UserProfile> us{{"a", 2, 1, 1, 0, true}, {"b", 4, 1, 1, 0, true}};
  std::vector<TweetRecord> ts{{5, "a", 1, 2, true, false, false, "caf\xC3\xA9"}};
  DatasetManifest meta;
  meta.source_files = {"u.jsonl", "t.jsonl"};
  meta.filters_applied = {"selection_rule"};
  meta.created_at = "2020-01-01T00:00:00Z";
  persist(us, ts, dir / "one", meta);
  persist(us, ts, dir / "two", meta);
  for (const char* f : {kUsersFile, kTweetsFile, kManifestFile, kRejectsFile}) {
    EXPECT_EQ(read_text(dir / "one" / f), read_text(dir / "two" / f)) << f;
  }
  const auto d = load_dataset(dir / "one");
  EXPECT_EQ(d.users, us);
  EXPECT_EQ(d.tweets, ts);
  EXPECT_EQ(d.manifest.user_count, 2u);
  EXPECT_EQ(d.manifest.source_files, meta.source_files);
}

TEST(Ingest, ManifestCountMismatchDetected) {
  TempDir dir;
  std::vector<UserProfile> us{{"a", 2, 1, 1, 0, true}};
  persist(us, {}, dir.path(), {});
  write_text(dir / kUsersFile, read_text(dir / kUsersFile) + read_text(dir / kUsersFile));
  EXPECT_THROW(load_dataset(dir.path()), ValidationError);
}
