#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "support/helpers.hpp"
#include "trustlens/service.hpp"
#include "trustlens/synthetic.hpp"

using namespace trustlens;
using namespace trustlens::service;
using nlohmann::json;
using testing_support::TempDir;

namespace {

struct Fixture {
  pipeline::Corpus corpus;
  active::Pool pool;
  active::LoopConfig config;
  std::unordered_map<std::string, Label> truth;
};

Fixture make_fixture(std::size_t users = 300, std::size_t batch = 20) {
  synthetic::CohortParams cp;
  cp.users = users;
  cp.seed = 42;
  const auto cohort = synthetic::generate_cohort(cp);
  ingest::Dataset ds{cohort.users, cohort.tweets, {}};
  Fixture f;
  f.corpus = pipeline::score_corpus(ds);
  f.truth = cohort.truth;
  std::vector<pipeline::LabelEntry> seed;
  std::size_t t = 0, u = 0;
  for (const auto& v : f.corpus.normalized) {
    const Label l = f.truth.at(v.user_id);
    if (l == Label::trusted && t < 30) {
      ++t;
      seed.push_back({v.user_id, l, {}});
    } else if (l == Label::untrusted && u < 20) {
      ++u;
      seed.push_back({v.user_id, l, {}});
    }
  }
  f.pool = pipeline::make_pool(f.corpus.normalized, seed, batch);
  f.config.learner.forest.n_trees = 25;
  f.config.learner.with_seed(5);
  f.config.seed = 5;
  f.config.folds = 5;
  return f;
}

std::unique_ptr<Engine> make_engine(const Fixture& f, EngineOptions opts = {}) {
  return std::make_unique<Engine>(f.corpus, f.pool, f.config, opts);
}

int status_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const HttpError& e) {
    return e.status;
  }
  return 200;
}

json votes_for(const json& batch, const Fixture& f, const std::string& annotator) {
  json out = json::array();
  for (const auto& item : batch) {
    const auto id = item["user_id"].get<std::string>();
    out.push_back({{"user_id", id}, {"label", to_int(f.truth.at(id))}, {"annotator_id", annotator}});
  }
  return out;
}

void label_full_batch(Engine& e, const Fixture& f) {
  const auto batch = e.next(std::nullopt, std::nullopt);
  e.submit(votes_for(batch, f, "ann1"));
  const auto r = e.submit(votes_for(batch, f, "ann2"));
  ASSERT_TRUE(r["batch_complete"].get<bool>());
  e.wait_idle();
}

}  // namespace

TEST(Service, EmptyStateBeforeSeedTraining) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  const auto h = e->health();
  EXPECT_EQ(h["status"], "ok");
  EXPECT_TRUE(h["dataset_loaded"].get<bool>());
  EXPECT_FALSE(h["model_trained"].get<bool>());
  EXPECT_TRUE(e->metrics()["learning_curve"].empty());
  EXPECT_EQ(status_of([&] { e->next(std::nullopt, std::nullopt); }), 409);
}

TEST(Service, HealthAndScore) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto h = e->health();
  EXPECT_TRUE(h["model_trained"].get<bool>());
  EXPECT_EQ(h["labeled"], 50);
  EXPECT_EQ(h["unlabeled"], 250);
  EXPECT_EQ(e->metrics()["learning_curve"].size(), 1u);

  const auto& v = f.corpus.raw[3];
  const auto s = e->score(v.user_id);
  EXPECT_EQ(s["influence"].get<double>(), v[Feature::influence]);
  EXPECT_FALSE(s["raw"]["normalized"].get<bool>());
  EXPECT_TRUE(s["normalized"]["normalized"].get<bool>());
  EXPECT_EQ(status_of([&] { e->score("nobody"); }), 404);
}

TEST(Service, NextIsIdempotentAndMatchesSelection) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto a = e->next(std::nullopt, std::nullopt);
  const auto b = e->next(std::nullopt, std::nullopt);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 20u);
  const auto expected = active::select_batch(e->session().pool(), *e->session().model(), active::Strategy::margin,
                                             f.config.mask, trustlens::detail::mix_seed(f.config.seed, 1));
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i]["user_id"], expected[i].user_id);
    EXPECT_EQ(a[i]["status"], "pending");
    EXPECT_LE(a[i]["sample_tweets"].size(), 5u);
    EXPECT_GE(a[i]["current_model_p1"].get<double>(), 0.0);
    EXPECT_TRUE(a[i].contains("ambiguity"));
    EXPECT_TRUE(a[i].contains("influence"));
  }
}

TEST(Service, BatchParamsApplyBeforeVoting) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  EXPECT_EQ(e->next(active::Strategy::random, 7).size(), 7u);
  const auto b = e->next(std::nullopt, std::nullopt);
  e->submit(json{{"user_id", b[0]["user_id"]}, {"label", 1}, {"annotator_id", "x"}});
  EXPECT_EQ(e->next(std::nullopt, 3).size(), 7u);
  EXPECT_EQ(status_of([&] { e->next(std::nullopt, 0); }), 400);
}

TEST(Service, LabelValidation) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto b = e->next(std::nullopt, std::nullopt);
  const auto id = b[0]["user_id"].get<std::string>();
  std::string unserved;
  for (const auto& v : e->session().pool().unlabeled) {
    bool in = false;
    for (const auto& item : b) in = in || item["user_id"] == v.user_id;
    if (!in) {
      unserved = v.user_id;
      break;
    }
  }
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", unserved}, {"label", 1}, {"annotator_id", "a"}}); }), 422);
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", "ghost"}, {"label", 1}, {"annotator_id", "a"}}); }), 422);
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", id}, {"label", 2}, {"annotator_id", "a"}}); }), 400);
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", id}, {"label", "1"}, {"annotator_id", "a"}}); }), 400);
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", id}, {"label", 1}}); }), 400);
  // a rejected request records nothing
  EXPECT_EQ(e->next(std::nullopt, std::nullopt)[0]["status"], "pending");
}

TEST(Service, RepeatedVoteIsIdempotent) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto b = e->next(std::nullopt, std::nullopt);
  const json vote{{"user_id", b[0]["user_id"]}, {"label", 1}, {"annotator_id", "a"}};
  e->submit(vote);
  const auto again = e->submit(vote);
  EXPECT_EQ(again["accepted"], 1);
  EXPECT_TRUE(again["conflicts"].empty());
  EXPECT_EQ(e->next(std::nullopt, std::nullopt)[0]["status"], "partial");
}

TEST(Service, DisagreementGoesToConflictQueue) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto b = e->next(std::nullopt, std::nullopt);
  const auto id = b[0]["user_id"].get<std::string>();
  e->submit(json{{"user_id", id}, {"label", 1}, {"annotator_id", "a1"}});
  const auto r = e->submit(json{{"user_id", id}, {"label", 0}, {"annotator_id", "a2"}});
  EXPECT_EQ(r["conflicts"], json::array({id}));
  const auto c = e->conflicts();
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0]["user_id"], id);
  EXPECT_EQ(c[0]["votes"].size(), 2u);
  EXPECT_EQ(e->next(std::nullopt, std::nullopt)[0]["status"], "conflict");

  EXPECT_EQ(status_of([&] { e->resolve(json{{"user_id", b[1]["user_id"]}, {"label", 1}}); }), 422);
  const auto res = e->resolve(json{{"user_id", id}, {"label", 0}, {"annotator_id", "lead"}});
  EXPECT_EQ(res["resolved"], id);
  EXPECT_FALSE(res["batch_complete"].get<bool>());
  EXPECT_TRUE(e->conflicts().empty());
  EXPECT_EQ(e->next(std::nullopt, std::nullopt)[0]["status"], "resolved");
  EXPECT_EQ(status_of([&] { e->submit(json{{"user_id", id}, {"label", 1}, {"annotator_id", "a3"}}); }), 422);
}

TEST(Service, FullBatchAddsRound) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  const auto first = e->next(std::nullopt, std::nullopt);
  label_full_batch(*e, f);
  const auto m = e->metrics();
  ASSERT_EQ(m["learning_curve"].size(), 2u);
  EXPECT_EQ(m["learning_curve"][1]["labeled_size"], 70);
  EXPECT_EQ(m["strategy"], "margin");
  EXPECT_EQ(m["learner"], "rf");
  const auto& labeled = e->session().pool().labeled;
  EXPECT_EQ(labeled.back().annotator_ids, (std::vector<std::string>{"ann1", "ann2"}));
  EXPECT_EQ(labeled.back().source, LabelSource::active_loop);
  EXPECT_NE(e->next(std::nullopt, std::nullopt), first);
}

TEST(Service, RetrainIsSingleFlight) {
  auto f = make_fixture();
  f.config.learner.forest.n_trees = 400;
  f.config.folds = 10;
  auto e = make_engine(f);
  e->start();
  EXPECT_EQ(e->retrain()["round_index"], 2);
  EXPECT_EQ(status_of([&] { e->retrain(); }), 409);
  EXPECT_EQ(status_of([&] { e->next(std::nullopt, std::nullopt); }), 409);
  EXPECT_TRUE(e->health()["retraining"].get<bool>());
  e->wait_idle();
  EXPECT_EQ(e->metrics()["learning_curve"].size(), 2u);
  const auto b = e->next(std::nullopt, std::nullopt);
  e->submit(json{{"user_id", b[0]["user_id"]}, {"label", 1}, {"annotator_id", "x"}});
  EXPECT_EQ(status_of([&] { e->retrain(); }), 409);
}

TEST(Service, ScriptedAnnotatorsReplicateInProcessLoop) {
  auto f = make_fixture();
  f.config.stop.min_gain = -1.0;
  f.config.stop.max_rounds = 4;
  auto e = make_engine(f);
  e->start();
  for (int i = 0; i < 3; ++i) label_full_batch(*e, f);

  active::ActiveSession s(f.pool, f.config);
  const auto r = active::run_loop(s, active::SyntheticOracle(f.truth));
  EXPECT_EQ(r.reason, active::StopReason::max_rounds);
  ASSERT_EQ(e->session().history().size(), 4u);
  EXPECT_EQ(e->session().history(), s.history());
  const auto& a = e->session().pool().labeled;
  const auto& b = s.pool().labeled;
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].features.user_id, b[i].features.user_id);
    EXPECT_EQ(a[i].label, b[i].label);
  }
}

TEST(Service, ResumesFromStateDir) {
  TempDir dir;
  const auto f = make_fixture();
  json batch;
  std::vector<RoundRecord> history;
  {
    auto e = make_engine(f, {2, dir.path()});
    e->start();
    label_full_batch(*e, f);
    batch = e->next(std::nullopt, std::nullopt);
    e->submit(json{{"user_id", batch[0]["user_id"]}, {"label", 1}, {"annotator_id", "a1"}});
    e->submit(json{{"user_id", batch[1]["user_id"]}, {"label", 1}, {"annotator_id", "a1"}});
    e->submit(json{{"user_id", batch[1]["user_id"]}, {"label", 0}, {"annotator_id", "a2"}});
    history = e->session().history();
  }
  EXPECT_TRUE(std::filesystem::exists(dir / "labels.log"));
  auto e = make_engine(f, {2, dir.path()});
  e->start();
  EXPECT_EQ(e->session().history(), history);
  EXPECT_EQ(e->session().pool().labeled.size(), 70u);
  const auto again = e->next(std::nullopt, std::nullopt);
  ASSERT_EQ(again.size(), batch.size());
  for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i]["user_id"], batch[i]["user_id"]);
  EXPECT_EQ(again[0]["status"], "partial");
  EXPECT_EQ(again[1]["status"], "conflict");
  EXPECT_EQ(e->conflicts().size(), 1u);
}

TEST(Service, SnapshotMissingLastRoundRetrains) {
  TempDir dir;
  const auto f = make_fixture();
  {
    auto e = make_engine(f, {2, dir.path()});
    e->start();
  }
  auto snap = json::parse(testing_support::read_text(dir / "session.json"));
  snap["state"]["history"] = json::array();
  testing_support::write_text(dir / "session.json", snap.dump());
  auto e = make_engine(f, {2, dir.path()});
  e->start();
  EXPECT_EQ(e->session().history().size(), 1u);
  EXPECT_TRUE(e->health()["model_trained"].get<bool>());
}

TEST(Service, HttpRoutes) {
  const auto f = make_fixture();
  TempDir ui;
  testing_support::write_text(ui / "index.html", "<html>ui</html>");
  auto e = make_engine(f);
  e->start();
  Server server(*e, ui.path());
  const int port = server.bind_any();
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client c("127.0.0.1", port);

  auto health = c.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_TRUE(json::parse(health->body)["model_trained"].get<bool>());

  EXPECT_EQ(c.Get("/api/users/nobody/score")->status, 404);
  const auto id = f.corpus.raw[0].user_id;
  EXPECT_EQ(c.Get("/api/users/" + id + "/score")->status, 200);

  auto next = c.Get("/api/annotation/next?strategy=entropy&batch=5");
  ASSERT_EQ(next->status, 200);
  const auto batch = json::parse(next->body);
  EXPECT_EQ(batch.size(), 5u);
  EXPECT_EQ(c.Get("/api/annotation/next?batch=abc")->status, 400);
  EXPECT_EQ(c.Get("/api/annotation/next?strategy=qbc")->status, 400);

  EXPECT_EQ(c.Post("/api/annotation/labels", "{nope", "application/json")->status, 400);
  json bad = json::array({{{"user_id", batch[0]["user_id"]}, {"label", 5}, {"annotator_id", "a"}}});
  EXPECT_EQ(c.Post("/api/annotation/labels", bad.dump(), "application/json")->status, 400);
  json ok = json::array({{{"user_id", batch[0]["user_id"]}, {"label", 1}, {"annotator_id", "a"}}});
  auto posted = c.Post("/api/annotation/labels", ok.dump(), "application/json");
  EXPECT_EQ(posted->status, 200);
  EXPECT_EQ(json::parse(posted->body)["accepted"], 1);
  json other = json::array({{{"user_id", batch[0]["user_id"]}, {"label", 0}, {"annotator_id", "b"}}});
  c.Post("/api/annotation/labels", other.dump(), "application/json");
  EXPECT_EQ(json::parse(c.Get("/api/annotation/conflicts")->body).size(), 1u);
  json adjudicate{{"user_id", batch[0]["user_id"]}, {"label", 1}, {"annotator_id", "lead"}};
  EXPECT_EQ(c.Post("/api/annotation/conflicts/resolve", adjudicate.dump(), "application/json")->status, 200);
  EXPECT_EQ(c.Post("/api/annotation/conflicts/resolve", adjudicate.dump(), "application/json")->status, 422);
  EXPECT_EQ(c.Post("/api/model/retrain", "", "application/json")->status, 409);

  auto metrics = c.Get("/api/model/metrics");
  EXPECT_EQ(json::parse(metrics->body)["learning_curve"].size(), 1u);
  auto index = c.Get("/index.html");
  ASSERT_TRUE(index);
  EXPECT_EQ(index->body, "<html>ui</html>");

  server.stop();
  t.join();
}

TEST(Service, HttpRetrainAccepted) {
  const auto f = make_fixture();
  auto e = make_engine(f);
  e->start();
  Server server(*e);
  const int port = server.bind_any();
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client c("127.0.0.1", port);
  auto r = c.Post("/api/model/retrain", "", "application/json");
  EXPECT_EQ(r->status, 202);
  EXPECT_EQ(json::parse(r->body)["round_index"], 2);
  e->wait_idle();
  EXPECT_EQ(json::parse(c.Get("/api/model/metrics")->body)["learning_curve"].size(), 2u);
  server.stop();
  t.join();
}
