#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "httplib.h"
#include "json.hpp"
#include "trustlens/active.hpp"
#include "trustlens/config.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/error.hpp"
#include "trustlens/ingest.hpp"
#include "trustlens/model.hpp"
#include "trustlens/pipeline.hpp"

namespace trustlens::service {

using nlohmann::json;

/// Failure with an HTTP status attached.
struct HttpError : Error {
  HttpError(int status, const std::string& what) : Error(what), status(status) {}
  int status;
};

struct EngineOptions {
  std::uint32_t annotators = 2;  // agreeing votes needed before a label is final
  std::filesystem::path state_dir;  // empty = no persistence
};

/// Owner of the annotation session. Labels, batch serving and round
/// bookkeeping are serialized by one mutex; training runs on a worker thread
/// against a copy of the labeled set.
class Engine {
 public:
  Engine(pipeline::Corpus corpus, active::Pool pool, active::LoopConfig config, EngineOptions opts = {})
      : corpus_(std::move(corpus)), session_(std::move(pool), std::move(config)), opts_(std::move(opts)) {
    if (opts_.annotators == 0) throw ValidationError("annotators must be at least 1");
    for (std::size_t i = 0; i < corpus_.raw.size(); ++i) index_.emplace(corpus_.raw[i].user_id, i);
  }

  static std::unique_ptr<Engine> from_config(const config::Config& cfg) {
    if (cfg.dataset.empty()) throw ValidationError("config: dataset is required");
    if (cfg.seed_labels.empty()) throw ValidationError("config: seed_labels is required");
    auto corpus = pipeline::score_corpus(ingest::load_dataset(cfg.dataset), cfg.scoring);
    auto pool = pipeline::make_pool(corpus.normalized, pipeline::read_labels(cfg.seed_labels), cfg.batch_size);
    return std::make_unique<Engine>(std::move(corpus), std::move(pool), cfg.loop(),
                                    EngineOptions{cfg.annotators, cfg.state_dir});
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  ~Engine() { wait_idle(); }

  /// Resumes from state_dir when a snapshot exists, otherwise trains the
  /// first round on the seed set.
  void start() {
    std::lock_guard lock(mu_);
    if (!opts_.state_dir.empty() && std::filesystem::exists(snapshot_path())) {
      restore_locked();
      return;
    }
    session_.train_round();
    save_locked();
  }

  json health() const {
    std::lock_guard lock(mu_);
    return {{"status", "ok"},
            {"dataset_loaded", !corpus_.raw.empty()},
            {"model_trained", session_.model() != nullptr},
            {"retraining", retraining_},
            {"labeled", session_.pool().labeled.size()},
            {"unlabeled", session_.pool().unlabeled.size()},
            {"last_error", last_error_}};
  }

  json score(const std::string& user_id) const {
    auto it = index_.find(user_id);
    if (it == index_.end()) throw HttpError(404, "unknown user '" + user_id + "'");
    const auto& raw = corpus_.raw[it->second];
    return {{"user_id", user_id},
            {"influence", raw[Feature::influence]},
            {"raw", raw},
            {"normalized", corpus_.normalized[it->second]}};
  }

  /// The pending batch; re-served unchanged until its labels arrive.
  json next(std::optional<active::Strategy> strategy, std::optional<std::size_t> batch) {
    std::lock_guard lock(mu_);
    if (retraining_) throw HttpError(409, "retrain in progress");
    if (!session_.model()) throw HttpError(409, "model not trained");
    if (batch && *batch == 0) throw HttpError(400, "batch must be at least 1");
    // parameters can change the batch only before anyone has voted on it
    if (votes_.empty() && resolved_.empty()) {
      if (strategy) session_.set_strategy(*strategy);
      if (batch) session_.set_batch_size(*batch);
    }
    const bool fresh = !served_ || strategy.has_value() || batch.has_value();
    const auto& b = session_.next_batch();
    served_ = true;
    if (fresh) save_locked();
    const auto& model = *session_.model();
    const auto& mask = session_.config().mask;
    const auto s = session_.config().strategy;
    json items = json::array();
    for (const auto& v : b) {
      const auto p = model.predict_proba(active::row_of(v, mask));
      const auto& raw = corpus_.raw[index_.at(v.user_id)];
      double amb = 0.0;
      switch (s) {
        case active::Strategy::uncertainty: amb = active::uncertainty(p); break;
        case active::Strategy::entropy: amb = active::entropy(p); break;
        default: amb = active::margin(p); break;
      }
      auto tweets = corpus_.sample_tweets.find(v.user_id);
      items.push_back({{"user_id", v.user_id},
                       {"features", v},
                       {"influence", raw[Feature::influence]},
                       {"sample_tweets", tweets == corpus_.sample_tweets.end() ? json::array() : json(tweets->second)},
                       {"current_model_p1", p[1]},
                       {"ambiguity", amb},
                       {"status", status_of(v.user_id)}});
    }
    return items;
  }

  /// Body: [{user_id, label, annotator_id}] (a single object is accepted too).
  json submit(const json& body) {
    struct Vote {
      std::string user_id;
      Label label;
      std::string annotator;
    };
    std::vector<Vote> votes;
    const json list = body.is_array() ? body : json::array({body});
    for (const auto& e : list) {
      if (!e.is_object()) throw HttpError(400, "label entry must be an object");
      const auto id = e.find("user_id");
      const auto label = e.find("label");
      const auto who = e.find("annotator_id");
      if (id == e.end() || !id->is_string()) throw HttpError(400, "user_id must be a string");
      if (label == e.end() || !label->is_number_integer()) throw HttpError(400, "label must be 0 or 1");
      const auto l = label->get<long long>();
      if (l != 0 && l != 1) throw HttpError(400, "label must be 0 or 1");
      if (who == e.end() || !who->is_string() || who->get<std::string>().empty()) {
        throw HttpError(400, "annotator_id must be a non-empty string");
      }
      votes.push_back({id->get<std::string>(), label_from_int(l), who->get<std::string>()});
    }

    std::lock_guard lock(mu_);
    if (retraining_) throw HttpError(409, "retrain in progress");
    const auto served = served_ids_locked();
    for (const auto& v : votes) {
      if (!served.contains(v.user_id)) throw HttpError(422, "user '" + v.user_id + "' is not in the served batch");
      auto r = resolved_.find(v.user_id);
      if (r != resolved_.end() && r->second.label != v.label) {
        throw HttpError(422, "user '" + v.user_id + "' is already resolved");
      }
    }
    std::size_t accepted = 0;
    std::set<std::string> touched;
    for (const auto& v : votes) {
      ++accepted;
      if (resolved_.contains(v.user_id)) continue;
      votes_[v.user_id][v.annotator] = v.label;
      touched.insert(v.user_id);
      append_log_locked({{"event", "vote"}, {"user_id", v.user_id}, {"label", to_int(v.label)}, {"annotator_id", v.annotator}});
    }
    json conflicts = json::array();
    for (const auto& id : touched) {
      const auto& vs = votes_.at(id);
      if (vs.size() < opts_.annotators) continue;
      const Label first = vs.begin()->second;
      const bool agree = std::all_of(vs.begin(), vs.end(), [&](const auto& kv) { return kv.second == first; });
      if (agree) {
        std::vector<std::string> who;
        for (const auto& [a, _] : vs) who.push_back(a);
        resolved_[id] = {first, who};
        conflicts_.erase(id);
        votes_.erase(id);
      } else {
        conflicts_.insert(id);
        conflicts.push_back(id);
      }
    }
    const bool complete = maybe_commit_locked();
    save_locked();
    return {{"accepted", accepted}, {"conflicts", conflicts}, {"batch_complete", complete}};
  }

  json conflicts() const {
    std::lock_guard lock(mu_);
    json out = json::array();
    for (const auto& id : conflicts_) {
      json votes = json::array();
      for (const auto& [a, l] : votes_.at(id)) votes.push_back({{"annotator_id", a}, {"label", to_int(l)}});
      out.push_back({{"user_id", id}, {"votes", votes}});
    }
    return out;
  }

  /// Adjudicates a conflict. Body: {user_id, label, annotator_id}.
  json resolve(const json& body) {
    if (!body.is_object()) throw HttpError(400, "body must be an object");
    const auto id = body.value("user_id", std::string{});
    const auto label = body.find("label");
    if (label == body.end() || !label->is_number_integer()) throw HttpError(400, "label must be 0 or 1");
    const auto l = label->get<long long>();
    if (l != 0 && l != 1) throw HttpError(400, "label must be 0 or 1");
    const auto who = body.value("annotator_id", std::string{"adjudicator"});
    std::lock_guard lock(mu_);
    if (retraining_) throw HttpError(409, "retrain in progress");
    if (!conflicts_.contains(id)) throw HttpError(422, "user '" + id + "' has no open conflict");
    std::vector<std::string> ids;
    for (const auto& [a, _] : votes_.at(id)) ids.push_back(a);
    ids.push_back(who);
    resolved_[id] = {label_from_int(l), ids};
    conflicts_.erase(id);
    votes_.erase(id);
    append_log_locked({{"event", "resolve"}, {"user_id", id}, {"label", l}, {"annotator_id", who}});
    const bool complete = maybe_commit_locked();
    save_locked();
    return {{"resolved", id}, {"batch_complete", complete}};
  }

  json metrics() const {
    std::lock_guard lock(mu_);
    return {{"learning_curve", session_.history()},
            {"retraining", retraining_},
            {"strategy", active::to_string(session_.config().strategy)},
            {"learner", to_string(session_.config().learner.kind)}};
  }

  /// Starts an asynchronous retrain on the current labeled set.
  json retrain() {
    std::lock_guard lock(mu_);
    if (retraining_) throw HttpError(409, "retrain in progress");
    if (!votes_.empty() || !resolved_.empty()) throw HttpError(409, "batch labeling in progress");
    return {{"round_index", launch_locked()}};
  }

  /// Blocks until no retrain is running.
  void wait_idle() {
    std::thread t;
    {
      std::lock_guard lock(mu_);
      t = std::move(worker_);
    }
    if (t.joinable()) t.join();
  }

  const active::ActiveSession& session() const noexcept { return session_; }

 private:
  struct Resolution {
    Label label;
    std::vector<std::string> annotators;
  };

  std::filesystem::path snapshot_path() const { return opts_.state_dir / "session.json"; }
  std::filesystem::path log_path() const { return opts_.state_dir / "labels.log"; }

  std::string status_of(const std::string& id) const {
    if (resolved_.contains(id)) return "resolved";
    if (conflicts_.contains(id)) return "conflict";
    if (votes_.contains(id)) return "partial";
    return "pending";
  }

  std::set<std::string> served_ids_locked() {
    std::set<std::string> ids;
    if (!served_ || !session_.model()) return ids;
    for (const auto& v : session_.next_batch()) ids.insert(v.user_id);
    return ids;
  }

  // Commits the batch once every member is resolved, then retrains.
  bool maybe_commit_locked() {
    const auto& batch = session_.next_batch();
    if (batch.empty()) return false;
    for (const auto& v : batch) {
      if (!resolved_.contains(v.user_id)) return false;
    }
    std::vector<active::Answer> answers;
    for (const auto& v : batch) {
      const auto& r = resolved_.at(v.user_id);
      answers.push_back({v.user_id, r.label, r.annotators, LabelSource::active_loop});
    }
    session_.commit(answers);
    append_log_locked({{"event", "commit"}, {"users", answers.size()}});
    resolved_.clear();
    votes_.clear();
    conflicts_.clear();
    served_ = false;
    launch_locked();
    return true;
  }

  std::uint32_t launch_locked() {
    if (worker_.joinable()) worker_.join();  // previous worker has already released the flag
    retraining_ = true;
    served_ = false;
    last_error_.clear();
    const auto round = static_cast<std::uint32_t>(session_.history().size() + 1);
    auto labeled = session_.pool().labeled;
    auto cfg = session_.config();
    worker_ = std::thread([this, labeled = std::move(labeled), cfg = std::move(cfg)] {
      std::optional<active::ActiveSession::Trained> t;
      std::string error;
      try {
        t = active::ActiveSession::train(labeled, cfg);
      } catch (const std::exception& e) {
        error = e.what();
      }
      std::lock_guard lock(mu_);
      try {
        if (t) session_.install(std::move(*t));
        save_locked();
      } catch (const std::exception& e) {
        error = e.what();
      }
      last_error_ = error;
      retraining_ = false;
    });
    return round;
  }

  void append_log_locked(json entry) {
    if (opts_.state_dir.empty()) return;
    entry["seq"] = ++seq_;
    trustlens::detail::append_line(log_path(), entry.dump());
  }

  void save_locked() {
    if (opts_.state_dir.empty()) return;
    json labeled = json::array();
    for (const auto& l : session_.pool().labeled) {
      labeled.push_back({{"user_id", l.features.user_id},
                         {"label", to_int(l.label)},
                         {"annotator_ids", l.annotator_ids},
                         {"source", l.source}});
    }
    json batch = json::array();
    if (served_) {
      for (const auto& v : session_.next_batch()) batch.push_back(v.user_id);
    }
    json votes = json::object();
    for (const auto& [id, vs] : votes_) {
      for (const auto& [a, l] : vs) votes[id][a] = to_int(l);
    }
    json resolved = json::object();
    for (const auto& [id, r] : resolved_) resolved[id] = {{"label", to_int(r.label)}, {"annotator_ids", r.annotators}};
    json snap = {{"version", 1},
                 {"seq", seq_},
                 {"labeled", labeled},
                 {"state", session_.state()},
                 {"strategy", active::to_string(session_.config().strategy)},
                 {"batch_size", session_.pool().batch_size},
                 {"batch", batch},
                 {"votes", votes},
                 {"resolved", resolved},
                 {"conflicts", conflicts_}};
    std::filesystem::create_directories(opts_.state_dir);
    trustlens::detail::write_file(snapshot_path(), snap.dump());
  }

  void restore_locked() {
    json snap;
    try {
      snap = json::parse(trustlens::detail::read_file(snapshot_path()));
    } catch (const json::exception& e) {
      throw ValidationError("corrupt session snapshot: " + std::string(e.what()));
    }
    std::vector<pipeline::LabelEntry> entries;
    std::unordered_map<std::string, LabelSource> sources;
    for (const auto& l : snap.at("labeled")) {
      entries.push_back(l.get<pipeline::LabelEntry>());
      sources[entries.back().user_id] = l.value("source", LabelSource::seed);
    }
    auto pool = pipeline::make_pool(corpus_.normalized, entries, snap.at("batch_size").get<std::size_t>());
    for (auto& l : pool.labeled) l.source = sources.at(l.features.user_id);
    auto cfg = session_.config();
    cfg.strategy = active::strategy_from_string(snap.at("strategy").get<std::string>());
    session_ = active::ActiveSession(std::move(pool), std::move(cfg));
    session_.restore(snap.at("state").get<ModelState>());
    seq_ = snap.at("seq").get<std::uint64_t>();
    const auto batch = snap.at("batch").get<std::vector<std::string>>();
    served_ = !batch.empty();
    if (served_) session_.set_batch(batch);
    votes_.clear();
    for (auto it = snap.at("votes").begin(); it != snap.at("votes").end(); ++it) {
      for (auto v = it.value().begin(); v != it.value().end(); ++v) {
        votes_[it.key()][v.key()] = label_from_int(v.value().get<long long>());
      }
    }
    resolved_.clear();
    for (auto it = snap.at("resolved").begin(); it != snap.at("resolved").end(); ++it) {
      resolved_[it.key()] = {label_from_int(it.value().at("label").get<long long>()),
                             it.value().at("annotator_ids").get<std::vector<std::string>>()};
    }
    conflicts_ = snap.at("conflicts").get<std::set<std::string>>();
    // a crash between commit and the end of retraining leaves the last round missing
    if (session_.history().empty() || session_.history().back().labeled_size != session_.pool().labeled.size()) {
      session_.train_round();
      save_locked();
    }
  }

  pipeline::Corpus corpus_;
  std::unordered_map<std::string, std::size_t> index_;
  active::ActiveSession session_;
  EngineOptions opts_;

  mutable std::mutex mu_;
  bool retraining_ = false;
  bool served_ = false;
  std::string last_error_;
  std::thread worker_;
  std::uint64_t seq_ = 0;
  std::map<std::string, std::map<std::string, Label>> votes_;
  std::map<std::string, Resolution> resolved_;
  std::set<std::string> conflicts_;
};

/// HTTP routes over an Engine.
class Server {
 public:
  explicit Server(Engine& engine, std::filesystem::path ui_dir = {}) : engine_(engine) {
    using httplib::Request;
    using httplib::Response;
    http_.Get("/api/health", [this](const Request&, Response& res) { reply(res, [&] { return engine_.health(); }); });
    http_.Get(R"(/api/users/([^/]+)/score)", [this](const Request& req, Response& res) {
      reply(res, [&] { return engine_.score(req.matches[1].str()); });
    });
    http_.Get("/api/annotation/next", [this](const Request& req, Response& res) {
      reply(res, [&] {
        std::optional<active::Strategy> s;
        std::optional<std::size_t> b;
        if (req.has_param("strategy") && !req.get_param_value("strategy").empty()) {
          s = active::strategy_from_string(req.get_param_value("strategy"));
        }
        if (req.has_param("batch") && !req.get_param_value("batch").empty()) b = parse_size(req.get_param_value("batch"));
        return engine_.next(s, b);
      });
    });
    http_.Post("/api/annotation/labels", [this](const Request& req, Response& res) {
      reply(res, [&] { return engine_.submit(parse_body(req)); });
    });
    http_.Get("/api/annotation/conflicts", [this](const Request&, Response& res) {
      reply(res, [&] { return engine_.conflicts(); });
    });
    http_.Post("/api/annotation/conflicts/resolve", [this](const Request& req, Response& res) {
      reply(res, [&] { return engine_.resolve(parse_body(req)); });
    });
    http_.Get("/api/model/metrics", [this](const Request&, Response& res) { reply(res, [&] { return engine_.metrics(); }); });
    http_.Post("/api/model/retrain", [this](const Request&, Response& res) {
      reply(res, [&] { return engine_.retrain(); }, 202);
    });
    if (!ui_dir.empty() && std::filesystem::is_directory(ui_dir)) http_.set_mount_point("/", ui_dir.string());
  }

  /// Binds and serves until stop(). Returns false if the bind fails.
  bool listen(const std::string& host, int port) { return http_.listen(host, port); }

  /// Binds to an ephemeral port and returns it; serve with listen_after_bind().
  int bind_any(const std::string& host = "127.0.0.1") { return http_.bind_to_any_port(host); }
  bool listen_after_bind() { return http_.listen_after_bind(); }

  void stop() { http_.stop(); }
  void wait_until_ready() { http_.wait_until_ready(); }

 private:
  static std::size_t parse_size(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      throw HttpError(400, "batch must be a positive integer");
    }
    if (used != s.size() || v == 0) throw HttpError(400, "batch must be a positive integer");
    return static_cast<std::size_t>(v);
  }

  static json parse_body(const httplib::Request& req) {
    try {
      return json::parse(req.body);
    } catch (const json::exception&) {
      throw HttpError(400, "body is not valid JSON");
    }
  }

  template <typename F>
  static void reply(httplib::Response& res, F&& f, int ok_status = 200) {
    try {
      const json body = f();
      res.status = ok_status;
      res.set_content(body.dump(), "application/json");
    } catch (const HttpError& e) {
      fail(res, e.status, e.what());
    } catch (const ValidationError& e) {
      fail(res, 400, e.what());
    } catch (const std::exception& e) {
      fail(res, 500, e.what());
    }
  }

  static void fail(httplib::Response& res, int status, const std::string& msg) {
    res.status = status;
    res.set_content(json{{"error", msg}}.dump(), "application/json");
  }

  Engine& engine_;
  httplib::Server http_;
};

}  // namespace trustlens::service
