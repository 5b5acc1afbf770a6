// trustlens command line: ingest, score, normalize, train, al run|simulate,
// serve, report.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "trustlens/active.hpp"
#include "trustlens/config.hpp"
#include "trustlens/detail/io.hpp"
#include "trustlens/ingest.hpp"
#include "trustlens/pipeline.hpp"
#include "trustlens/preprocess.hpp"
#include "trustlens/scoring.hpp"
#include "trustlens/service.hpp"
#include "trustlens/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trustlens;

namespace {

// Flags that mirror config keys. Only flags given on the command line
// override the config file and environment.
struct Overrides {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options[key] = app->add_option(flag, values[key], help);
  }

  config::Config resolve(const std::string& config_path) const {
    config::Config cfg = config_path.empty() ? config::Config{} : config::load(config_path);
    config::apply_env(cfg);
    json flat = json::object();
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) flat[key] = values.at(key);
    }
    config::apply_settings(cfg, flat);
    return cfg;
  }
};

void add_learner_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--learner", "learner", "rf|svm|mlp");
  o.add(app, "--seed", "seed", "random seed");
  o.add(app, "--mask", "mask", "paper_default|all|comma separated feature names");
  o.add(app, "--n-trees", "forest.n_trees", "random forest size");
  o.add(app, "--svm-c", "svm.c", "SVM box constraint");
  o.add(app, "--svm-kernel", "svm.kernel", "linear|rbf");
  o.add(app, "--svm-gamma", "svm.gamma", "rbf gamma, 0 = 1/(d*Var(X))");
  o.add(app, "--mlp-hidden", "mlp.hidden", "hidden layer sizes, comma separated");
  o.add(app, "--mlp-activation", "mlp.activation", "tanh|relu|logistic");
  o.add(app, "--mlp-epochs", "mlp.epochs", "training epochs");
  o.add(app, "--mlp-lr", "mlp.lr", "learning rate");
}

void add_loop_flags(CLI::App* app, Overrides& o) {
  add_learner_flags(app, o);
  o.add(app, "--strategy", "strategy", "uncertainty|margin|entropy|random");
  o.add(app, "--batch", "batch_size", "query batch size");
  o.add(app, "--folds", "folds", "cross-validation folds");
  o.add(app, "--max-rounds", "max_rounds", "round cap");
  o.add(app, "--min-gain", "min_gain", "plateau threshold on CV accuracy");
}

void add_scoring_flags(CLI::App* app, Overrides& o) {
  o.add(app, "--denominator", "denominator", "statuses|collected");
  o.add(app, "--dead-zone", "dead_zone", "neutral polarity band");
  o.add(app, "--clip-percentile", "clip_percentile", "upper clipping percentile");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") std::cout << content;
  else detail::write_file(path, content);
}

std::vector<LabeledInstance> join_labels(const std::vector<FeatureVector>& vectors,
                                         const std::vector<pipeline::LabelEntry>& labels) {
  std::unordered_map<std::string, const FeatureVector*> by_id;
  for (const auto& v : vectors) by_id.emplace(v.user_id, &v);
  std::vector<LabeledInstance> out;
  for (const auto& l : labels) {
    auto it = by_id.find(l.user_id);
    if (it == by_id.end()) throw ValidationError("label for unknown user '" + l.user_id + "'");
    out.push_back({*it->second, l.label, l.annotator_ids, LabelSource::seed});
  }
  return out;
}

json loop_result_json(const active::ActiveSession& s, const active::LoopResult& r) {
  json j = {{"stop_reason", active::to_string(r.reason)},
            {"state", s.state()},
            {"labeled", s.pool().labeled.size()},
            {"unlabeled", s.pool().unlabeled.size()}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

service::Server* g_server = nullptr;

int serve(const config::Config& cfg) {
  auto engine = service::Engine::from_config(cfg);
  engine->start();
  service::Server server(*engine, cfg.ui_dir);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "listening on " << cfg.host << ":" << cfg.port << "\n";
  if (!server.listen(cfg.host, cfg.port)) throw Error("cannot listen on " + cfg.host + ":" + std::to_string(cfg.port));
  g_server = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trustlens: Twitter account credibility scoring and active learning"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "TOML or JSON config file");

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "validate and persist raw users and tweets");
  std::string users_path, tweets_path, out_dir;
  std::optional<std::uint64_t> max_id;
  bool sample_stddev = false;
  ingest_cmd->add_option("--users", users_path, "users file (.jsonl or .csv)")->required();
  ingest_cmd->add_option("--tweets", tweets_path, "tweets file (.jsonl or .csv)")->required();
  ingest_cmd->add_option("--out", out_dir, "output dataset directory")->required();
  ingest_cmd->add_option("--max-id", max_id, "drop tweets with a larger id");
  ingest_cmd->add_flag("--sample-stddev", sample_stddev, "sample instead of population standard deviation");

  // score
  Overrides score_o;
  auto* score_cmd = app.add_subcommand("score", "compute feature vectors for a dataset");
  std::string score_out;
  score_o.add(score_cmd, "--dataset", "dataset", "dataset directory");
  score_cmd->add_option("--out", score_out, "features JSONL")->required();
  add_scoring_flags(score_cmd, score_o);

  // normalize
  Overrides norm_o;
  auto* norm_cmd = app.add_subcommand("normalize", "min-max normalize feature vectors");
  std::string norm_in, norm_out, norm_params;
  norm_cmd->add_option("--features", norm_in, "raw features JSONL")->required();
  norm_cmd->add_option("--out", norm_out, "normalized features JSONL")->required();
  norm_cmd->add_option("--params-out", norm_params, "fitted normalization parameters (JSON)");
  norm_o.add(norm_cmd, "--clip-percentile", "clip_percentile", "upper clipping percentile");

  // train
  Overrides train_o;
  auto* train_cmd = app.add_subcommand("train", "train a classifier and report 10-fold CV metrics");
  std::string train_features, train_labels, train_model;
  train_cmd->add_option("--features", train_features, "normalized features JSONL")->required();
  train_cmd->add_option("--labels", train_labels, "labels JSONL")->required();
  train_cmd->add_option("--out", train_model, "model snapshot (JSON)");
  add_learner_flags(train_cmd, train_o);
  train_o.add(train_cmd, "--folds", "folds", "cross-validation folds");

  // al
  auto* al_cmd = app.add_subcommand("al", "active learning");
  al_cmd->require_subcommand(1);

  Overrides run_o;
  auto* run_cmd = al_cmd->add_subcommand("run", "pool-based active learning over a dataset");
  std::string run_oracle = "synthetic", run_curve, run_state;
  run_o.add(run_cmd, "--dataset", "dataset", "dataset directory");
  run_o.add(run_cmd, "--seed-labels", "seed_labels", "seed labels JSONL");
  run_o.add(run_cmd, "--truth", "truth_labels", "labels answering the synthetic oracle");
  run_cmd->add_option("--oracle", run_oracle, "synthetic|service")->check(CLI::IsMember({"synthetic", "service"}));
  run_cmd->add_option("--curve", run_curve, "learning curve CSV");
  run_cmd->add_option("--state-out", run_state, "final model state JSON");
  add_loop_flags(run_cmd, run_o);
  add_scoring_flags(run_cmd, run_o);
  run_o.add(run_cmd, "--port", "service.port", "port when --oracle service");
  run_o.add(run_cmd, "--state-dir", "service.state_dir", "session directory when --oracle service");

  Overrides sim_o;
  auto* sim_cmd = al_cmd->add_subcommand("simulate", "active learning against a synthetic oracle");
  std::string sim_curve, sim_state;
  std::size_t sim_users = 5000, sim_seed_trusted = 582, sim_seed_untrusted = 418;
  sim_o.add(sim_cmd, "--dataset", "dataset", "dataset directory (default: generated cohort)");
  sim_o.add(sim_cmd, "--seed-labels", "seed_labels", "seed labels JSONL (with --dataset)");
  sim_o.add(sim_cmd, "--truth", "truth_labels", "oracle labels JSONL (with --dataset)");
  sim_cmd->add_option("--users", sim_users, "generated cohort size");
  sim_cmd->add_option("--seed-trusted", sim_seed_trusted, "trusted users in the generated seed set");
  sim_cmd->add_option("--seed-untrusted", sim_seed_untrusted, "untrusted users in the generated seed set");
  sim_cmd->add_option("--curve", sim_curve, "learning curve CSV");
  sim_cmd->add_option("--state-out", sim_state, "final model state JSON");
  add_loop_flags(sim_cmd, sim_o);
  add_scoring_flags(sim_cmd, sim_o);

  // serve
  Overrides serve_o;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP annotation service");
  serve_o.add(serve_cmd, "--dataset", "dataset", "dataset directory");
  serve_o.add(serve_cmd, "--seed-labels", "seed_labels", "seed labels JSONL");
  serve_o.add(serve_cmd, "--host", "service.host", "bind address");
  serve_o.add(serve_cmd, "--port", "service.port", "port");
  serve_o.add(serve_cmd, "--state-dir", "service.state_dir", "session persistence directory");
  serve_o.add(serve_cmd, "--ui-dir", "service.ui_dir", "static UI bundle");
  serve_o.add(serve_cmd, "--annotators", "service.annotators", "agreeing votes needed per label");

  // report
  Overrides report_o;
  auto* report_cmd = app.add_subcommand("report", "descriptive stats, correlation table, learning curves");
  std::string report_out, report_features, report_labels;
  std::vector<std::string> report_states;
  bool report_sample = false;
  report_o.add(report_cmd, "--dataset", "dataset", "dataset directory");
  report_cmd->add_option("--features", report_features, "normalized features JSONL");
  report_cmd->add_option("--labels", report_labels, "labels JSONL");
  report_cmd->add_option("--state", report_states, "model state JSON from al run/simulate");
  report_cmd->add_option("--out", report_out, "output directory")->required();
  report_cmd->add_flag("--sample-stddev", report_sample, "sample instead of population standard deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*ingest_cmd) {
      const auto users = ingest::load_users(users_path, ingest::format_for(users_path));
      auto tweets = ingest::load_tweets(tweets_path, max_id, ingest::format_for(tweets_path));
      std::vector<UserProfile> kept_users;
      for (const auto& u : users.users) kept_users.push_back(u);
      auto kept = ingest::restrict_to_users(std::move(tweets.tweets), kept_users);
      std::vector<ingest::Reject> rejects = users.rejects;
      rejects.insert(rejects.end(), tweets.rejects.begin(), tweets.rejects.end());
      ingest::DatasetManifest meta;
      meta.source_files = {fs::path(users_path).filename().string(), fs::path(tweets_path).filename().string()};
      meta.filters_applied = {"selection_rule"};
      if (max_id) meta.filters_applied.push_back("max_id<=" + std::to_string(*max_id));
      ingest::persist(kept_users, kept, out_dir, meta, rejects);
      const auto kind = sample_stddev ? ingest::StddevKind::sample : ingest::StddevKind::population;
      json summary = {{"users", kept_users.size()}, {"tweets", kept.size()}, {"rejects", rejects.size()}};
      if (!kept_users.empty()) summary["stats"] = ingest::descriptive_stats(kept_users, kind);
      std::cout << summary.dump(2) << "\n";
      return 0;
    }

    if (*score_cmd) {
      const auto cfg = score_o.resolve(config_path);
      if (cfg.dataset.empty()) throw ValidationError("--dataset is required");
      const auto ds = ingest::load_dataset(cfg.dataset);
      const auto scored = scoring::score_dataset(ds.users, ds.tweets, sentiment::Lexicon::bundled(), cfg.scoring);
      detail::write_file(score_out, detail::to_jsonl(scored.vectors));
      auto meta = scoring::influence_metadata(scored.context, cfg.scoring);
      json rejects = json::array();
      for (const auto& r : scored.rejects) rejects.push_back({{"user_id", r.user_id}, {"reason", r.reason}});
      meta["rejects"] = rejects;
      detail::write_file(score_out + ".meta.json", meta.dump(2) + "\n");
      std::cerr << "scored " << scored.vectors.size() << " users, " << scored.rejects.size() << " rejected\n";
      return 0;
    }

    if (*norm_cmd) {
      const auto cfg = norm_o.resolve(config_path);
      const auto raw = detail::read_jsonl<FeatureVector>(norm_in);
      const auto params = preprocess::fit(raw, cfg.scoring.clip_percentile);
      detail::write_file(norm_out, detail::to_jsonl(preprocess::transform_all(raw, params)));
      if (!norm_params.empty()) detail::write_file(norm_params, json(params).dump(2) + "\n");
      return 0;
    }

    if (*train_cmd) {
      const auto cfg = train_o.resolve(config_path);
      const auto loop = cfg.loop();
      const auto vectors = detail::read_jsonl<FeatureVector>(train_features);
      const auto labeled = join_labels(vectors, pipeline::read_labels(train_labels));
      const auto metrics = active::evaluate_cv(labeled, loop.learner, loop.mask, loop.folds, loop.seed);
      const auto model = learners::Classifier::train(active::design_matrix(labeled, loop.mask),
                                                     active::label_vector(labeled), loop.learner);
      if (!train_model.empty()) {
        json snap = model;
        json mask = json::array();
        for (auto f : loop.mask) mask.push_back(feature_name(f));
        snap["feature_mask"] = mask;
        detail::write_file(train_model, snap.dump() + "\n");
      }
      std::cout << json{{"learner", to_string(loop.learner.kind)}, {"labeled", labeled.size()}, {"metrics", metrics}}.dump(2)
                << "\n";
      return 0;
    }

    if (*run_cmd) {
      const auto cfg = run_o.resolve(config_path);
      if (run_oracle == "service") return serve(cfg);
      if (cfg.dataset.empty() || cfg.seed_labels.empty() || cfg.truth_labels.empty()) {
        throw ValidationError("--dataset, --seed-labels and --truth are required with the synthetic oracle");
      }
      const auto corpus = pipeline::score_corpus(ingest::load_dataset(cfg.dataset), cfg.scoring);
      auto pool = pipeline::make_pool(corpus.normalized, pipeline::read_labels(cfg.seed_labels), cfg.batch_size);
      active::ActiveSession session(std::move(pool), cfg.loop());
      active::SyntheticOracle oracle(pipeline::label_map(pipeline::read_labels(cfg.truth_labels)));
      const auto result = active::run_loop(session, oracle, "synthetic", LabelSource::synthetic_oracle);
      write_or_print(run_curve, active::learning_curve_csv(session.history()));
      if (!run_state.empty()) detail::write_file(run_state, loop_result_json(session, result).dump(2) + "\n");
      return result.reason == active::StopReason::oracle_failed ? 1 : 0;
    }

    if (*sim_cmd) {
      const auto cfg = sim_o.resolve(config_path);
      active::Pool pool;
      std::unordered_map<std::string, Label> truth;
      if (!cfg.dataset.empty()) {
        if (cfg.seed_labels.empty() || cfg.truth_labels.empty()) {
          throw ValidationError("--seed-labels and --truth are required with --dataset");
        }
        const auto corpus = pipeline::score_corpus(ingest::load_dataset(cfg.dataset), cfg.scoring);
        pool = pipeline::make_pool(corpus.normalized, pipeline::read_labels(cfg.seed_labels), cfg.batch_size);
        truth = pipeline::label_map(pipeline::read_labels(cfg.truth_labels));
      } else {
        synthetic::CohortParams cp;
        cp.users = sim_users;
        cp.seed = cfg.seed;
        const auto cohort = synthetic::generate_cohort(cp);
        auto e = synthetic::make_experiment(cohort, sim_seed_trusted, sim_seed_untrusted, cfg.batch_size, cfg.seed,
                                            cfg.scoring);
        pool = std::move(e.pool);
        truth = std::move(e.truth);
      }
      active::ActiveSession session(std::move(pool), cfg.loop());
      active::SyntheticOracle oracle(std::move(truth));
      const auto result = active::run_loop(session, oracle, "synthetic", LabelSource::synthetic_oracle);
      write_or_print(sim_curve, active::learning_curve_csv(session.history()));
      if (!sim_state.empty()) detail::write_file(sim_state, loop_result_json(session, result).dump(2) + "\n");
      return result.reason == active::StopReason::oracle_failed ? 1 : 0;
    }

    if (*serve_cmd) return serve(serve_o.resolve(config_path));

    if (*report_cmd) {
      const auto cfg = report_o.resolve(config_path);
      fs::create_directories(report_out);
      const fs::path out = report_out;
      bool wrote = false;
      if (!cfg.dataset.empty()) {
        const auto ds = ingest::load_dataset(cfg.dataset);
        const auto kind = report_sample ? ingest::StddevKind::sample : ingest::StddevKind::population;
        detail::write_file(out / "descriptive_stats.json", json(ingest::descriptive_stats(ds.users, kind)).dump(2) + "\n");
        wrote = true;
      }
      if (!report_features.empty() || !report_labels.empty()) {
        if (report_features.empty() || report_labels.empty()) throw ValidationError("--features and --labels go together");
        const auto labeled = join_labels(detail::read_jsonl<FeatureVector>(report_features),
                                         pipeline::read_labels(report_labels));
        std::string csv = "feature,r,degenerate\n";
        char buf[64];
        for (const auto& c : preprocess::correlation_report(labeled)) {
          std::snprintf(buf, sizeof buf, "%.6f", c.r);
          csv += std::string(feature_name(c.feature)) + "," + buf + "," + (c.degenerate ? "true" : "false") + "\n";
        }
        detail::write_file(out / "correlation.csv", csv);
        wrote = true;
      }
      for (std::size_t i = 0; i < report_states.size(); ++i) {
        json j;
        try {
          j = json::parse(detail::read_file(report_states[i]));
        } catch (const json::exception& e) {
          throw ValidationError(report_states[i] + ": " + e.what());
        }
        const auto state = (j.contains("state") ? j.at("state") : j).get<ModelState>();
        const auto name = fs::path(report_states[i]).stem().string() + "_curve.csv";
        detail::write_file(out / name, active::learning_curve_csv(state.history));
        wrote = true;
      }
      if (!wrote) throw ValidationError("nothing to report: pass --dataset, --features/--labels or --state");
      return 0;
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
