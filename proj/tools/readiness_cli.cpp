// readiness: command-line front end over the C API.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "readiness/readiness.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

int exit_code_for(rdn_status s) {
  switch (s) {
    case RDN_OK:
      return kOk;
    case RDN_INVALID_ARGUMENT:
    case RDN_CONFIG_ERROR:
    case RDN_UNKNOWN_LABEL:
    case RDN_INVALID_PARTITION:
    case RDN_UNKNOWN_TERM:
    case RDN_ALPHA_OUT_OF_RANGE:
      return kUsage;
    case RDN_RANK_DEFICIENT:
    case RDN_NOT_CONVERGED:
      return kNumerical;
    default:
      return kData;
  }
}

struct Failure {
  rdn_status status;
};

void check(rdn_status s) {
  if (s == RDN_OK) return;
  std::string msg = rdn_last_error();
  const size_t row = rdn_last_error_row();
  const std::string column = rdn_last_error_column();
  std::cerr << "error: " << msg;
  const std::string where = "row " + std::to_string(row);
  if (row > 0 && msg.find(where) == std::string::npos) {
    std::cerr << " (" << where;
    if (!column.empty()) std::cerr << ", column " << column;
    std::cerr << ")";
  } else if (row == 0 && !column.empty() && msg.find(column) == std::string::npos) {
    std::cerr << " (column " << column << ")";
  }
  std::cerr << "\n";
  throw Failure{s};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Dataset = std::unique_ptr<rdn_dataset, Deleter<rdn_dataset, rdn_dataset_free>>;
using Config = std::unique_ptr<rdn_config, Deleter<rdn_config, rdn_config_free>>;
using Model = std::unique_ptr<rdn_model, Deleter<rdn_model, rdn_model_free>>;
using Partition = std::unique_ptr<rdn_partition, Deleter<rdn_partition, rdn_partition_free>>;
using Response = std::unique_ptr<rdn_response, Deleter<rdn_response, rdn_response_free>>;
using Result = std::unique_ptr<rdn_result, Deleter<rdn_result, rdn_result_free>>;

std::string take(char* s) {
  std::string out(s);
  rdn_string_free(s);
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    throw Failure{RDN_IO_ERROR};
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Options shared by train and evaluate.
struct RunOptions {
  std::string data;
  std::string config_path;
  std::string schema;
  std::string target;
  std::string features;
  std::optional<double> threshold;
  std::optional<double> test_fraction;
  std::optional<uint64_t> seed;
  std::string out_dir;
  std::string partition;
  std::optional<unsigned> threads;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("data", o.data, "Survey CSV (overrides data.path)");
  cmd->add_option("-c,--config", o.config_path, "Run configuration file");
  cmd->add_option("--schema", o.schema, "balance_wheel or synthetic");
  cmd->add_option("--target", o.target, "Target column");
  auto* f = cmd->add_option("--features", o.features, "Comma-separated feature labels");
  auto* t = cmd->add_option("--threshold", o.threshold, "Correlation threshold");
  f->excludes(t);
  cmd->add_option("--test-fraction", o.test_fraction, "Held-out fraction");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("-o,--out-dir", o.out_dir, "Directory for output files");
  cmd->add_option("--threads", o.threads, "Forest worker threads (0 = hardware)");
}

Config make_config(const RunOptions& o) {
  rdn_config* raw = nullptr;
  if (o.config_path.empty()) check(rdn_config_new(&raw));
  else check(rdn_config_load(o.config_path.c_str(), &raw));
  Config cfg(raw);
  auto set = [&](const char* key, const std::string& value) {
    check(rdn_config_set(cfg.get(), key, value.c_str()));
  };
  if (!o.data.empty()) set("data.path", o.data);
  if (!o.schema.empty()) set("data.schema", o.schema);
  if (!o.target.empty()) set("data.target", o.target);
  if (!o.features.empty()) set("features.labels", o.features);
  if (o.threshold) set("features.threshold", num(*o.threshold));
  if (o.test_fraction) {
    std::ostringstream s;
    s.precision(17);
    s << *o.test_fraction;
    set("data.test_fraction", s.str());
  }
  if (o.seed) set("data.seed", std::to_string(*o.seed));
  if (o.threads) set("forest.threads", std::to_string(*o.threads));
  if (!o.partition.empty()) set("fuzzy.partition", o.partition);
  if (!o.out_dir.empty()) set("output.dir", o.out_dir);
  return cfg;
}

std::filesystem::path output_dir(const rdn_config* cfg) {
  const char* dir = nullptr;
  check(rdn_config_get_output_dir(cfg, &dir));
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  return p;
}

void write_models(const rdn_result* result, const std::filesystem::path& dir) {
  for (size_t i = 0; i < rdn_result_model_count(result); ++i) {
    const rdn_model* m = rdn_result_model(result, i);
    char* doc = nullptr;
    check(rdn_model_save(m, &doc));
    write_text(dir / (std::string(rdn_model_kind_name(rdn_model_get_kind(m))) + ".model"),
               take(doc));
  }
}

Dataset read_dataset(const std::string& path, const std::string& schema,
                     const std::string& target) {
  rdn_dataset* raw = nullptr;
  check(rdn_dataset_read(path.c_str(), schema.empty() ? nullptr : schema.c_str(),
                         target.empty() ? nullptr : target.c_str(), &raw));
  return Dataset(raw);
}

Partition make_partition(const std::string& config_path, const std::string& terms) {
  rdn_config* raw = nullptr;
  if (config_path.empty()) check(rdn_config_new(&raw));
  else check(rdn_config_load(config_path.c_str(), &raw));
  Config cfg(raw);
  if (!terms.empty()) check(rdn_config_set(cfg.get(), "fuzzy.partition", terms.c_str()));
  rdn_partition* p = nullptr;
  check(rdn_partition_from_config(cfg.get(), &p));
  return Partition(p);
}

void print_assessment(const rdn_partition* p, double score) {
  rdn_assessment a{};
  std::vector<double> mu(rdn_partition_term_count(p));
  check(rdn_fuzzify(p, score, &a, mu.data(), mu.size()));
  std::cout << "clamped_score: " << num(a.input_score) << "\n";
  for (size_t i = 0; i < mu.size(); ++i)
    std::cout << "membership." << rdn_partition_term_label(p, i) << ": " << num(mu[i]) << "\n";
  std::cout << "term: " << rdn_partition_term_label(p, a.term_index) << "\n";
  std::cout << "degree: " << num(a.degree) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Career-readiness assessment from Balance-Wheel survey data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rdn_version());

  // stats / corr
  std::string stats_path, stats_schema, stats_target;
  bool stats_sorted = false;
  auto* stats = app.add_subcommand("stats", "Descriptive statistics and correlations");
  auto* corr = app.add_subcommand("corr", "Correlation matrix");
  for (auto* cmd : {stats, corr}) {
    cmd->add_option("data", stats_path, "Survey CSV")->required();
    cmd->add_option("--schema", stats_schema, "balance_wheel or synthetic");
    cmd->add_option("--target", stats_target, "Target column");
    cmd->add_flag("--sorted", stats_sorted, "Only target correlations, descending");
  }

  RunOptions train_opts;
  std::string train_kinds = "all";
  auto* train = app.add_subcommand("train", "Fit regression models on the training split");
  add_run_options(train, train_opts);
  train->add_option("-m,--model", train_kinds, "linear, svr, forest or all")
      ->check(CLI::IsMember({"linear", "svr", "forest", "all"}));

  RunOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Train, select and grade all models");
  add_run_options(evaluate, eval_opts);
  evaluate->add_option("--partition", eval_opts.partition, "Terms as Label:a,b,c;...");

  std::string model_path, response_path, scores, predict_config, predict_partition;
  auto* predict = app.add_subcommand("predict", "Assess one survey response");
  predict->add_option("model", model_path, "Model document")->required();
  auto* resp = predict->add_option("--response", response_path, "CSV: header plus one row");
  auto* sc = predict->add_option("--scores", scores, "Inline Label=score,...");
  resp->excludes(sc);
  predict->add_option("-c,--config", predict_config, "Configuration with a [fuzzy] section");
  predict->add_option("--partition", predict_partition, "Terms as Label:a,b,c;...");

  double fuzz_score = 0;
  std::string fuzz_config, fuzz_partition;
  auto* fuzzify = app.add_subcommand("fuzzify", "Linguistic assessment of a crisp score");
  fuzzify->add_option("--score", fuzz_score, "Crisp score")->required();
  fuzzify->add_option("-c,--config", fuzz_config, "Configuration with a [fuzzy] section");
  fuzzify->add_option("--partition", fuzz_partition, "Terms as Label:a,b,c;...");

  size_t synth_n = 0;
  std::vector<double> synth_coeffs;
  double synth_intercept = 0, synth_noise = 1;
  uint64_t synth_seed = 42;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort CSV");
  synth->add_option("-n,--rows", synth_n, "Number of respondents")->required();
  synth->add_option("--coefficients", synth_coeffs, "Feature coefficients")
      ->required()
      ->delimiter(',');
  synth->add_option("--intercept", synth_intercept, "Intercept");
  synth->add_option("--noise", synth_noise, "Gaussian noise standard deviation");
  synth->add_option("--seed", synth_seed, "Seed");
  synth->add_option("-o,--out", synth_out, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (stats->parsed() || corr->parsed()) {
      auto ds = read_dataset(stats_path, stats_schema, stats_target);
      char* text = nullptr;
      if (stats_sorted) {
        check(rdn_stats_target_correlation(
            ds.get(), stats_target.empty() ? nullptr : stats_target.c_str(), &text));
        std::cout << take(text);
      } else {
        if (stats->parsed()) {
          check(rdn_stats_describe(ds.get(), &text));
          std::cout << take(text) << "\n";
        }
        check(rdn_stats_correlation(ds.get(), &text));
        std::cout << take(text);
      }
    } else if (train->parsed()) {
      auto cfg = make_config(train_opts);
      rdn_result* raw = nullptr;
      check(rdn_train(cfg.get(), train_kinds.c_str(), &raw));
      Result result(raw);
      const auto dir = output_dir(cfg.get());
      write_models(result.get(), dir);
      write_text(dir / "train_report.txt", rdn_result_document(result.get()));
      std::cout << rdn_result_table(result.get());
    } else if (evaluate->parsed()) {
      auto cfg = make_config(eval_opts);
      rdn_result* raw = nullptr;
      check(rdn_evaluate(cfg.get(), &raw));
      Result result(raw);
      const auto dir = output_dir(cfg.get());
      write_models(result.get(), dir);
      write_text(dir / "evaluation_report.txt", rdn_result_document(result.get()));
      std::cout << rdn_result_table(result.get());
    } else if (predict->parsed()) {
      if (response_path.empty() == scores.empty()) {
        std::cerr << "error: give exactly one of --response or --scores\n";
        return kUsage;
      }
      rdn_model* mraw = nullptr;
      check(rdn_model_read(model_path.c_str(), &mraw));
      Model model(mraw);
      rdn_response* rraw = nullptr;
      if (!scores.empty()) {
        check(rdn_response_parse_pairs(scores.c_str(), &rraw));
      } else {
        std::ifstream in(response_path, std::ios::binary);
        if (!in) {
          std::cerr << "error: Io: cannot open " << response_path << "\n";
          return kData;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        check(rdn_response_parse_csv(buf.str().c_str(), &rraw));
      }
      Response response(rraw);
      auto partition = make_partition(predict_config, predict_partition);
      double raw_prediction = 0;
      check(rdn_model_predict_response(model.get(), response.get(), &raw_prediction));
      std::cout << "model: " << rdn_model_kind_name(rdn_model_get_kind(model.get())) << "\n";
      std::cout << "raw_prediction: " << num(raw_prediction) << "\n";
      print_assessment(partition.get(), raw_prediction);
    } else if (fuzzify->parsed()) {
      auto partition = make_partition(fuzz_config, fuzz_partition);
      std::cout << "score: " << num(fuzz_score) << "\n";
      print_assessment(partition.get(), fuzz_score);
    } else if (synth->parsed()) {
      rdn_dataset* raw = nullptr;
      check(rdn_dataset_synthetic(synth_n, synth_coeffs.data(), synth_coeffs.size(),
                                  synth_intercept, synth_noise, synth_seed, &raw));
      Dataset ds(raw);
      char* csv = nullptr;
      check(rdn_dataset_to_csv(ds.get(), &csv));
      if (synth_out.empty()) std::cout << take(csv);
      else write_text(synth_out, take(csv));
    }
  } catch (const Failure& f) {
    return exit_code_for(f.status);
  }
  return kOk;
}
