#include "readiness/config.hpp"

#include <algorithm>

#include "readiness/error.hpp"
#include "readiness/text.hpp"

namespace readiness {

namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view expected) {
  throw Error(ErrorCode::ConfigError, std::string(key) + " = '" + std::string(value) +
                                          "': expected " + std::string(expected));
}

double as_double(std::string_view key, std::string_view value) {
  auto v = parse_double(value);
  if (!v) bad(key, value, "a number");
  return *v;
}

std::uint64_t as_count(std::string_view key, std::string_view value) {
  auto v = parse_unsigned(value);
  if (!v) bad(key, value, "a non-negative integer");
  return *v;
}

bool as_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  bad(key, value, "true or false");
}

FuzzyTerm as_term(std::string_view key, std::string_view value) {
  auto parts = split(value, ',');
  if (parts.size() != 4) bad(key, value, "Label, a, b, c");
  FuzzyTerm t;
  t.label = parts[0];
  t.shape = {as_double(key, parts[1]), as_double(key, parts[2]), as_double(key, parts[3])};
  return t;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "data.path") dataset_path = value;
  else if (key == "data.schema") {
    if (value != "balance_wheel" && value != "synthetic") bad(key, value, "balance_wheel or synthetic");
    schema = value;
  } else if (key == "data.target") target_label = value;
  else if (key == "data.test_fraction") test_fraction = as_double(key, value);
  else if (key == "data.seed") seed = as_count(key, value);
  else if (key == "features.labels") {
    feature_labels.clear();
    for (auto& l : split(value, ','))
      if (!l.empty()) feature_labels.push_back(l);
    correlation_threshold.reset();
  } else if (key == "features.threshold") {
    correlation_threshold = as_double(key, value);
    feature_labels.clear();
  } else if (key == "linear.ridge_lambda") params.linear.ridge_lambda = as_double(key, value);
  else if (key == "svr.c") params.svr.c = as_double(key, value);
  else if (key == "svr.epsilon") params.svr.epsilon = as_double(key, value);
  else if (key == "svr.kernel") {
    if (value == "rbf") params.svr.kernel = KernelKind::Rbf;
    else if (value == "linear") params.svr.kernel = KernelKind::Linear;
    else bad(key, value, "rbf or linear");
  } else if (key == "svr.gamma") {
    if (value == "scale") params.svr.gamma.reset();
    else params.svr.gamma = as_double(key, value);
  } else if (key == "svr.tolerance") params.svr.tolerance = as_double(key, value);
  else if (key == "svr.max_iterations") params.svr.max_iterations = as_count(key, value);
  else if (key == "forest.n_trees") params.forest.n_trees = as_count(key, value);
  else if (key == "forest.max_depth") {
    if (value == "none") params.forest.max_depth.reset();
    else params.forest.max_depth = as_count(key, value);
  } else if (key == "forest.min_samples_split") params.forest.min_samples_split = as_count(key, value);
  else if (key == "forest.bootstrap") params.forest.bootstrap = as_bool(key, value);
  else if (key == "forest.max_features") params.forest.max_features = as_count(key, value);
  else if (key == "forest.threads") params.forest.threads = as_count(key, value);
  else if (key == "fuzzy.domain") {
    auto parts = split(value, ',');
    if (parts.size() != 2) bad(key, value, "lo, hi");
    partition_domain = {as_double(key, parts[0]), as_double(key, parts[1])};
  } else if (key == "fuzzy.partition") partition_terms = parse_terms(value);
  else if (key == "fuzzy.require_ruspini") require_ruspini = as_bool(key, value);
  else if (key == "evaluation.positive_class") positive_class = canonical_term(value);
  else if (key == "output.dir") output_dir = value;
  else throw Error(ErrorCode::ConfigError, "unknown setting '" + std::string(key) + "'");
}

RunConfig RunConfig::parse(std::string_view text) {
  const auto doc = Document::parse(text);
  RunConfig config;
  bool has_labels = false, has_threshold = false;
  std::vector<FuzzyTerm> terms;
  for (const auto& e : doc.entries()) {
    const auto key = e.section + "." + e.key;
    if (key == "fuzzy.term") {
      terms.push_back(as_term(key, e.value));
      continue;
    }
    if (key == "features.labels") has_labels = true;
    if (key == "features.threshold") has_threshold = true;
    try {
      config.set(key, e.value);
    } catch (const Error& err) {
      throw Error(err.code() == ErrorCode::InvalidPartition ? ErrorCode::InvalidPartition
                                                            : ErrorCode::ConfigError,
                  err.message() + " (line " + std::to_string(e.line) + ")");
    }
  }
  if (has_labels && has_threshold)
    throw Error(ErrorCode::ConfigError, "features.labels and features.threshold are exclusive");
  if (!terms.empty()) config.partition_terms = std::move(terms);
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Io) throw Error(ErrorCode::ConfigError, e.message());
    throw;
  }
}

FuzzyPartition RunConfig::partition() const {
  return FuzzyPartition("Career Readiness", partition_terms, partition_domain, require_ruspini);
}

void RunConfig::validate() const {
  if (target_label.empty()) throw Error(ErrorCode::ConfigError, "data.target is empty");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(ErrorCode::ConfigError, "data.test_fraction must lie in (0, 1)");
  if (!feature_labels.empty() && correlation_threshold)
    throw Error(ErrorCode::ConfigError, "features.labels and features.threshold are exclusive");
  if (std::find(feature_labels.begin(), feature_labels.end(), target_label) != feature_labels.end())
    throw Error(ErrorCode::ConfigError, "the target cannot also be a feature");
  params.validate();
  const auto p = partition();
  p.term_index(positive_class);
}

SurveySchema schema_for(const RunConfig& config, std::string_view csv_text) {
  if (config.schema == "synthetic") {
    auto first = csv_text.substr(0, csv_text.find('\n'));
    if (trim(first).empty()) throw Error(ErrorCode::EmptyFile, "input has no header row");
    std::vector<std::string> features;
    bool has_target = false;
    for (auto& h : split_csv_record(first)) {
      const auto label = std::string(trim(h));
      if (label == config.target_label) has_target = true;
      else if (!label.empty()) features.push_back(label);
    }
    if (!has_target)
      throw Error(ErrorCode::MissingColumn, config.target_label, std::nullopt, config.target_label);
    return SurveySchema::synthetic(features, config.target_label);
  }
  const auto base = SurveySchema::balance_wheel();
  if (!base.find(config.target_label))
    throw Error(ErrorCode::UnknownLabel, "target '" + config.target_label +
                                             "' is not a Balance-Wheel field");
  return SurveySchema(base.fields(), config.target_label);
}

Dataset load_dataset(const RunConfig& config) {
  if (config.dataset_path.empty()) throw Error(ErrorCode::ConfigError, "data.path is not set");
  const auto text = read_file(config.dataset_path);
  return parse_csv(text, schema_for(config, text));
}

}  // namespace readiness
