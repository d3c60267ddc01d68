#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "readiness/dataio.hpp"
#include "readiness/fuzzy.hpp"
#include "readiness/regression.hpp"

namespace readiness {

inline constexpr double kDefaultThreshold = 0.3;

/// Settings for train/evaluate runs. Read from sectioned `key = value` text;
/// `set("section.key", value)` applies command-line overrides on top.
///
///   [data]       path, schema (balance_wheel | synthetic), target,
///                test_fraction, seed
///   [features]   labels (comma list) or threshold, never both
///   [linear]     ridge_lambda
///   [svr]        c, epsilon, kernel (rbf | linear), gamma (scale | value),
///                tolerance, max_iterations
///   [forest]     n_trees, max_depth (none | value), min_samples_split,
///                bootstrap, max_features, threads
///   [fuzzy]      domain = lo, hi; term = Label, a, b, c (repeated, least
///                ready first) or partition = Label:a,b,c;...;
///                require_ruspini
///   [evaluation] positive_class
///   [output]     dir
struct RunConfig {
  std::string dataset_path;
  std::string schema = "balance_wheel";
  std::string target_label = "Opportunities";
  std::vector<std::string> feature_labels;
  std::optional<double> correlation_threshold;
  double test_fraction = 0.2;
  std::uint64_t seed = 42;
  ModelParams params;
  std::vector<FuzzyTerm> partition_terms = default_partition().terms();
  Interval partition_domain{1.0, 10.0};
  bool require_ruspini = false;
  std::string positive_class = "High";
  std::string output_dir = ".";

  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string& path);

  /// Applies one override. Setting features.labels clears the threshold and
  /// the reverse, so a flag always wins over the file.
  void set(std::string_view key, std::string_view value);

  /// Threshold in effect when no labels are pinned.
  double threshold() const { return correlation_threshold.value_or(kDefaultThreshold); }

  FuzzyPartition partition() const;
  void validate() const;
};

/// Schema for the configured dataset: the Balance-Wheel layout, or a
/// synthetic layout whose features are every non-target header column.
SurveySchema schema_for(const RunConfig& config, std::string_view csv_text);

Dataset load_dataset(const RunConfig& config);

}  // namespace readiness
