#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "readiness/dataio.hpp"
#include "readiness/fuzzy.hpp"
#include "readiness/regression.hpp"
#include "readiness/stats.hpp"

namespace readiness {

struct RegressionReport {
  std::string model_kind;
  double mae = 0.0;
  double mse = 0.0;
  double rmse = 0.0;
  std::size_t n_test = 0;
};

RegressionReport regression_metrics(std::span<const double> y_true, std::span<const double> y_pred,
                                    std::string model_kind = {});

struct ConfusionMatrix {
  std::vector<std::string> term_order;
  std::vector<std::vector<std::size_t>> counts;  // [true][predicted]

  std::size_t total() const;
  std::size_t trace() const;
};

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;  // true instances of the class
};

struct ClassificationReport {
  double accuracy = 0.0;
  std::vector<std::pair<std::string, ClassScores>> per_class;  // term order
  ClassScores macro;
  std::string positive_class;
  ClassScores positive;
  ConfusionMatrix confusion;
};

/// One-vs-rest scores per term, their unweighted mean, and the single-class
/// view for `positive_class`. A zero denominator yields 0.
ClassificationReport classification_metrics(std::span<const std::string> true_terms,
                                            std::span<const std::string> pred_terms,
                                            std::span<const std::string> term_order,
                                            std::string_view positive_class = "High");

/// Lowest RMSE, then lowest MAE, then the order linear, svr, forest.
std::size_t select_winner(std::span<const RegressionReport> reports);

struct RunConfig;

struct FeatureChoice {
  std::vector<std::string> labels;
  std::optional<FeatureSelection> selection;  // set when chosen by threshold
};

/// Pinned labels are checked against the dataset (and must be fully
/// observed); otherwise correlation selection runs on the whole cohort with
/// optional columns excluded.
FeatureChoice choose_features(const Dataset& dataset, const RunConfig& config);

struct PredictionRow {
  std::size_t row = 0;
  double truth = 0.0;
  double prediction = 0.0;
  std::string true_term;
  std::string predicted_term;
};

struct TrainingResult {
  FeatureChoice features;
  TrainTestSplit split;
  std::vector<Model> models;
  std::vector<RegressionReport> reports;
};

struct PipelineReport {
  std::string target_label;
  std::size_t n_rows = 0;
  FeatureChoice features;
  TrainTestSplit split;
  std::vector<Model> models;  // linear, svr, forest
  std::vector<RegressionReport> reports;
  std::size_t winner = 0;
  std::vector<PredictionRow> predictions;
  ClassificationReport classification;
  std::string partition_terms;
  Interval partition_domain;

  const Model& winning_model() const { return models.at(winner); }
};

/// Splits, fits each requested kind on the training rows and scores it on
/// the test rows.
TrainingResult train_models(const Dataset& dataset, const RunConfig& config,
                            std::span<const ModelKind> kinds);

/// Full flow: split, fit all three models, score, pick the winner by RMSE,
/// fuzzify true and predicted test targets and score the labels.
PipelineReport evaluate_pipeline(const Dataset& dataset, const RunConfig& config);

std::string training_document(const TrainingResult& result, const RunConfig& config);
std::string training_table(const TrainingResult& result);
std::string report_document(const PipelineReport& report, const RunConfig& config);
std::string report_table(const PipelineReport& report);

}  // namespace readiness
