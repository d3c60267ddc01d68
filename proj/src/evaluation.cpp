#include "readiness/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "readiness/config.hpp"
#include "readiness/error.hpp"
#include "readiness/text.hpp"

namespace readiness {

RegressionReport regression_metrics(std::span<const double> y_true, std::span<const double> y_pred,
                                    std::string model_kind) {
  if (y_true.size() != y_pred.size())
    throw Error(ErrorCode::LengthMismatch, std::to_string(y_true.size()) + " targets vs " +
                                               std::to_string(y_pred.size()) + " predictions");
  if (y_true.empty()) throw Error(ErrorCode::Empty, "no samples to score");
  double abs_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    abs_sum += std::abs(e);
    sq_sum += e * e;
  }
  const double n = static_cast<double>(y_true.size());
  RegressionReport r;
  r.model_kind = std::move(model_kind);
  r.n_test = y_true.size();
  r.mae = abs_sum / n;
  r.mse = sq_sum / n;
  r.rmse = std::sqrt(r.mse);
  return r;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (const auto& row : counts)
    for (auto c : row) t += c;
  return t;
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

std::size_t position(std::span<const std::string> order, std::string_view term) {
  const auto canonical = canonical_term(term);
  for (std::size_t i = 0; i < order.size(); ++i)
    if (order[i] == canonical) return i;
  throw Error(ErrorCode::UnknownTerm, "'" + std::string(term) + "' is not in the term order");
}

}  // namespace

ClassificationReport classification_metrics(std::span<const std::string> true_terms,
                                            std::span<const std::string> pred_terms,
                                            std::span<const std::string> term_order,
                                            std::string_view positive_class) {
  if (true_terms.size() != pred_terms.size())
    throw Error(ErrorCode::LengthMismatch, "true and predicted label counts differ");
  if (true_terms.empty()) throw Error(ErrorCode::Empty, "no labels to score");
  if (term_order.empty()) throw Error(ErrorCode::InvalidArgument, "empty term order");

  const auto k = term_order.size();
  ClassificationReport out;
  out.confusion.term_order.assign(term_order.begin(), term_order.end());
  out.confusion.counts.assign(k, std::vector<std::size_t>(k, 0));
  for (std::size_t i = 0; i < true_terms.size(); ++i)
    ++out.confusion.counts[position(term_order, true_terms[i])][position(term_order, pred_terms[i])];

  const auto& cm = out.confusion.counts;
  out.accuracy = ratio(out.confusion.trace(), out.confusion.total());
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t predicted = 0, actual = 0;
    for (std::size_t j = 0; j < k; ++j) {
      predicted += cm[j][c];
      actual += cm[c][j];
    }
    ClassScores s;
    s.precision = ratio(cm[c][c], predicted);
    s.recall = ratio(cm[c][c], actual);
    s.f1 = harmonic(s.precision, s.recall);
    s.support = actual;
    out.per_class.emplace_back(term_order[c], s);
    out.macro.precision += s.precision / static_cast<double>(k);
    out.macro.recall += s.recall / static_cast<double>(k);
    out.macro.f1 += s.f1 / static_cast<double>(k);
    out.macro.support += actual;
  }
  const auto pos = position(term_order, positive_class);
  out.positive_class = term_order[pos];
  out.positive = out.per_class[pos].second;
  return out;
}

std::size_t select_winner(std::span<const RegressionReport> reports) {
  if (reports.empty()) throw Error(ErrorCode::Empty, "no model reports to compare");
  auto rank = [](const RegressionReport& r) {
    auto kind = parse_model_kind(r.model_kind);
    return kind ? static_cast<int>(*kind) : 3;
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto& a = reports[i];
    const auto& b = reports[best];
    if (a.rmse != b.rmse ? a.rmse < b.rmse
                         : a.mae != b.mae ? a.mae < b.mae : rank(a) < rank(b))
      best = i;
  }
  return best;
}

FeatureChoice choose_features(const Dataset& dataset, const RunConfig& config) {
  FeatureChoice out;
  const auto target = dataset.require_column(config.target_label);
  if (!config.feature_labels.empty()) {
    for (const auto& label : config.feature_labels) {
      const auto c = dataset.column_index(label);
      if (!c) throw Error(ErrorCode::UnknownLabel, "feature '" + label + "' is not a dataset column");
      if (*c == target) throw Error(ErrorCode::ConfigError, "the target cannot also be a feature");
      for (std::size_t r = 0; r < dataset.size(); ++r)
        if (std::isnan(dataset.rows()(r, *c)))
          throw Error(ErrorCode::MissingValue,
                      "feature " + label + " is missing in row " + std::to_string(r + 1), r + 1,
                      label);
      out.labels.push_back(label);
    }
    return out;
  }
  std::vector<std::string> optional_columns;
  for (std::size_t c = 0; c < dataset.column_labels().size(); ++c)
    if (!dataset.field(c).required) optional_columns.push_back(dataset.column_labels()[c]);
  auto selection =
      select_features(pearson(dataset), config.target_label, config.threshold(), optional_columns);
  out.labels = selection.selected_labels;
  out.selection = std::move(selection);
  return out;
}

namespace {

struct Prepared {
  Matrix x_train, x_test;
  std::vector<double> y_train, y_test;
};

Prepared prepare(const Dataset& dataset, const FeatureChoice& features, const TrainTestSplit& split,
                 std::size_t target) {
  std::vector<std::size_t> cols;
  for (const auto& l : features.labels) cols.push_back(dataset.require_column(l));
  const auto x = dataset.rows().select_cols(cols);
  const auto y = dataset.rows().column(target);
  Prepared p;
  p.x_train = x.select_rows(split.train_indices);
  p.x_test = x.select_rows(split.test_indices);
  for (auto i : split.train_indices) p.y_train.push_back(y[i]);
  for (auto i : split.test_indices) p.y_test.push_back(y[i]);
  return p;
}

ModelParams params_for(const RunConfig& config) {
  auto params = config.params;
  params.seed = config.seed;
  return params;
}

}  // namespace

TrainingResult train_models(const Dataset& dataset, const RunConfig& config,
                            std::span<const ModelKind> kinds) {
  config.validate();
  TrainingResult result;
  result.features = choose_features(dataset, config);
  result.split = split(dataset, config.test_fraction, config.seed);
  const auto data = prepare(dataset, result.features, result.split,
                            dataset.require_column(config.target_label));
  const auto params = params_for(config);
  for (auto kind : kinds) {
    auto model = fit_model(kind, data.x_train, data.y_train, params, result.features.labels);
    result.reports.push_back(
        regression_metrics(data.y_test, predict_rows(model, data.x_test), model_kind_name(kind)));
    result.models.push_back(std::move(model));
  }
  return result;
}

PipelineReport evaluate_pipeline(const Dataset& dataset, const RunConfig& config) {
  config.validate();
  const auto partition = config.partition();
  const ModelKind kinds[] = {ModelKind::Linear, ModelKind::Svr, ModelKind::Forest};
  auto trained = train_models(dataset, config, kinds);

  PipelineReport report;
  report.target_label = config.target_label;
  report.n_rows = dataset.size();
  report.features = std::move(trained.features);
  report.split = std::move(trained.split);
  report.models = std::move(trained.models);
  report.reports = std::move(trained.reports);
  report.winner = select_winner(report.reports);
  report.partition_terms = format_terms(partition.terms());
  report.partition_domain = partition.domain();

  const auto data = prepare(dataset, report.features, report.split,
                            dataset.require_column(config.target_label));
  const auto predictions = predict_rows(report.winning_model(), data.x_test);
  std::vector<std::string> true_terms, pred_terms;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    PredictionRow row;
    row.row = report.split.test_indices[i];
    row.truth = data.y_test[i];
    row.prediction = predictions[i];
    row.true_term = fuzzify(partition, row.truth).chosen_term;
    row.predicted_term = fuzzify(partition, row.prediction).chosen_term;
    true_terms.push_back(row.true_term);
    pred_terms.push_back(row.predicted_term);
    report.predictions.push_back(std::move(row));
  }
  const auto order = partition.labels();
  report.classification = classification_metrics(true_terms, pred_terms, order, config.positive_class);
  return report;
}

namespace {

std::string join_indices(std::span<const std::size_t> indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(indices[i]);
  }
  return out;
}

void write_run(Document& doc, const RunConfig& config, const FeatureChoice& features,
               const TrainTestSplit& split, std::size_t n_rows) {
  doc.section("report");
  doc.add("format_version", "1");
  doc.add("target", config.target_label);
  doc.add("features", join(features.labels, ","));
  doc.add("feature_mode", features.selection ? "threshold" : "pinned");
  if (features.selection) doc.add("threshold", features.selection->threshold);
  doc.add("n_rows", std::to_string(n_rows));
  doc.add("n_train", std::to_string(split.train_indices.size()));
  doc.add("n_test", std::to_string(split.test_indices.size()));
  doc.add("test_fraction", split.test_fraction);
  doc.add("seed", std::to_string(split.seed));
  if (features.selection) {
    doc.section("feature_correlations");
    for (std::size_t i = 0; i < features.selection->selected_labels.size(); ++i)
      doc.add(features.selection->selected_labels[i], features.selection->selected_correlations[i]);
  }
  doc.section("split");
  doc.add("test_indices", join_indices(split.test_indices));
}

void write_regression(Document& doc, std::span<const RegressionReport> reports) {
  for (const auto& r : reports) {
    doc.section("regression." + r.model_kind);
    doc.add("mae", r.mae);
    doc.add("mse", r.mse);
    doc.add("rmse", r.rmse);
    doc.add("n_test", std::to_string(r.n_test));
  }
}

void write_scores(Document& doc, const ClassScores& s) {
  doc.add("precision", s.precision);
  doc.add("recall", s.recall);
  doc.add("f1", s.f1);
  doc.add("support", std::to_string(s.support));
}

const char* display_name(std::string_view kind) {
  if (kind == "linear") return "Linear Regression";
  if (kind == "svr") return "Support Vector Regression";
  if (kind == "forest") return "Random Forest Regression";
  return "Model";
}

std::string row_text(const char* fmt, const char* name, double a, double b, double c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, name, a, b, c);
  return buf;
}

std::string regression_rows(std::span<const RegressionReport> reports) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-28s %8s %8s %8s\n", "", "MAE", "MSE", "RMSE");
  out += buf;
  for (const auto& r : reports)
    out += row_text("%-28s %8.3f %8.3f %8.3f\n", display_name(r.model_kind), r.mae, r.mse, r.rmse);
  return out;
}

}  // namespace

std::string training_document(const TrainingResult& result, const RunConfig& config) {
  Document doc;
  std::size_t n_rows = result.split.train_indices.size() + result.split.test_indices.size();
  write_run(doc, config, result.features, result.split, n_rows);
  write_regression(doc, result.reports);
  return doc.str();
}

std::string training_table(const TrainingResult& result) {
  return "Measures of error (test split, n = " + std::to_string(result.split.test_indices.size()) +
         ")\n" + regression_rows(result.reports);
}

std::string report_document(const PipelineReport& report, const RunConfig& config) {
  Document doc;
  write_run(doc, config, report.features, report.split, report.n_rows);
  write_regression(doc, report.reports);
  doc.section("selection");
  doc.add("winner", report.reports[report.winner].model_kind);
  doc.add("criterion", "rmse, then mae, then linear < svr < forest");

  const auto& c = report.classification;
  doc.section("partition");
  doc.add("domain", format_exact(report.partition_domain.lo) + ", " +
                        format_exact(report.partition_domain.hi));
  doc.add("terms", report.partition_terms);
  doc.section("classification");
  doc.add("accuracy", c.accuracy);
  doc.add("positive_class", c.positive_class);
  doc.section("classification.positive");
  write_scores(doc, c.positive);
  doc.section("classification.macro");
  write_scores(doc, c.macro);
  for (const auto& [term, s] : c.per_class) {
    doc.section("classification.class." + term);
    write_scores(doc, s);
  }
  doc.section("confusion");
  doc.add("terms", join(c.confusion.term_order, ","));
  for (std::size_t i = 0; i < c.confusion.counts.size(); ++i)
    doc.add(c.confusion.term_order[i], join_indices(c.confusion.counts[i]));
  doc.section("predictions");
  for (const auto& p : report.predictions)
    doc.add("row", std::to_string(p.row) + ' ' + format_exact(p.truth) + ' ' +
                       format_exact(p.prediction) + ' ' + p.true_term + ' ' + p.predicted_term);
  return doc.str();
}

std::string report_table(const PipelineReport& report) {
  const auto& c = report.classification;
  std::string out = "Measures of error of models (test split, n = " +
                    std::to_string(report.split.test_indices.size()) + ")\n";
  out += regression_rows(report.reports);
  out += "Selected model: " + std::string(display_name(report.reports[report.winner].model_kind)) +
         "\n\n";

  char buf[200];
  const auto winner = std::string(display_name(report.reports[report.winner].model_kind)) +
                      " Fuzzy model";
  std::snprintf(buf, sizeof buf, "%-40s %9s %9s %9s %9s\n", "", "Accuracy", "Precision", "Recall",
                "F1");
  out += "Fuzzified test labels (" + report.partition_terms + ")\n";
  out += buf;
  auto line = [&](const std::string& name, const ClassScores& s, bool with_accuracy) {
    if (with_accuracy)
      std::snprintf(buf, sizeof buf, "%-40s %9.4f %9.4f %9.4f %9.4f\n", name.c_str(), c.accuracy,
                    s.precision, s.recall, s.f1);
    else
      std::snprintf(buf, sizeof buf, "%-40s %9s %9.4f %9.4f %9.4f\n", name.c_str(), "", s.precision,
                    s.recall, s.f1);
    out += buf;
  };
  line(winner + " [" + c.positive_class + "]", c.positive, true);
  line("  macro average", c.macro, false);
  for (const auto& [term, s] : c.per_class) line("  class " + term, s, false);

  out += "\nConfusion matrix (rows = true, columns = predicted)\n";
  std::snprintf(buf, sizeof buf, "%-10s", "");
  out += buf;
  for (const auto& t : c.confusion.term_order) {
    std::snprintf(buf, sizeof buf, " %8s", t.c_str());
    out += buf;
  }
  out += '\n';
  for (std::size_t i = 0; i < c.confusion.counts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%-10s", c.confusion.term_order[i].c_str());
    out += buf;
    for (auto v : c.confusion.counts[i]) {
      std::snprintf(buf, sizeof buf, " %8zu", v);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace readiness
