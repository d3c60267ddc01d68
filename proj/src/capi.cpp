#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "readiness/config.hpp"
#include "readiness/dataio.hpp"
#include "readiness/error.hpp"
#include "readiness/evaluation.hpp"
#include "readiness/fuzzy.hpp"
#include "readiness/readiness.h"
#include "readiness/regression.hpp"
#include "readiness/stats.hpp"
#include "readiness/text.hpp"

using namespace readiness;

struct rdn_dataset {
  Dataset value;
};

struct rdn_config {
  RunConfig value;
};

struct rdn_model {
  Model value;
};

struct rdn_partition {
  FuzzyPartition value;
};

struct rdn_response {
  SurveyResponse value;
};

struct rdn_result {
  std::vector<rdn_model> models;
  std::vector<RegressionReport> reports;
  std::optional<std::size_t> winner;
  std::optional<double> accuracy;
  std::string document;
  std::string table;
};

namespace {

struct LastError {
  std::string message;
  std::size_t row = 0;
  std::string column;
};

thread_local LastError last_error;

rdn_status fail(rdn_status status, std::string message, std::size_t row = 0,
                std::string column = {}) {
  last_error = {std::move(message), row, std::move(column)};
  return status;
}

template <class Fn>
rdn_status guarded(Fn&& fn) noexcept {
  try {
    last_error = {};
    fn();
    return RDN_OK;
  } catch (const Error& e) {
    return fail(static_cast<rdn_status>(e.code()), e.what(), e.row().value_or(0),
                e.column().value_or(std::string{}));
  } catch (const std::bad_alloc&) {
    return fail(RDN_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(RDN_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(RDN_INTERNAL_ERROR, "unknown failure");
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* duplicate(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

RunConfig dataset_config(const char* schema, const char* target) {
  RunConfig config;
  if (schema) config.set("data.schema", schema);
  if (target) config.set("data.target", target);
  return config;
}

std::vector<ModelKind> parse_kinds(const char* kinds) {
  const std::string text = kinds ? kinds : "all";
  if (text == "all") return {ModelKind::Linear, ModelKind::Svr, ModelKind::Forest};
  std::vector<ModelKind> out;
  for (const auto& part : split(text, ',')) {
    auto kind = parse_model_kind(part);
    if (!kind) throw Error(ErrorCode::InvalidArgument, "unknown model kind '" + part + "'");
    out.push_back(*kind);
  }
  return out;
}

}  // namespace

extern "C" {

const char* rdn_version(void) { return "1.0.0"; }

const char* rdn_status_name(rdn_status status) {
  if (status == RDN_INTERNAL_ERROR) return "InternalError";
  return error_code_name(static_cast<ErrorCode>(status));
}

const char* rdn_last_error(void) { return last_error.message.c_str(); }
size_t rdn_last_error_row(void) { return last_error.row; }
const char* rdn_last_error_column(void) { return last_error.column.c_str(); }
void rdn_string_free(char* text) { std::free(text); }

rdn_status rdn_dataset_parse(const char* csv_text, const char* schema, const char* target,
                             rdn_dataset** out) {
  return guarded([&] {
    require(csv_text, "csv_text");
    require(out, "out");
    const auto config = dataset_config(schema, target);
    *out = new rdn_dataset{parse_csv(csv_text, schema_for(config, csv_text))};
  });
}

rdn_status rdn_dataset_read(const char* path, const char* schema, const char* target,
                            rdn_dataset** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto config = dataset_config(schema, target);
    config.dataset_path = path;
    *out = new rdn_dataset{load_dataset(config)};
  });
}

rdn_status rdn_dataset_synthetic(size_t n, const double* coefficients, size_t k, double intercept,
                                 double noise_sd, uint64_t seed, rdn_dataset** out) {
  return guarded([&] {
    require(coefficients, "coefficients");
    require(out, "out");
    *out = new rdn_dataset{
        generate_synthetic(n, std::span<const double>(coefficients, k), intercept, noise_sd, seed)};
  });
}

void rdn_dataset_free(rdn_dataset* dataset) { delete dataset; }

size_t rdn_dataset_rows(const rdn_dataset* dataset) { return dataset ? dataset->value.size() : 0; }

size_t rdn_dataset_cols(const rdn_dataset* dataset) {
  return dataset ? dataset->value.column_labels().size() : 0;
}

const char* rdn_dataset_label(const rdn_dataset* dataset, size_t column) {
  if (!dataset || column >= dataset->value.column_labels().size()) return nullptr;
  return dataset->value.column_labels()[column].c_str();
}

rdn_status rdn_dataset_value(const rdn_dataset* dataset, size_t row, size_t column, double* out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    const auto& m = dataset->value.rows();
    if (row >= m.rows() || column >= m.cols())
      throw Error(ErrorCode::InvalidArgument, "cell index out of range");
    *out = m(row, column);
  });
}

rdn_status rdn_dataset_to_csv(const rdn_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = duplicate(to_csv(dataset->value));
  });
}

rdn_status rdn_dataset_split(const rdn_dataset* dataset, double test_fraction, uint64_t seed,
                             size_t* test_indices, size_t* n_test, size_t* train_indices,
                             size_t* n_train) {
  return guarded([&] {
    require(dataset, "dataset");
    require(n_test, "n_test");
    require(n_train, "n_train");
    const auto s = split(dataset->value, test_fraction, seed);
    *n_test = s.test_indices.size();
    *n_train = s.train_indices.size();
    if (test_indices) std::copy(s.test_indices.begin(), s.test_indices.end(), test_indices);
    if (train_indices) std::copy(s.train_indices.begin(), s.train_indices.end(), train_indices);
  });
}

rdn_status rdn_stats_describe(const rdn_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = duplicate(describe_table(describe(dataset->value)));
  });
}

rdn_status rdn_stats_correlation(const rdn_dataset* dataset, char** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    *out = duplicate(correlation_table(pearson(dataset->value)));
  });
}

rdn_status rdn_stats_target_correlation(const rdn_dataset* dataset, const char* target,
                                        char** out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    const std::string label = target ? target : dataset->value.schema().target_label();
    *out = duplicate(target_correlation_table(pearson(dataset->value), label));
  });
}

rdn_status rdn_stats_pearson(const rdn_dataset* dataset, size_t column_a, size_t column_b,
                             double* out) {
  return guarded([&] {
    require(dataset, "dataset");
    require(out, "out");
    const auto& m = dataset->value.rows();
    if (column_a >= m.cols() || column_b >= m.cols())
      throw Error(ErrorCode::InvalidArgument, "column index out of range");
    *out = pearson(m.column(column_a), m.column(column_b));
  });
}

rdn_status rdn_config_new(rdn_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rdn_config{};
  });
}

rdn_status rdn_config_load(const char* path, rdn_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rdn_config{RunConfig::load(path)};
  });
}

rdn_status rdn_config_parse(const char* text, rdn_config** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rdn_config{RunConfig::parse(text)};
  });
}

rdn_status rdn_config_set(rdn_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->value.set(key, value);
  });
}

rdn_status rdn_config_get_output_dir(const rdn_config* config, const char** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = config->value.output_dir.c_str();
  });
}

void rdn_config_free(rdn_config* config) { delete config; }

rdn_status rdn_train(const rdn_config* config, const char* kinds, rdn_result** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const auto list = parse_kinds(kinds);
    const auto dataset = load_dataset(config->value);
    auto trained = train_models(dataset, config->value, list);
    auto result = std::make_unique<rdn_result>();
    result->document = training_document(trained, config->value);
    result->table = training_table(trained);
    result->reports = trained.reports;
    for (auto& m : trained.models) result->models.push_back(rdn_model{std::move(m)});
    *out = result.release();
  });
}

rdn_status rdn_evaluate(const rdn_config* config, rdn_result** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const auto dataset = load_dataset(config->value);
    auto report = evaluate_pipeline(dataset, config->value);
    auto result = std::make_unique<rdn_result>();
    result->document = report_document(report, config->value);
    result->table = report_table(report);
    result->reports = report.reports;
    result->winner = report.winner;
    result->accuracy = report.classification.accuracy;
    for (auto& m : report.models) result->models.push_back(rdn_model{std::move(m)});
    *out = result.release();
  });
}

void rdn_result_free(rdn_result* result) { delete result; }

size_t rdn_result_model_count(const rdn_result* result) {
  return result ? result->models.size() : 0;
}

const rdn_model* rdn_result_model(const rdn_result* result, size_t index) {
  if (!result || index >= result->models.size()) return nullptr;
  return &result->models[index];
}

rdn_status rdn_result_metrics(const rdn_result* result, size_t index, rdn_regression_metrics* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    if (index >= result->reports.size()) throw Error(ErrorCode::InvalidArgument, "no such model");
    const auto& r = result->reports[index];
    *out = {r.mae, r.mse, r.rmse, r.n_test};
  });
}

rdn_status rdn_result_winner(const rdn_result* result, size_t* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    if (!result->winner) throw Error(ErrorCode::InvalidArgument, "result has no model selection");
    *out = *result->winner;
  });
}

rdn_status rdn_result_accuracy(const rdn_result* result, double* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "out");
    if (!result->accuracy) throw Error(ErrorCode::InvalidArgument, "result has no classification");
    *out = *result->accuracy;
  });
}

const char* rdn_result_document(const rdn_result* result) {
  return result ? result->document.c_str() : nullptr;
}

const char* rdn_result_table(const rdn_result* result) {
  return result ? result->table.c_str() : nullptr;
}

rdn_status rdn_model_fit(rdn_model_kind kind, const double* x, size_t rows, size_t cols,
                         const double* y, const char* const* labels, const rdn_config* config,
                         rdn_model** out) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    require(out, "out");
    if (kind < RDN_MODEL_LINEAR || kind > RDN_MODEL_FOREST)
      throw Error(ErrorCode::InvalidArgument, "unknown model kind");
    Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r)
      for (size_t c = 0; c < cols; ++c) m(r, c) = x[r * cols + c];
    std::vector<std::string> names;
    if (labels)
      for (size_t c = 0; c < cols; ++c) {
        require(labels[c], "label");
        names.emplace_back(labels[c]);
      }
    ModelParams params = config ? config->value.params : ModelParams{};
    if (config) params.seed = config->value.seed;
    *out = new rdn_model{fit_model(static_cast<ModelKind>(kind), m,
                                   std::span<const double>(y, rows), params, std::move(names))};
  });
}

rdn_status rdn_model_load(const char* document, rdn_model** out) {
  return guarded([&] {
    require(document, "document");
    require(out, "out");
    *out = new rdn_model{load_model(document)};
  });
}

rdn_status rdn_model_read(const char* path, rdn_model** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new rdn_model{load_model(read_file(path))};
  });
}

rdn_status rdn_model_save(const rdn_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = duplicate(save_model(model->value));
  });
}

rdn_status rdn_model_clone(const rdn_model* model, rdn_model** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = new rdn_model{model->value};
  });
}

void rdn_model_free(rdn_model* model) { delete model; }

rdn_model_kind rdn_model_get_kind(const rdn_model* model) {
  return model ? static_cast<rdn_model_kind>(kind_of(model->value)) : RDN_MODEL_LINEAR;
}

const char* rdn_model_kind_name(rdn_model_kind kind) {
  return model_kind_name(static_cast<ModelKind>(kind));
}

size_t rdn_model_feature_count(const rdn_model* model) {
  return model ? feature_labels(model->value).size() : 0;
}

const char* rdn_model_feature_label(const rdn_model* model, size_t index) {
  if (!model || index >= feature_labels(model->value).size()) return nullptr;
  return feature_labels(model->value)[index].c_str();
}

rdn_status rdn_model_predict(const rdn_model* model, const double* x, size_t n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    if (n > 0) require(x, "x");
    *out = predict(model->value, std::span<const double>(x, n));
  });
}

rdn_status rdn_model_predict_response(const rdn_model* model, const rdn_response* response,
                                      double* out) {
  return guarded([&] {
    require(model, "model");
    require(response, "response");
    require(out, "out");
    validate_response(response->value, SurveySchema::balance_wheel(), false);
    const auto x = feature_vector(response->value, feature_labels(model->value));
    *out = predict(model->value, x);
  });
}

rdn_status rdn_response_parse_csv(const char* text, rdn_response** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rdn_response{parse_response_csv(text)};
  });
}

rdn_status rdn_response_parse_pairs(const char* text, rdn_response** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new rdn_response{parse_response_pairs(text)};
  });
}

void rdn_response_free(rdn_response* response) { delete response; }

rdn_status rdn_partition_default(rdn_partition** out) {
  return guarded([&] {
    require(out, "out");
    *out = new rdn_partition{default_partition()};
  });
}

rdn_status rdn_partition_from_config(const rdn_config* config, rdn_partition** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = new rdn_partition{config->value.partition()};
  });
}

rdn_status rdn_partition_create(const char* terms, double lo, double hi, int require_ruspini,
                                rdn_partition** out) {
  return guarded([&] {
    require(terms, "terms");
    require(out, "out");
    *out = new rdn_partition{
        FuzzyPartition("Career Readiness", parse_terms(terms), {lo, hi}, require_ruspini != 0)};
  });
}

void rdn_partition_free(rdn_partition* partition) { delete partition; }

size_t rdn_partition_term_count(const rdn_partition* partition) {
  return partition ? partition->value.terms().size() : 0;
}

const char* rdn_partition_term_label(const rdn_partition* partition, size_t index) {
  if (!partition || index >= partition->value.terms().size()) return nullptr;
  return partition->value.terms()[index].label.c_str();
}

double rdn_partition_membership(const rdn_partition* partition, size_t index, double x) {
  if (!partition || index >= partition->value.terms().size())
    return std::numeric_limits<double>::quiet_NaN();
  return membership(partition->value.terms()[index].shape, x);
}

rdn_status rdn_fuzzify(const rdn_partition* partition, double score, rdn_assessment* out,
                       double* memberships, size_t capacity) {
  return guarded([&] {
    require(partition, "partition");
    require(out, "out");
    const auto a = fuzzify(partition->value, score);
    *out = {score, a.input_score, a.chosen_degree, a.chosen_index};
    if (memberships)
      for (size_t i = 0; i < a.memberships.size() && i < capacity; ++i)
        memberships[i] = a.memberships[i].second;
  });
}

rdn_status rdn_alpha_cut(const rdn_partition* partition, const char* term, double alpha,
                         double* lo, double* hi) {
  return guarded([&] {
    require(partition, "partition");
    require(term, "term");
    require(lo, "lo");
    require(hi, "hi");
    const auto cut = alpha_cut(partition->value, term, alpha);
    *lo = cut.lo;
    *hi = cut.hi;
  });
}

rdn_status rdn_compute_metrics(const double* y_true, const double* y_pred, size_t n,
                                  rdn_regression_metrics* out) {
  return guarded([&] {
    require(out, "out");
    if (n > 0) {
      require(y_true, "y_true");
      require(y_pred, "y_pred");
    }
    const auto r = regression_metrics(std::span<const double>(y_true, n),
                                      std::span<const double>(y_pred, n));
    *out = {r.mae, r.mse, r.rmse, r.n_test};
  });
}

}  // extern "C"
