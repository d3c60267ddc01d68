/*
 * readiness C API.
 *
 * Every fallible call returns an rdn_status; on failure rdn_last_error()
 * describes the problem and rdn_last_error_row()/rdn_last_error_column()
 * locate it when the failure concerns a cell of the input data. Objects are
 * opaque handles released by the matching *_free function. Strings returned
 * through `char** out` are owned by the caller and released with
 * rdn_string_free(); `const char*` returns are borrowed from their handle.
 */
#ifndef READINESS_H
#define READINESS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(READINESS_BUILDING)
#    define RDN_API __declspec(dllexport)
#  else
#    define RDN_API __declspec(dllimport)
#  endif
#else
#  define RDN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rdn_status {
  RDN_OK = 0,
  RDN_INVALID_ARGUMENT = 1,
  RDN_CONFIG_ERROR = 2,
  RDN_IO_ERROR = 3,
  RDN_EMPTY_FILE = 10,
  RDN_MISSING_COLUMN = 11,
  RDN_OUT_OF_RANGE = 12,
  RDN_NOT_NUMERIC = 13,
  RDN_MISSING_VALUE = 14,
  RDN_DEGENERATE_SPLIT = 15,
  RDN_EMPTY_COLUMN = 16,
  RDN_UNKNOWN_LABEL = 20,
  RDN_NO_FEATURES_SELECTED = 21,
  RDN_DIMENSION_MISMATCH = 30,
  RDN_MISSING_FEATURE = 31,
  RDN_LENGTH_MISMATCH = 32,
  RDN_EMPTY = 33,
  RDN_UNKNOWN_VERSION = 40,
  RDN_MALFORMED_DOCUMENT = 41,
  RDN_UNKNOWN_TERM = 50,
  RDN_ALPHA_OUT_OF_RANGE = 51,
  RDN_INVALID_PARTITION = 52,
  RDN_RANK_DEFICIENT = 60,
  RDN_NOT_CONVERGED = 61,
  RDN_INTERNAL_ERROR = 99
} rdn_status;

typedef enum rdn_model_kind {
  RDN_MODEL_LINEAR = 0,
  RDN_MODEL_SVR = 1,
  RDN_MODEL_FOREST = 2
} rdn_model_kind;

typedef struct rdn_dataset rdn_dataset;
typedef struct rdn_config rdn_config;
typedef struct rdn_model rdn_model;
typedef struct rdn_partition rdn_partition;
typedef struct rdn_response rdn_response;
typedef struct rdn_result rdn_result;

typedef struct rdn_regression_metrics {
  double mae;
  double mse;
  double rmse;
  size_t n_test;
} rdn_regression_metrics;

typedef struct rdn_assessment {
  double raw_score;   /* value passed in */
  double input_score; /* after clamping to the partition domain */
  double degree;      /* membership of the chosen term */
  size_t term_index;  /* chosen term, partition order */
} rdn_assessment;

/* ---- library ---------------------------------------------------------- */

RDN_API const char* rdn_version(void);
RDN_API const char* rdn_status_name(rdn_status status);
RDN_API const char* rdn_last_error(void);
/* 1-based data row of the last failure, 0 when not row-specific. */
RDN_API size_t rdn_last_error_row(void);
/* Column label of the last failure, "" when not column-specific. */
RDN_API const char* rdn_last_error_column(void);
RDN_API void rdn_string_free(char* text);

/* ---- datasets --------------------------------------------------------- */

/* schema: "balance_wheel" (default when NULL) or "synthetic";
 * target: NULL for "Opportunities". */
RDN_API rdn_status rdn_dataset_parse(const char* csv_text, const char* schema, const char* target,
                                     rdn_dataset** out);
RDN_API rdn_status rdn_dataset_read(const char* path, const char* schema, const char* target,
                                    rdn_dataset** out);
/* Features X1..Xk uniform on [1, 10]; Opportunities = intercept + b.x + noise. */
RDN_API rdn_status rdn_dataset_synthetic(size_t n, const double* coefficients, size_t k,
                                         double intercept, double noise_sd, uint64_t seed,
                                         rdn_dataset** out);
RDN_API void rdn_dataset_free(rdn_dataset* dataset);
RDN_API size_t rdn_dataset_rows(const rdn_dataset* dataset);
RDN_API size_t rdn_dataset_cols(const rdn_dataset* dataset);
RDN_API const char* rdn_dataset_label(const rdn_dataset* dataset, size_t column);
/* Missing optional cells read as NaN. */
RDN_API rdn_status rdn_dataset_value(const rdn_dataset* dataset, size_t row, size_t column,
                                     double* out);
RDN_API rdn_status rdn_dataset_to_csv(const rdn_dataset* dataset, char** out);
RDN_API rdn_status rdn_dataset_split(const rdn_dataset* dataset, double test_fraction,
                                     uint64_t seed, size_t* test_indices, size_t* n_test,
                                     size_t* train_indices, size_t* n_train);

/* ---- statistics ------------------------------------------------------- */

/* label,count,mean,std,min,25%,50%,75%,max */
RDN_API rdn_status rdn_stats_describe(const rdn_dataset* dataset, char** out);
RDN_API rdn_status rdn_stats_correlation(const rdn_dataset* dataset, char** out);
/* label,r against the target, sorted by descending r. */
RDN_API rdn_status rdn_stats_target_correlation(const rdn_dataset* dataset, const char* target,
                                                char** out);
/* Pearson coefficient of two columns; NaN when undefined. */
RDN_API rdn_status rdn_stats_pearson(const rdn_dataset* dataset, size_t column_a, size_t column_b,
                                     double* out);

/* ---- run configuration ------------------------------------------------ */

RDN_API rdn_status rdn_config_new(rdn_config** out);
RDN_API rdn_status rdn_config_load(const char* path, rdn_config** out);
RDN_API rdn_status rdn_config_parse(const char* text, rdn_config** out);
/* key is "section.key", e.g. "data.seed" or "fuzzy.partition". */
RDN_API rdn_status rdn_config_set(rdn_config* config, const char* key, const char* value);
RDN_API rdn_status rdn_config_get_output_dir(const rdn_config* config, const char** out);
RDN_API void rdn_config_free(rdn_config* config);

/* ---- train / evaluate ------------------------------------------------- */

/* kinds: "linear", "svr", "forest" or "all". */
RDN_API rdn_status rdn_train(const rdn_config* config, const char* kinds, rdn_result** out);
RDN_API rdn_status rdn_evaluate(const rdn_config* config, rdn_result** out);
RDN_API void rdn_result_free(rdn_result* result);
RDN_API size_t rdn_result_model_count(const rdn_result* result);
/* Borrowed; valid until rdn_result_free. */
RDN_API const rdn_model* rdn_result_model(const rdn_result* result, size_t index);
RDN_API rdn_status rdn_result_metrics(const rdn_result* result, size_t index,
                                      rdn_regression_metrics* out);
/* Index of the selected model (evaluate only). */
RDN_API rdn_status rdn_result_winner(const rdn_result* result, size_t* out);
/* Fuzzified-label accuracy (evaluate only). */
RDN_API rdn_status rdn_result_accuracy(const rdn_result* result, double* out);
/* Structured report document and human-readable tables, borrowed. */
RDN_API const char* rdn_result_document(const rdn_result* result);
RDN_API const char* rdn_result_table(const rdn_result* result);

/* ---- models ----------------------------------------------------------- */

/* Row-major x (rows x cols); labels may be NULL. Hyperparameters and the
 * seed come from config (NULL for defaults). */
RDN_API rdn_status rdn_model_fit(rdn_model_kind kind, const double* x, size_t rows, size_t cols,
                                 const double* y, const char* const* labels,
                                 const rdn_config* config, rdn_model** out);
RDN_API rdn_status rdn_model_load(const char* document, rdn_model** out);
RDN_API rdn_status rdn_model_read(const char* path, rdn_model** out);
RDN_API rdn_status rdn_model_save(const rdn_model* model, char** out);
RDN_API rdn_status rdn_model_clone(const rdn_model* model, rdn_model** out);
RDN_API void rdn_model_free(rdn_model* model);
RDN_API rdn_model_kind rdn_model_get_kind(const rdn_model* model);
RDN_API const char* rdn_model_kind_name(rdn_model_kind kind);
RDN_API size_t rdn_model_feature_count(const rdn_model* model);
RDN_API const char* rdn_model_feature_label(const rdn_model* model, size_t index);
/* Raw, unclipped prediction. */
RDN_API rdn_status rdn_model_predict(const rdn_model* model, const double* x, size_t n,
                                     double* out);
RDN_API rdn_status rdn_model_predict_response(const rdn_model* model,
                                              const rdn_response* response, double* out);

/* ---- survey responses ------------------------------------------------- */

/* Header line plus one data line. */
RDN_API rdn_status rdn_response_parse_csv(const char* text, rdn_response** out);
/* "Label=score,Label=score". */
RDN_API rdn_status rdn_response_parse_pairs(const char* text, rdn_response** out);
RDN_API void rdn_response_free(rdn_response* response);

/* ---- fuzzy ------------------------------------------------------------ */

RDN_API rdn_status rdn_partition_default(rdn_partition** out);
RDN_API rdn_status rdn_partition_from_config(const rdn_config* config, rdn_partition** out);
/* terms: "Low:1,1,5.5;Medium:1,5.5,10;High:5.5,10,10". */
RDN_API rdn_status rdn_partition_create(const char* terms, double lo, double hi,
                                        int require_ruspini, rdn_partition** out);
RDN_API void rdn_partition_free(rdn_partition* partition);
RDN_API size_t rdn_partition_term_count(const rdn_partition* partition);
RDN_API const char* rdn_partition_term_label(const rdn_partition* partition, size_t index);
RDN_API double rdn_partition_membership(const rdn_partition* partition, size_t index, double x);
/* memberships (optional) receives one degree per term, up to capacity. */
RDN_API rdn_status rdn_fuzzify(const rdn_partition* partition, double score, rdn_assessment* out,
                               double* memberships, size_t capacity);
RDN_API rdn_status rdn_alpha_cut(const rdn_partition* partition, const char* term, double alpha,
                                 double* lo, double* hi);

/* ---- metrics ---------------------------------------------------------- */

RDN_API rdn_status rdn_compute_metrics(const double* y_true, const double* y_pred, size_t n,
                                       rdn_regression_metrics* out);

#ifdef __cplusplus
}
#endif

#endif /* READINESS_H */
