#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "readiness/readiness.h"

#ifndef READINESS_TEST_DATA
#define READINESS_TEST_DATA "tests/data"
#endif

namespace {

std::string data(const char* name) { return std::string(READINESS_TEST_DATA) + "/" + name; }

std::string take(char* s) {
  std::string out = s ? s : "";
  rdn_string_free(s);
  return out;
}

// y = x0 exactly, four features.
void exact_linear(std::vector<double>& x, std::vector<double>& y, std::size_t n) {
  x.assign(n * 4, 0.0);
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < 4; ++j) x[i * 4 + j] = 1.0 + static_cast<double>((i * (j + 3) + j * 7) % 10);
    y[i] = x[i * 4];
  }
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(rdn_version()) == "1.0.0");
  CHECK(std::string(rdn_status_name(RDN_MISSING_COLUMN)) == "MissingColumn");
  CHECK(std::string(rdn_status_name(RDN_OK)) == "Ok");
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  rdn_dataset* d = nullptr;
  CHECK(rdn_dataset_parse(nullptr, nullptr, nullptr, &d) == RDN_INVALID_ARGUMENT);
  CHECK(rdn_dataset_read(data("survey_47.csv").c_str(), nullptr, nullptr, nullptr) ==
        RDN_INVALID_ARGUMENT);
  CHECK(d == nullptr);
  rdn_dataset_free(nullptr);
  rdn_model_free(nullptr);
  rdn_result_free(nullptr);
  rdn_string_free(nullptr);
}

TEST_CASE("reading the survey fixture") {
  rdn_dataset* d = nullptr;
  REQUIRE(rdn_dataset_read(data("survey_47.csv").c_str(), nullptr, nullptr, &d) == RDN_OK);
  CHECK(rdn_dataset_rows(d) == 47);
  CHECK(rdn_dataset_cols(d) == 15);

  char* text = nullptr;
  REQUIRE(rdn_stats_describe(d, &text) == RDN_OK);
  const auto table = take(text);
  CHECK(table.rfind("label,count,mean,std,min,25%,50%,75%,max\n", 0) == 0);

  REQUIRE(rdn_stats_target_correlation(d, nullptr, &text) == RDN_OK);
  CHECK(take(text).rfind("label,r\n", 0) == 0);

  double r = 0;
  REQUIRE(rdn_stats_pearson(d, 0, 0, &r) == RDN_OK);
  CHECK(r == doctest::Approx(1.0));
  CHECK(rdn_stats_pearson(d, 0, 99, &r) != RDN_OK);

  std::vector<std::size_t> test(47), train(47);
  std::size_t nt = 0, nr = 0;
  REQUIRE(rdn_dataset_split(d, 0.2, 42, test.data(), &nt, train.data(), &nr) == RDN_OK);
  CHECK(nt == 9);
  CHECK(nr == 38);
  rdn_dataset_free(d);
}

TEST_CASE("data errors carry row and column") {
  rdn_dataset* d = nullptr;
  CHECK(rdn_dataset_read(data("survey_47_out_of_range.csv").c_str(), nullptr, nullptr, &d) ==
        RDN_OUT_OF_RANGE);
  CHECK(d == nullptr);
  CHECK(rdn_last_error_row() > 0);
  CHECK(std::string(rdn_last_error_column()) != "");
  CHECK(std::string(rdn_last_error()).find("OutOfRange") != std::string::npos);

  CHECK(rdn_dataset_parse("", nullptr, nullptr, &d) == RDN_EMPTY_FILE);
  CHECK(rdn_dataset_read("/nonexistent.csv", nullptr, nullptr, &d) == RDN_IO_ERROR);
  CHECK(rdn_dataset_read(data("survey_47_missing_column.csv").c_str(), nullptr, nullptr, &d) ==
        RDN_MISSING_COLUMN);
}

TEST_CASE("fitting, saving and reloading a linear model") {
  std::vector<double> x, y;
  exact_linear(x, y, 30);
  const char* labels[] = {"A", "B", "C", "D"};
  rdn_model* m = nullptr;
  REQUIRE(rdn_model_fit(RDN_MODEL_LINEAR, x.data(), 30, 4, y.data(), labels, nullptr, &m) == RDN_OK);
  CHECK(rdn_model_get_kind(m) == RDN_MODEL_LINEAR);
  CHECK(rdn_model_feature_count(m) == 4);
  CHECK(std::string(rdn_model_feature_label(m, 2)) == "C");

  const double probe[] = {9, 3, 3, 3};
  double pred = 0;
  REQUIRE(rdn_model_predict(m, probe, 4, &pred) == RDN_OK);
  CHECK(pred == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(rdn_model_predict(m, probe, 3, &pred) == RDN_DIMENSION_MISMATCH);

  char* doc = nullptr;
  REQUIRE(rdn_model_save(m, &doc) == RDN_OK);
  rdn_model* back = nullptr;
  REQUIRE(rdn_model_load(doc, &back) == RDN_OK);
  double again = 0;
  REQUIRE(rdn_model_predict(back, probe, 4, &again) == RDN_OK);
  CHECK(again == pred);
  char* doc2 = nullptr;
  REQUIRE(rdn_model_save(back, &doc2) == RDN_OK);
  CHECK(take(doc) == take(doc2));

  rdn_response* resp = nullptr;
  REQUIRE(rdn_response_parse_pairs("A=9,B=3,C=3,D=3,Extra=1", &resp) == RDN_OK);
  REQUIRE(rdn_model_predict_response(back, resp, &again) == RDN_OK);
  CHECK(again == doctest::Approx(9.0).epsilon(1e-9));
  rdn_response_free(resp);
  REQUIRE(rdn_response_parse_pairs("A=9,B=3", &resp) == RDN_OK);
  CHECK(rdn_model_predict_response(back, resp, &again) == RDN_MISSING_FEATURE);
  rdn_response_free(resp);

  CHECK(rdn_model_load("[model]\nversion = 99\n", &back) != RDN_OK);
  rdn_model_free(back);
  rdn_model_free(m);
}

TEST_CASE("every model kind fits through the C API") {
  std::vector<double> x, y;
  exact_linear(x, y, 40);
  rdn_config* c = nullptr;
  REQUIRE(rdn_config_new(&c) == RDN_OK);
  REQUIRE(rdn_config_set(c, "forest.n_trees", "10") == RDN_OK);
  for (auto kind : {RDN_MODEL_LINEAR, RDN_MODEL_SVR, RDN_MODEL_FOREST}) {
    rdn_model* m = nullptr;
    REQUIRE(rdn_model_fit(kind, x.data(), 40, 4, y.data(), nullptr, c, &m) == RDN_OK);
    CHECK(rdn_model_get_kind(m) == kind);
    double p = 0;
    CHECK(rdn_model_predict(m, x.data(), 4, &p) == RDN_OK);
    CHECK(std::isfinite(p));
    rdn_model* copy = nullptr;
    REQUIRE(rdn_model_clone(m, &copy) == RDN_OK);
    double q = 0;
    CHECK(rdn_model_predict(copy, x.data(), 4, &q) == RDN_OK);
    CHECK(p == q);
    rdn_model_free(copy);
    rdn_model_free(m);
  }
  CHECK(rdn_config_set(c, "svr.kernel", "poly") == RDN_CONFIG_ERROR);
  CHECK(rdn_config_set(c, "nosuch.key", "1") == RDN_CONFIG_ERROR);
  rdn_config_free(c);
}

TEST_CASE("fuzzy assessment") {
  rdn_partition* p = nullptr;
  REQUIRE(rdn_partition_default(&p) == RDN_OK);
  CHECK(rdn_partition_term_count(p) == 3);
  CHECK(std::string(rdn_partition_term_label(p, 0)) == "Low");

  rdn_assessment a{};
  double mu[3];
  REQUIRE(rdn_fuzzify(p, 9.0, &a, mu, 3) == RDN_OK);
  CHECK(a.term_index == 2);
  CHECK(a.degree == doctest::Approx(3.5 / 4.5));
  CHECK(mu[0] + mu[1] + mu[2] == doctest::Approx(1.0));

  REQUIRE(rdn_fuzzify(p, 0.4, &a, nullptr, 0) == RDN_OK);
  CHECK(a.raw_score == 0.4);
  CHECK(a.input_score == 1.0);
  CHECK(a.term_index == 0);

  double lo = 0, hi = 0;
  REQUIRE(rdn_alpha_cut(p, "Medium", 0.5, &lo, &hi) == RDN_OK);
  CHECK(lo == 3.25);
  CHECK(hi == 7.75);
  CHECK(rdn_alpha_cut(p, "Medium", 0.0, &lo, &hi) == RDN_ALPHA_OUT_OF_RANGE);
  CHECK(rdn_alpha_cut(p, "Great", 0.5, &lo, &hi) == RDN_UNKNOWN_TERM);
  rdn_partition_free(p);

  CHECK(rdn_partition_create("Low:1,1,4;High:5,10,10", 1, 10, 0, &p) == RDN_INVALID_PARTITION);
  REQUIRE(rdn_partition_create("Low:1,1,4;Medium:1,4,10;High:4,10,10", 1, 10, 1, &p) == RDN_OK);
  REQUIRE(rdn_fuzzify(p, 7.01, &a, nullptr, 0) == RDN_OK);
  CHECK(a.term_index == 2);
  rdn_partition_free(p);
}

TEST_CASE("metrics") {
  const double t[] = {1, 2}, q[] = {2, 4};
  rdn_regression_metrics m{};
  REQUIRE(rdn_compute_metrics(t, q, 2, &m) == RDN_OK);
  CHECK(m.mae == 1.5);
  CHECK(m.mse == 2.5);
  CHECK(m.n_test == 2);
  CHECK(rdn_compute_metrics(t, q, 0, &m) == RDN_EMPTY);
}

TEST_CASE("evaluating a synthetic cohort end to end") {
  const double b[] = {0.3, 0.2, 0.25, 0.15};
  rdn_dataset* d = nullptr;
  REQUIRE(rdn_dataset_synthetic(100, b, 4, 0.5, 0.0, 11, &d) == RDN_OK);
  char* csv = nullptr;
  REQUIRE(rdn_dataset_to_csv(d, &csv) == RDN_OK);
  const std::string text = take(csv);
  CHECK(text.rfind("X1,X2,X3,X4,Opportunities\n", 0) == 0);
  rdn_dataset_free(d);

  const std::string path = "capi_synth.csv";
  FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f);
  std::fputs(text.c_str(), f);
  std::fclose(f);

  rdn_config* c = nullptr;
  REQUIRE(rdn_config_new(&c) == RDN_OK);
  REQUIRE(rdn_config_set(c, "data.path", path.c_str()) == RDN_OK);
  REQUIRE(rdn_config_set(c, "data.schema", "synthetic") == RDN_OK);
  REQUIRE(rdn_config_set(c, "features.labels", "X1,X2,X3,X4") == RDN_OK);
  REQUIRE(rdn_config_set(c, "forest.n_trees", "15") == RDN_OK);

  rdn_result* r = nullptr;
  REQUIRE(rdn_evaluate(c, &r) == RDN_OK);
  CHECK(rdn_result_model_count(r) == 3);
  std::size_t w = 9;
  REQUIRE(rdn_result_winner(r, &w) == RDN_OK);
  CHECK(rdn_model_get_kind(rdn_result_model(r, w)) == RDN_MODEL_LINEAR);
  double acc = 0;
  REQUIRE(rdn_result_accuracy(r, &acc) == RDN_OK);
  CHECK(acc == 1.0);
  rdn_regression_metrics m{};
  REQUIRE(rdn_result_metrics(r, 0, &m) == RDN_OK);
  CHECK(m.mae < 1e-9);
  CHECK(std::string(rdn_result_document(r)).find("[regression.linear]") != std::string::npos);

  rdn_result* again = nullptr;
  REQUIRE(rdn_evaluate(c, &again) == RDN_OK);
  CHECK(std::string(rdn_result_document(r)) == rdn_result_document(again));
  rdn_result_free(again);
  rdn_result_free(r);

  rdn_result* tr = nullptr;
  REQUIRE(rdn_train(c, "svr", &tr) == RDN_OK);
  CHECK(rdn_result_model_count(tr) == 1);
  CHECK(rdn_result_winner(tr, &w) != RDN_OK);
  rdn_result_free(tr);
  CHECK(rdn_train(c, "boosting", &tr) != RDN_OK);
  rdn_config_free(c);
  std::remove(path.c_str());
}
