#include "doctest.h"
#include "helpers.hpp"
#include "readiness/config.hpp"
#include "readiness/text.hpp"

using namespace readiness;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.target_label == "Opportunities");
  CHECK(c.test_fraction == 0.2);
  CHECK(c.threshold() == 0.3);
  CHECK(c.positive_class == "High");
  CHECK(c.partition().is_ruspini());
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("a full configuration file") {
  const auto c = RunConfig::parse(R"(# evaluation run
[data]
path = cohort.csv
schema = synthetic
test_fraction = 0.25
seed = 7

[features]
labels = X1, X2

[svr]
c = 4
epsilon = 0.2
kernel = linear
gamma = 0.5

[forest]
n_trees = 30
max_depth = 6
bootstrap = false
max_features = 1

[linear]
ridge_lambda = 0.1

[fuzzy]
domain = 1, 10
term = Poor, 1, 1, 4
term = Medium, 1, 4, 10
term = High, 4, 10, 10
require_ruspini = true

[evaluation]
positive_class = Medium

[output]
dir = out
)");
  CHECK(c.dataset_path == "cohort.csv");
  CHECK(c.schema == "synthetic");
  CHECK(c.test_fraction == 0.25);
  CHECK(c.seed == 7);
  CHECK(c.feature_labels == std::vector<std::string>{"X1", "X2"});
  CHECK(c.params.svr.c == 4);
  CHECK(c.params.svr.kernel == KernelKind::Linear);
  CHECK(c.params.svr.gamma == 0.5);
  CHECK(c.params.forest.n_trees == 30);
  CHECK(c.params.forest.max_depth == 6u);
  CHECK_FALSE(c.params.forest.bootstrap);
  CHECK(c.params.linear.ridge_lambda == 0.1);
  CHECK(c.partition().labels() == std::vector<std::string>{"Low", "Medium", "High"});
  CHECK(c.positive_class == "Medium");
  CHECK(c.output_dir == "out");
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("overrides replace file values") {
  auto c = RunConfig::parse("[features]\nthreshold = 0.4\n");
  CHECK(c.threshold() == 0.4);
  c.set("features.labels", "A,B");
  CHECK_FALSE(c.correlation_threshold);
  c.set("features.threshold", "0.2");
  CHECK(c.feature_labels.empty());
  c.set("svr.gamma", "scale");
  CHECK_FALSE(c.params.svr.gamma);
  c.set("forest.max_depth", "none");
  CHECK_FALSE(c.params.forest.max_depth);
  c.set("fuzzy.partition", "Low:1,1,4;Medium:1,4,10;High:4,10,10");
  CHECK(c.partition().terms()[1].shape.b == 4);
}

TEST_CASE("configuration errors") {
  CHECK(code_of([] { RunConfig::parse("[features]\nlabels = A\nthreshold = 0.3\n"); }) ==
        ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::parse("[data]\nseed = -3\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::parse("[data]\ncolour = blue\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::parse("[svr]\nkernel = poly\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::parse("[forest]\nbootstrap = maybe\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::parse("no section here\n"); }) == ErrorCode::MalformedDocument);
  CHECK(code_of([] { RunConfig::parse("[fuzzy]\nterm = Low, 1, 2\n"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { RunConfig::load("/nonexistent/run.ini"); }) == ErrorCode::ConfigError);

  try {
    RunConfig::parse("[data]\n\nseed = x\n");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  RunConfig c;
  c.test_fraction = 1.0;
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = {};
  c.feature_labels = {"Opportunities"};
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
  c = {};
  c.positive_class = "Excellent";
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::UnknownTerm);
}

TEST_CASE("a malformed partition in a file is a partition error") {
  const auto c = RunConfig::parse("[fuzzy]\nterm = Low, 1, 1, 5.5\nterm = Medium, 6, 5.5, 10\nterm = High, 5.5, 10, 10\n");
  CHECK(code_of([&] { c.partition(); }) == ErrorCode::InvalidPartition);
  CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidPartition);
}

TEST_CASE("dataset loading through the configuration") {
  RunConfig c;
  CHECK(code_of([&] { load_dataset(c); }) == ErrorCode::ConfigError);
  c.dataset_path = data_path("survey_47.csv");
  CHECK(load_dataset(c).size() == 47);
  c.target_label = "ChangeLife";
  CHECK(load_dataset(c).column_labels()[load_dataset(c).target_index()] == "ChangeLife");
  c.target_label = "Happiness";
  CHECK(code_of([&] { load_dataset(c); }) == ErrorCode::UnknownLabel);
  c = {};
  c.dataset_path = data_path("does_not_exist.csv");
  CHECK(code_of([&] { load_dataset(c); }) == ErrorCode::Io);

  c = {};
  c.schema = "synthetic";
  const auto schema = schema_for(c, "X1,Opportunities,X2\n1,2,3\n");
  CHECK(schema.fields().size() == 3);
  CHECK(code_of([&] { schema_for(c, "X1,X2\n1,2\n"); }) == ErrorCode::MissingColumn);
}

TEST_CASE("structured documents") {
  Document d;
  d.section("a");
  d.add("x", 0.1);
  d.add("v", std::vector<double>{1.5, -2});
  d.section("a");
  d.add("x", "second");
  const auto back = Document::parse(d.str());
  CHECK(back.find("a", "x")->value == "0.10000000000000001");
  CHECK(back.find_all("a", "x").size() == 2);
  CHECK(back.find_all("a", "x")[1]->block != back.find_all("a", "x")[0]->block);
  CHECK(back.find("a", "v")->value == "1.5 -2");
  CHECK(code_of([] { Document::parse("[open\n"); }) == ErrorCode::MalformedDocument);
  CHECK(code_of([] { Document::parse("[s]\njust words\n"); }) == ErrorCode::MalformedDocument);
}

TEST_CASE("number parsing is strict") {
  CHECK(parse_double(" 2.5 ") == 2.5);
  CHECK_FALSE(parse_double("2.5x"));
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("nan"));
  CHECK_FALSE(parse_double("inf"));
  CHECK(parse_unsigned("42") == 42u);
  CHECK_FALSE(parse_unsigned("-1"));
  CHECK(format_exact(0.1) == "0.10000000000000001");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(split_csv_record("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
}
