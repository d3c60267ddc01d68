#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef READINESS_CLI
#define READINESS_CLI "readiness"
#endif
#ifndef READINESS_TEST_DATA
#define READINESS_TEST_DATA "tests/data"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;  // stdout and stderr together
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + READINESS_CLI + "\" " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(READINESS_TEST_DATA) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

long lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("readiness_cli_" + std::to_string(getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("usage") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("--help").code == 0);
  const auto v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out.find("1.0.0") != std::string::npos);
  CHECK(run("fuzzify").code == 1);
}

TEST_CASE("stats and corr") {
  const auto s = run("stats " + data("survey_47.csv"));
  REQUIRE(s.code == 0);
  CHECK(s.out.rfind("label,count,mean,std,min,25%,50%,75%,max\nLearningRate,47,", 0) == 0);

  const auto sorted = run("corr " + data("survey_47.csv") + " --sorted");
  REQUIRE(sorted.code == 0);
  CHECK(sorted.out.rfind("label,r\nComfortZone,", 0) == 0);
  CHECK(lines(sorted.out) == 15);  // header + 14 other columns

  const auto missing = run("stats " + data("survey_47_missing_column.csv"));
  CHECK(missing.code == 2);
  CHECK(missing.out.find("MissingColumn") != std::string::npos);

  const auto none = run("stats /nonexistent/cohort.csv");
  CHECK(none.code == 2);
  CHECK(none.out.find("Io") != std::string::npos);

  const auto bad = run("stats " + data("survey_47_not_numeric.csv"));
  CHECK(bad.code == 2);
  CHECK(bad.out.find("row ") != std::string::npos);
  CHECK(bad.out.find("column ") != std::string::npos);
}

TEST_CASE("an empty file") {
  Scratch tmp;
  std::ofstream(tmp / "empty.csv").close();
  const auto r = run("stats " + (tmp / "empty.csv"));
  CHECK(r.code == 2);
  CHECK(r.out.find("EmptyFile") != std::string::npos);
}

TEST_CASE("fuzzify") {
  const auto r = run("fuzzify --score 9");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("term: High\n") != std::string::npos);
  CHECK(r.out.find("degree: 0.777778\n") != std::string::npos);
  CHECK(r.out.find("membership.Medium: 0.222222\n") != std::string::npos);

  const auto tie = run("fuzzify --score 7.75");
  CHECK(tie.out.find("term: Medium\n") != std::string::npos);

  const auto clamp = run("fuzzify --score 0.4");
  CHECK(clamp.out.find("clamped_score: 1\n") != std::string::npos);
  CHECK(clamp.out.find("term: Low\n") != std::string::npos);

  const auto gap = run("fuzzify --score 5 --partition \"Low:1,1,4;High:5,10,10\"");
  CHECK(gap.code == 1);
  CHECK(gap.out.find("InvalidPartition") != std::string::npos);

  const auto shifted = run("fuzzify --score 7.01 --partition \"Low:1,1,4;Medium:1,4,10;High:4,10,10\"");
  CHECK(shifted.code == 0);
  CHECK(shifted.out.find("term: High\n") != std::string::npos);
}

TEST_CASE("synth, train and predict") {
  Scratch tmp;
  REQUIRE(run("synth -n 470 --coefficients 0.2 0.2 0.2 0.2 --intercept 0.5 --noise 1 --seed 3 -o " +
              (tmp / "a.csv")).code == 0);
  const auto a = slurp(tmp / "a.csv");
  CHECK(lines(a) == 471);
  CHECK(a.rfind("X1,X2,X3,X4,Opportunities\n", 0) == 0);
  CHECK(run("synth -n 470 --coefficients 0.2 0.2 0.2 0.2 --intercept 0.5 --noise 1 --seed 3").out == a);

  // Opportunities = X1 exactly, so the fitted plane is beta = (1, 0, 0, 0).
  REQUIRE(run("synth -n 60 --coefficients 1 0 0 0 --intercept 0 --noise 0 --seed 2 -o " +
              (tmp / "exact.csv")).code == 0);
  const auto t = run("train " + (tmp / "exact.csv") +
                     " --schema synthetic --features X1,X2,X3,X4 -m linear -o " + (tmp / "lin"));
  REQUIRE(t.code == 0);
  CHECK(fs::exists(tmp.dir / "lin" / "linear.model"));
  CHECK(fs::exists(tmp.dir / "lin" / "train_report.txt"));
  CHECK_FALSE(fs::exists(tmp.dir / "lin" / "svr.model"));

  const auto p = run("predict " + (tmp / "lin/linear.model") + " --scores X1=9,X2=1,X3=1,X4=1");
  REQUIRE(p.code == 0);
  CHECK(p.out.find("model: linear\n") != std::string::npos);
  CHECK(p.out.find("raw_prediction: 9\n") != std::string::npos);
  CHECK(p.out.find("term: High\n") != std::string::npos);
  CHECK(p.out.find("degree: 0.777778\n") != std::string::npos);

  std::ofstream(tmp / "resp.csv") << "X1,X2,X3,X4\n2.5,2,2,2\n";
  const auto q = run("predict " + (tmp / "lin/linear.model") + " --response " + (tmp / "resp.csv"));
  REQUIRE(q.code == 0);
  CHECK(q.out.find("term: Low\n") != std::string::npos);

  const auto short_ = run("predict " + (tmp / "lin/linear.model") + " --scores X1=9");
  CHECK(short_.code == 2);
  CHECK(short_.out.find("MissingFeature") != std::string::npos);

  const auto all = run("train " + (tmp / "exact.csv") + " --schema synthetic --features X1,X2,X3,X4 -o " +
                       (tmp / "all"));
  REQUIRE(all.code == 0);
  for (const char* f : {"linear.model", "svr.model", "forest.model"}) CHECK(fs::exists(tmp.dir / "all" / f));
}

TEST_CASE("evaluate is deterministic and honours overrides") {
  Scratch tmp;
  REQUIRE(run("synth -n 120 --coefficients 1 0.5 --intercept 1 --noise 0.5 --seed 9 -o " +
              (tmp / "c.csv")).code == 0);
  const std::string base = "evaluate " + (tmp / "c.csv") + " --schema synthetic --threshold 0.1 --seed 5";
  const auto one = run(base + " --threads 1 -o " + (tmp / "one"));
  const auto four = run(base + " --threads 4 -o " + (tmp / "four"));
  REQUIRE(one.code == 0);
  REQUIRE(four.code == 0);
  CHECK(one.out == four.out);
  for (const char* f : {"evaluation_report.txt", "linear.model", "svr.model", "forest.model"})
    CHECK(slurp(tmp.dir / "one" / f) == slurp(tmp.dir / "four" / f));
  CHECK(one.out.find("Measures of error") != std::string::npos);

  const auto shifted = run(base + " --partition \"Low:1,1,4;Medium:1,4,10;High:4,10,10\" -o " + (tmp / "p"));
  REQUIRE(shifted.code == 0);
  CHECK(slurp(tmp.dir / "p" / "evaluation_report.txt").find("Low:1,1,4") != std::string::npos);

  CHECK(run(base + " --test-fraction 1.5").code == 1);
  const auto strict = run(base.substr(0, base.find(" --threshold")) + " --threshold 0.99");
  CHECK(strict.code == 2);
  CHECK(strict.out.find("NoFeaturesSelected") != std::string::npos);
}

TEST_CASE("configuration files") {
  Scratch tmp;
  REQUIRE(run("synth -n 80 --coefficients 0.6 0.3 --noise 0.3 --seed 4 -o " + (tmp / "d.csv")).code == 0);
  std::ofstream(tmp / "run.ini") << "[data]\npath = " << (tmp / "d.csv")
                                 << "\nschema = synthetic\n\n[features]\nlabels = X1, X2\n\n[forest]\nn_trees = 10\n";
  const auto r = run("evaluate -c " + (tmp / "run.ini") + " -o " + (tmp / "o"));
  CHECK(r.code == 0);
  CHECK(fs::exists(tmp.dir / "o" / "evaluation_report.txt"));

  std::ofstream(tmp / "bad.ini") << "[data]\ncolour = blue\n";
  const auto bad = run("evaluate -c " + (tmp / "bad.ini"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("ConfigError") != std::string::npos);
}
