#include <cmath>

#include "../oracles.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "readiness/fuzzy.hpp"

using namespace readiness;

TEST_CASE("triangular membership") {
  const Triangle t{2, 4, 8};
  CHECK(membership(t, 2) == 0);
  CHECK(membership(t, 3) == 0.5);
  CHECK(membership(t, 4) == 1);
  CHECK(membership(t, 6) == 0.5);
  CHECK(membership(t, 8) == 0);
  CHECK(membership(t, 1) == 0);
  CHECK(membership(t, 9) == 0);
  // Shoulders reach 1 at the shared vertex.
  CHECK(membership(Triangle{1, 1, 5.5}, 1) == 1);
  CHECK(membership(Triangle{5.5, 10, 10}, 10) == 1);
}

TEST_CASE("membership agrees with an independent formula and stays in [0, 1]") {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    double v[3] = {rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)};
    std::sort(v, v + 3);
    if (v[0] == v[2]) continue;
    const Triangle t{v[0], v[1], v[2]};
    const double x = rng.uniform(-1, 11);
    const double mu = membership(t, x);
    CHECK(mu >= 0);
    CHECK(mu <= 1);
    CHECK(mu == doctest::Approx(oracle::triangle(v[0], v[1], v[2], x)).epsilon(1e-12));
  }
}

TEST_CASE("triangle invariants") {
  CHECK(code_of([] { Triangle{3, 2, 5}.validate(); }) == ErrorCode::InvalidPartition);
  CHECK(code_of([] { Triangle{3, 3, 3}.validate(); }) == ErrorCode::InvalidPartition);
  CHECK_NOTHROW(Triangle{3, 3, 5}.validate());
}

TEST_CASE("the default partition") {
  const auto p = default_partition();
  CHECK(p.labels() == std::vector<std::string>{"Low", "Medium", "High"});
  CHECK(p.is_ruspini());
  CHECK(p.term_index("Poor") == 0);
  CHECK(p.term_index("High") == 2);
  CHECK(code_of([&] { p.term_index("Excellent"); }) == ErrorCode::UnknownTerm);
  CHECK(canonical_term("Poor") == "Low");
}

TEST_CASE("fuzzify examples") {
  const auto p = default_partition();
  SUBCASE("a score of 9 is High") {
    const auto a = fuzzify(p, 9);
    CHECK(a.chosen_term == "High");
    CHECK(a.chosen_degree == doctest::Approx(3.5 / 4.5).epsilon(1e-15));
    CHECK(a.memberships[1].second == doctest::Approx(1.0 / 4.5).epsilon(1e-15));
  }
  SUBCASE("crossover ties go to the less ready term") {
    CHECK(fuzzify(p, 7.75).chosen_term == "Medium");
    CHECK(fuzzify(p, 3.25).chosen_term == "Low");
  }
  SUBCASE("out-of-domain scores are clamped") {
    const auto lo = fuzzify(p, 0.4);
    CHECK(lo.input_score == 1);
    CHECK(lo.chosen_term == "Low");
    CHECK(lo.chosen_degree == 1);
    const auto hi = fuzzify(p, 12);
    CHECK(hi.input_score == 10);
    CHECK(hi.chosen_term == "High");
  }
  SUBCASE("the peak of Medium") {
    const auto a = fuzzify(p, 5.5);
    CHECK(a.chosen_term == "Medium");
    CHECK(a.chosen_degree == 1);
  }
}

TEST_CASE("alpha cuts") {
  const auto p = default_partition();
  auto cut = alpha_cut(p, "Medium", 0.5);
  CHECK(cut.lo == 3.25);
  CHECK(cut.hi == 7.75);
  cut = alpha_cut(p, "High", 0.5);
  CHECK(cut.lo == 7.75);
  CHECK(cut.hi == 10);
  cut = alpha_cut(p, "Low", 1.0);
  CHECK(cut.lo == 1);
  CHECK(cut.hi == 1);
  CHECK(code_of([&] { alpha_cut(p, "Low", 0.0); }) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of([&] { alpha_cut(p, "Low", 1.5); }) == ErrorCode::AlphaOutOfRange);
  CHECK(code_of([&] { alpha_cut(p, "Great", 0.5); }) == ErrorCode::UnknownTerm);
}

TEST_CASE("partition invariants") {
  const Interval d{1, 10};
  SUBCASE("peaks must not decrease") {
    CHECK(code_of([&] {
            FuzzyPartition("v", {{"A", {5, 6, 10}}, {"B", {1, 2, 6}}}, d);
          }) == ErrorCode::InvalidPartition);
  }
  SUBCASE("a gap in coverage is rejected") {
    CHECK(code_of([&] {
            FuzzyPartition("v", {{"A", {1, 1, 4}}, {"B", {5, 10, 10}}}, d);
          }) == ErrorCode::InvalidPartition);
  }
  SUBCASE("non-Ruspini partitions are allowed unless required") {
    const std::vector<FuzzyTerm> terms{{"A", {1, 1, 7}}, {"B", {3, 10, 10}}};
    const FuzzyPartition loose("v", terms, d);
    CHECK_FALSE(loose.is_ruspini());
    CHECK(code_of([&] { FuzzyPartition("v", terms, d, true); }) == ErrorCode::InvalidPartition);
  }
  SUBCASE("duplicate labels") {
    CHECK(code_of([&] {
            FuzzyPartition("v", {{"A", {1, 1, 10}}, {"A", {1, 10, 10}}}, d);
          }) == ErrorCode::InvalidPartition);
  }
}

TEST_CASE("partition text format") {
  const auto terms = parse_terms("Low:1,1,4; Medium:1,4,10;High:4,10,10");
  CHECK(terms.size() == 3);
  CHECK(terms[1].shape.b == 4);
  CHECK(format_terms(terms) == "Low:1,1,4;Medium:1,4,10;High:4,10,10");
  CHECK(code_of([] { parse_terms("Low:1,1"); }) == ErrorCode::InvalidPartition);
  CHECK(code_of([] { parse_terms("Low 1,1,4"); }) == ErrorCode::InvalidPartition);
  CHECK(code_of([] { parse_terms(""); }) == ErrorCode::InvalidPartition);

  // A shifted partition moves the crossovers: Medium/High now meet at 7.
  const FuzzyPartition shifted("v", parse_terms("Low:1,1,4;Medium:1,4,10;High:4,10,10"), {1, 10}, true);
  CHECK(fuzzify(shifted, 7.0).chosen_term == "Medium");
  CHECK(fuzzify(shifted, 7.01).chosen_term == "High");
  CHECK(fuzzify(shifted, 2.5).chosen_term == "Low");
  CHECK(fuzzify(shifted, 2.51).chosen_term == "Medium");
}
