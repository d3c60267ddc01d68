#include "readiness/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "readiness/error.hpp"
#include "readiness/text.hpp"

namespace readiness {

void Triangle::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw Error(ErrorCode::InvalidPartition, "triangle vertices must be finite");
  if (!(a <= b && b <= c) || !(a < c))
    throw Error(ErrorCode::InvalidPartition, "triangle (" + format_shortest(a) + ", " +
                                                 format_shortest(b) + ", " + format_shortest(c) +
                                                 ") violates a <= b <= c, a < c");
}

double membership(const Triangle& tri, double x) noexcept {
  if (x == tri.b) return 1.0;
  if (x < tri.a || x > tri.c) return 0.0;
  if (x < tri.b) return (x - tri.a) / (tri.b - tri.a);
  return (tri.c - x) / (tri.c - tri.b);
}

std::string canonical_term(std::string_view label) {
  if (label == "Poor") return "Low";
  return std::string(label);
}

FuzzyPartition::FuzzyPartition(std::string variable_name, std::vector<FuzzyTerm> terms,
                               Interval domain, bool require_ruspini)
    : variable_name_(std::move(variable_name)), terms_(std::move(terms)), domain_(domain) {
  if (terms_.empty()) throw Error(ErrorCode::InvalidPartition, "partition has no terms");
  if (!(domain_.lo < domain_.hi))
    throw Error(ErrorCode::InvalidPartition, "domain must satisfy lo < hi");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    auto& t = terms_[i];
    t.label = canonical_term(t.label);
    if (t.label.empty()) throw Error(ErrorCode::InvalidPartition, "term with empty label");
    if (!seen.insert(t.label).second)
      throw Error(ErrorCode::InvalidPartition, "duplicate term '" + t.label + "'");
    try {
      t.shape.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidPartition, "term " + t.label + ": " + e.message());
    }
    if (i > 0 && t.shape.b < terms_[i - 1].shape.b)
      throw Error(ErrorCode::InvalidPartition,
                  "term peaks must be ordered from least to most ready (" + t.label + ")");
  }

  // Each membership is linear between consecutive breakpoints, so testing the
  // breakpoints and two interior points per segment decides coverage exactly.
  std::vector<double> points{domain_.lo, domain_.hi};
  for (const auto& t : terms_)
    for (double v : {t.shape.a, t.shape.b, t.shape.c})
      if (v > domain_.lo && v < domain_.hi) points.push_back(v);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<double> probes = points;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    probes.push_back(points[k] + 0.25 * (points[k + 1] - points[k]));
    probes.push_back(points[k] + 0.75 * (points[k + 1] - points[k]));
  }
  for (double x : probes) {
    if (membership_sum(x) <= 0.0)
      throw Error(ErrorCode::InvalidPartition,
                  "no term covers " + format_shortest(x) + " of the domain");
  }
  if (require_ruspini && !is_ruspini())
    throw Error(ErrorCode::InvalidPartition, "memberships do not sum to 1 across the domain");
}

std::size_t FuzzyPartition::term_index(std::string_view label) const {
  const auto canonical = canonical_term(label);
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].label == canonical) return i;
  throw Error(ErrorCode::UnknownTerm, "'" + std::string(label) + "' is not a term of " +
                                          variable_name_);
}

std::vector<std::string> FuzzyPartition::labels() const {
  std::vector<std::string> out;
  for (const auto& t : terms_) out.push_back(t.label);
  return out;
}

double FuzzyPartition::membership_sum(double x) const noexcept {
  double s = 0.0;
  for (const auto& t : terms_) s += membership(t.shape, x);
  return s;
}

bool FuzzyPartition::is_ruspini(double tolerance) const {
  std::vector<double> points{domain_.lo, domain_.hi};
  for (const auto& t : terms_)
    for (double v : {t.shape.a, t.shape.b, t.shape.c})
      if (v > domain_.lo && v < domain_.hi) points.push_back(v);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  auto ok = [&](double x) { return std::abs(membership_sum(x) - 1.0) <= tolerance; };
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!ok(points[k])) return false;
    if (k + 1 < points.size()) {
      const double w = points[k + 1] - points[k];
      if (!ok(points[k] + 0.25 * w) || !ok(points[k] + 0.75 * w)) return false;
    }
  }
  return true;
}

FuzzyPartition default_partition() {
  return FuzzyPartition("Career Readiness",
                        {{"Low", {1.0, 1.0, 5.5}},
                         {"Medium", {1.0, 5.5, 10.0}},
                         {"High", {5.5, 10.0, 10.0}}},
                        {1.0, 10.0}, true);
}

LinguisticAssessment fuzzify(const FuzzyPartition& partition, double score) {
  LinguisticAssessment out;
  const auto& d = partition.domain();
  out.input_score = std::isnan(score) ? d.lo : std::clamp(score, d.lo, d.hi);
  double best = -1.0;
  for (std::size_t i = 0; i < partition.terms().size(); ++i) {
    const auto& term = partition.terms()[i];
    const double mu = membership(term.shape, out.input_score);
    out.memberships.emplace_back(term.label, mu);
    if (mu > best) {
      best = mu;
      out.chosen_index = i;
    }
  }
  out.chosen_term = partition.terms()[out.chosen_index].label;
  out.chosen_degree = best;
  return out;
}

Interval alpha_cut(const FuzzyPartition& partition, std::string_view term, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha " + format_shortest(alpha) + " not in (0, 1]");
  const auto& tri = partition.terms()[partition.term_index(term)].shape;
  const auto& d = partition.domain();
  Interval cut{tri.a + alpha * (tri.b - tri.a), tri.c - alpha * (tri.c - tri.b)};
  cut.lo = std::max(cut.lo, d.lo);
  cut.hi = std::min(cut.hi, d.hi);
  return cut;
}

std::vector<FuzzyTerm> parse_terms(std::string_view text) {
  std::vector<FuzzyTerm> terms;
  for (const auto& item : split(text, ';')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorCode::InvalidPartition, "term '" + item + "' must look like Label:a,b,c");
    const auto vertices = split(std::string_view(item).substr(colon + 1), ',');
    if (vertices.size() != 3)
      throw Error(ErrorCode::InvalidPartition, "term '" + item + "' needs three vertices");
    double v[3];
    for (int k = 0; k < 3; ++k) {
      auto parsed = parse_double(vertices[static_cast<std::size_t>(k)]);
      if (!parsed)
        throw Error(ErrorCode::InvalidPartition, "vertex '" + vertices[static_cast<std::size_t>(k)] +
                                                     "' is not a number");
      v[k] = *parsed;
    }
    terms.push_back({std::string(trim(item.substr(0, colon))), {v[0], v[1], v[2]}});
  }
  if (terms.empty()) throw Error(ErrorCode::InvalidPartition, "no terms given");
  return terms;
}

std::string format_terms(const std::vector<FuzzyTerm>& terms) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += ';';
    out += t.label + ':' + format_shortest(t.shape.a) + ',' + format_shortest(t.shape.b) + ',' +
           format_shortest(t.shape.c);
  }
  return out;
}

}  // namespace readiness
