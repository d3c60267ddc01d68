#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace readiness {

/// Triangular membership function with left foot a, peak b, right foot c.
struct Triangle {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Throws InvalidPartition unless a <= b <= c and a < c.
  void validate() const;
};

/// 0 outside [a, c], 1 at the peak, linear in between. A shoulder (a == b or
/// b == c) keeps membership 1 at its flat boundary.
double membership(const Triangle& tri, double x) noexcept;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct FuzzyTerm {
  std::string label;
  Triangle shape;
};

/// Ordered term set over a bounded domain, least ready first.
class FuzzyPartition {
 public:
  /// Validates the triangles, unique labels, non-decreasing peaks and full
  /// coverage of the domain. With require_ruspini the memberships must also
  /// sum to one everywhere on the domain.
  FuzzyPartition(std::string variable_name, std::vector<FuzzyTerm> terms, Interval domain,
                 bool require_ruspini = false);

  const std::string& variable_name() const noexcept { return variable_name_; }
  const std::vector<FuzzyTerm>& terms() const noexcept { return terms_; }
  const Interval& domain() const noexcept { return domain_; }

  /// Index of a term; "Poor" resolves to "Low".
  std::size_t term_index(std::string_view label) const;

  std::vector<std::string> labels() const;

  /// Sum of memberships at x; exact on the domain because the sum is
  /// piecewise linear with kinks only at term breakpoints.
  double membership_sum(double x) const noexcept;
  bool is_ruspini(double tolerance = 1e-12) const;

 private:
  std::string variable_name_;
  std::vector<FuzzyTerm> terms_;
  Interval domain_;
};

/// Low = (1, 1, 5.5), Medium = (1, 5.5, 10), High = (5.5, 10, 10) on [1, 10].
FuzzyPartition default_partition();

/// Accepts "Poor" for "Low"; returns the canonical label otherwise unchanged.
std::string canonical_term(std::string_view label);

struct LinguisticAssessment {
  std::string chosen_term;
  double chosen_degree = 0.0;
  std::vector<std::pair<std::string, double>> memberships;  // partition order
  double input_score = 0.0;                                 // after clamping
  std::size_t chosen_index = 0;
};

/// Clamps to the domain, evaluates every term and picks the largest degree;
/// ties go to the less-ready term.
LinguisticAssessment fuzzify(const FuzzyPartition& partition, double score);

/// {x in domain : mu(x) >= alpha} for one term, 0 < alpha <= 1.
Interval alpha_cut(const FuzzyPartition& partition, std::string_view term, double alpha);

/// Compact text form "Low:1,1,5.5;Medium:1,5.5,10;High:5.5,10,10".
std::vector<FuzzyTerm> parse_terms(std::string_view text);
std::string format_terms(const std::vector<FuzzyTerm>& terms);

}  // namespace readiness
