#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "readiness/dataio.hpp"
#include "readiness/matrix.hpp"

namespace readiness {

struct ColumnSummary {
  std::string label;
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample, divisor n-1; NaN when count < 2
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

struct DescriptiveStats {
  std::vector<ColumnSummary> columns;
};

/// Quantile by linear interpolation between closest ranks, p in [0, 1].
/// `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// Summary of a single column; NaN cells are treated as missing.
ColumnSummary summarize(std::string label, std::span<const double> values);

/// Per-column summary. Throws EmptyColumn if a column has no observed value.
DescriptiveStats describe(const Dataset& dataset);

class CorrelationMatrix {
 public:
  CorrelationMatrix(std::vector<std::string> labels, Matrix values);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& values() const noexcept { return values_; }
  std::size_t index_of(std::string_view label) const;

  /// NaN marks an undefined coefficient (a zero-variance column).
  double at(std::size_t i, std::size_t j) const { return values_(i, j); }
  bool defined(std::size_t i, std::size_t j) const;

 private:
  std::vector<std::string> labels_;
  Matrix values_;
};

/// Pearson coefficient over pairs where both values are present. NaN when
/// either side has zero variance or fewer than two complete pairs remain.
double pearson(std::span<const double> x, std::span<const double> y);

/// Pairwise-complete Pearson matrix over every dataset column.
CorrelationMatrix pearson(const Dataset& dataset);

struct FeatureSelection {
  std::string target_label;
  double threshold = 0.3;
  std::vector<std::string> selected_labels;
  std::vector<double> selected_correlations;
};

/// Labels with |r| strictly above the threshold against the target, by
/// descending |r| with ties in matrix order. Undefined coefficients and the
/// `excluded` labels never qualify.
FeatureSelection select_features(const CorrelationMatrix& corr, std::string_view target,
                                 double threshold, std::span<const std::string> excluded = {});

/// Table-2-shaped delimited text.
std::string describe_table(const DescriptiveStats& stats);
std::string correlation_table(const CorrelationMatrix& corr);
/// (label, r) against the target, sorted by descending r; undefined last.
std::string target_correlation_table(const CorrelationMatrix& corr, std::string_view target);

}  // namespace readiness
