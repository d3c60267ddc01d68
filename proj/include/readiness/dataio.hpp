#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "readiness/matrix.hpp"

namespace readiness {

enum class FieldKind { OrdinalScale, Continuous, Identity };

struct FieldSpec {
  std::string label;
  std::string wheel_section;
  double scale_min = 1.0;
  double scale_max = 10.0;
  FieldKind kind = FieldKind::OrdinalScale;
  bool required = true;
};

/// Ordered questionnaire layout with a designated regression target.
class SurveySchema {
 public:
  /// Throws InvalidArgument on duplicate labels, an unknown target or an
  /// empty scale.
  SurveySchema(std::vector<FieldSpec> fields, std::string target_label);

  /// Name, PhoneNumber, the fourteen 1-10 Balance-Wheel scales and an
  /// optional GPA on [0, 4]. Target: Opportunities.
  static SurveySchema balance_wheel();

  /// Every label is a required continuous field on [1, 10].
  static SurveySchema synthetic(std::span<const std::string> feature_labels,
                                std::string target_label = "Opportunities");

  const std::vector<FieldSpec>& fields() const noexcept { return fields_; }
  const std::string& target_label() const noexcept { return target_label_; }
  const FieldSpec* find(std::string_view label) const;

 private:
  std::vector<FieldSpec> fields_;
  std::string target_label_;
};

/// Validated cohort matrix. Columns are the schema's non-identity fields
/// present in the source, in schema order. Optional columns (GPA) may hold
/// NaN for a missing answer; every other cell is a finite in-range value.
class Dataset {
 public:
  Dataset(SurveySchema schema, Matrix rows, std::vector<std::string> column_labels);

  const SurveySchema& schema() const noexcept { return schema_; }
  const Matrix& rows() const noexcept { return rows_; }
  const std::vector<std::string>& column_labels() const noexcept { return labels_; }
  std::size_t target_index() const noexcept { return target_index_; }
  std::size_t size() const noexcept { return rows_.rows(); }

  std::optional<std::size_t> column_index(std::string_view label) const;
  std::size_t require_column(std::string_view label) const;
  const FieldSpec& field(std::size_t column) const;
  std::vector<double> target() const { return rows_.column(target_index_); }

 private:
  SurveySchema schema_;
  Matrix rows_;
  std::vector<std::string> labels_;
  std::size_t target_index_ = 0;
  std::vector<std::size_t> field_of_column_;
};

struct TrainTestSplit {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
};

/// One respondent's answers by label (GPA included when given).
struct SurveyResponse {
  std::vector<std::pair<std::string, double>> scores;

  std::optional<double> find(std::string_view label) const;
};

/// Header line plus one data line; empty cells are omitted.
SurveyResponse parse_response_csv(std::string_view text);
/// "Label=score,Label=score".
SurveyResponse parse_response_pairs(std::string_view text);

/// Checks every answer the schema knows against its scale. With
/// require_complete, every required score field must be present.
void validate_response(const SurveyResponse& response, const SurveySchema& schema,
                       bool require_complete);

/// Values in `labels` order; MissingFeature names the first absent label.
std::vector<double> feature_vector(const SurveyResponse& response,
                                   std::span<const std::string> labels);

/// Comma-separated text with a header row. Identity columns are dropped and
/// columns not named by the schema are ignored.
Dataset parse_csv(std::string_view text, const SurveySchema& schema);

/// Writes a header and one line per row; missing optional cells are empty.
std::string to_csv(const Dataset& dataset);

/// Test size is round-half-away-from-zero of fraction * n. Fails with
/// DegenerateSplit instead of adjusting when either side would be empty.
TrainTestSplit split(const Dataset& dataset, double test_fraction, std::uint64_t seed);
std::size_t test_size_for(std::size_t n, double test_fraction);

/// Features uniform on [1, 10]; target = intercept + coefficients . x +
/// N(0, noise_sd), clipped to [1, 10]. Labels default to X1..Xk.
Dataset generate_synthetic(std::size_t n, std::span<const double> coefficients, double intercept,
                           double noise_sd, std::uint64_t seed,
                           std::span<const std::string> feature_labels = {});

}  // namespace readiness
