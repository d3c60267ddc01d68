#include "readiness/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "readiness/error.hpp"
#include "readiness/random.hpp"
#include "readiness/text.hpp"

namespace readiness {

SurveySchema::SurveySchema(std::vector<FieldSpec> fields, std::string target_label)
    : fields_(std::move(fields)), target_label_(std::move(target_label)) {
  std::unordered_set<std::string> seen;
  for (const auto& f : fields_) {
    if (f.label.empty()) throw Error(ErrorCode::InvalidArgument, "field with empty label");
    if (!seen.insert(f.label).second)
      throw Error(ErrorCode::InvalidArgument, "duplicate field label '" + f.label + "'");
    if (!(f.scale_min < f.scale_max))
      throw Error(ErrorCode::InvalidArgument, "field '" + f.label + "' has an empty scale");
  }
  const auto* target = find(target_label_);
  if (target == nullptr)
    throw Error(ErrorCode::InvalidArgument, "target '" + target_label_ + "' is not a schema field");
  if (target->kind == FieldKind::Identity || !target->required)
    throw Error(ErrorCode::InvalidArgument,
                "target '" + target_label_ + "' must be a required score field");
}

SurveySchema SurveySchema::balance_wheel() {
  auto scale = [](const char* label, const char* section) {
    return FieldSpec{label, section, 1.0, 10.0, FieldKind::OrdinalScale, true};
  };
  std::vector<FieldSpec> fields{
      {"Name", "General", 1.0, 10.0, FieldKind::Identity, false},
      {"PhoneNumber", "General", 1.0, 10.0, FieldKind::Identity, false},
      scale("LearningRate", "Career"),
      scale("WorkingExp", "Career"),
      scale("SalaryExp", "Money"),
      scale("FamilyTime", "Family"),
      scale("CommunicationRate", "Fun"),
      scale("HobbyTimeRate", "Fun"),
      scale("CommunityRate", "Friends"),
      scale("PhysicalFormRate", "Health"),
      scale("WantToUpPhysicalForm", "Health"),
      scale("NutritionRate", "Health"),
      scale("ConflictSituations", "Love / Career / Friends / Family"),
      scale("ComfortZone", "Spirituality"),
      scale("Opportunities", "All aspects"),
      scale("ChangeLife", "All aspects"),
      {"GPA", "Career", 0.0, 4.0, FieldKind::Continuous, false},
  };
  return SurveySchema(std::move(fields), "Opportunities");
}

SurveySchema SurveySchema::synthetic(std::span<const std::string> feature_labels,
                                     std::string target_label) {
  std::vector<FieldSpec> fields;
  for (const auto& label : feature_labels)
    fields.push_back({label, "Synthetic", 1.0, 10.0, FieldKind::Continuous, true});
  fields.push_back({target_label, "Synthetic", 1.0, 10.0, FieldKind::Continuous, true});
  return SurveySchema(std::move(fields), std::move(target_label));
}

const FieldSpec* SurveySchema::find(std::string_view label) const {
  for (const auto& f : fields_)
    if (f.label == label) return &f;
  return nullptr;
}

namespace {

bool admissible(const FieldSpec& spec, double value) {
  if (!std::isfinite(value)) return false;
  if (value < spec.scale_min || value > spec.scale_max) return false;
  if (spec.kind == FieldKind::OrdinalScale && value != std::floor(value)) return false;
  return true;
}

void check_cell(const FieldSpec& spec, double value, std::size_t row) {
  if (std::isnan(value)) {
    if (spec.required)
      throw Error(ErrorCode::MissingValue,
                  "row " + std::to_string(row) + ", column " + spec.label + " is empty", row,
                  spec.label);
    return;
  }
  if (!admissible(spec, value))
    throw Error(ErrorCode::OutOfRange,
                "row " + std::to_string(row) + ", column " + spec.label + ": value " +
                    format_shortest(value) + " outside " + format_shortest(spec.scale_min) +
                    ".." + format_shortest(spec.scale_max),
                row, spec.label);
}

}  // namespace

Dataset::Dataset(SurveySchema schema, Matrix rows, std::vector<std::string> column_labels)
    : schema_(std::move(schema)), rows_(std::move(rows)), labels_(std::move(column_labels)) {
  if (rows_.rows() < 1) throw Error(ErrorCode::EmptyFile, "dataset has no rows");
  if (labels_.size() != rows_.cols())
    throw Error(ErrorCode::InvalidArgument, "column label count does not match matrix width");
  if (labels_.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "dataset needs a target and at least one feature");

  bool has_target = false;
  std::size_t last_field = 0;
  for (std::size_t c = 0; c < labels_.size(); ++c) {
    const auto& fields = schema_.fields();
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const FieldSpec& f) { return f.label == labels_[c]; });
    if (it == fields.end())
      throw Error(ErrorCode::UnknownLabel, "column '" + labels_[c] + "' is not in the schema");
    if (it->kind == FieldKind::Identity)
      throw Error(ErrorCode::InvalidArgument,
                  "identity field '" + labels_[c] + "' cannot be a dataset column");
    const auto index = static_cast<std::size_t>(it - fields.begin());
    if (c > 0 && index <= last_field)
      throw Error(ErrorCode::InvalidArgument, "dataset columns must follow schema order");
    last_field = index;
    field_of_column_.push_back(index);
    if (labels_[c] == schema_.target_label()) {
      target_index_ = c;
      has_target = true;
    }
  }
  if (!has_target)
    throw Error(ErrorCode::MissingColumn, schema_.target_label(), std::nullopt,
                schema_.target_label());

  for (const auto& f : schema_.fields()) {
    if (f.kind == FieldKind::Identity || !f.required) continue;
    if (std::find(labels_.begin(), labels_.end(), f.label) == labels_.end())
      throw Error(ErrorCode::MissingColumn, f.label, std::nullopt, f.label);
  }

  for (std::size_t r = 0; r < rows_.rows(); ++r)
    for (std::size_t c = 0; c < rows_.cols(); ++c) check_cell(field(c), rows_(r, c), r + 1);
}

std::optional<std::size_t> Dataset::column_index(std::string_view label) const {
  for (std::size_t c = 0; c < labels_.size(); ++c)
    if (labels_[c] == label) return c;
  return std::nullopt;
}

std::size_t Dataset::require_column(std::string_view label) const {
  if (auto c = column_index(label)) return *c;
  throw Error(ErrorCode::UnknownLabel, "no column '" + std::string(label) + "'");
}

const FieldSpec& Dataset::field(std::size_t column) const {
  return schema_.fields()[field_of_column_.at(column)];
}

Dataset parse_csv(std::string_view text, const SurveySchema& schema) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || trim(lines.front()).empty())
    throw Error(ErrorCode::EmptyFile, "input has no header row");

  auto header = split_csv_record(lines.front());
  for (auto& h : header) h = std::string(trim(h));

  // Map each kept schema field to its position in the file.
  std::vector<std::size_t> source_column;
  std::vector<std::string> labels;
  std::vector<const FieldSpec*> specs;
  for (const auto& f : schema.fields()) {
    auto it = std::find(header.begin(), header.end(), f.label);
    if (it == header.end()) {
      if (f.required && f.kind != FieldKind::Identity)
        throw Error(ErrorCode::MissingColumn, f.label, std::nullopt, f.label);
      continue;
    }
    if (f.kind == FieldKind::Identity) continue;
    source_column.push_back(static_cast<std::size_t>(it - header.begin()));
    labels.push_back(f.label);
    specs.push_back(&f);
  }

  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    records.push_back(split_csv_record(lines[i]));
    record_rows.push_back(records.size());
  }
  if (records.empty()) throw Error(ErrorCode::EmptyFile, "input has a header but no data rows");

  Matrix rows(records.size(), labels.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto row_no = record_rows[r];
    if (records[r].size() != header.size())
      throw Error(ErrorCode::MalformedDocument,
                  "row " + std::to_string(row_no) + " has " + std::to_string(records[r].size()) +
                      " fields, header has " + std::to_string(header.size()),
                  row_no, std::nullopt);
    for (std::size_t c = 0; c < labels.size(); ++c) {
      const auto& spec = *specs[c];
      const auto cell = trim(records[r][source_column[c]]);
      double value = std::numeric_limits<double>::quiet_NaN();
      if (!cell.empty()) {
        auto parsed = parse_double(cell);
        if (!parsed)
          throw Error(ErrorCode::NotNumeric,
                      "row " + std::to_string(row_no) + ", column " + spec.label + ": '" +
                          std::string(cell) + "' is not a number",
                      row_no, spec.label);
        value = *parsed;
      }
      check_cell(spec, value, row_no);
      rows(r, c) = value;
    }
  }
  return Dataset(schema, std::move(rows), std::move(labels));
}

std::string to_csv(const Dataset& dataset) {
  std::string out = join(dataset.column_labels(), ",");
  out += '\n';
  const auto& m = dataset.rows();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      if (!std::isnan(m(r, c))) out += format_shortest(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::size_t test_size_for(std::size_t n, double test_fraction) {
  return static_cast<std::size_t>(std::round(test_fraction * static_cast<double>(n)));
}

TrainTestSplit split(const Dataset& dataset, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "test fraction must lie in (0, 1)");
  const auto n = dataset.size();
  const auto n_test = test_size_for(n, test_fraction);
  if (n_test == 0 || n_test >= n)
    throw Error(ErrorCode::DegenerateSplit,
                "fraction " + format_shortest(test_fraction) + " of " + std::to_string(n) +
                    " rows gives " + std::to_string(n_test) + " test rows");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  TrainTestSplit out;
  out.test_fraction = test_fraction;
  out.seed = seed;
  out.test_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  out.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  return out;
}

Dataset generate_synthetic(std::size_t n, std::span<const double> coefficients, double intercept,
                           double noise_sd, std::uint64_t seed,
                           std::span<const std::string> feature_labels) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "synthetic cohort needs n >= 1");
  if (coefficients.empty())
    throw Error(ErrorCode::InvalidArgument, "synthetic cohort needs at least one coefficient");
  if (!(noise_sd >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise_sd must be >= 0");

  std::vector<std::string> labels(feature_labels.begin(), feature_labels.end());
  if (labels.empty())
    for (std::size_t j = 0; j < coefficients.size(); ++j)
      labels.push_back("X" + std::to_string(j + 1));
  if (labels.size() != coefficients.size())
    throw Error(ErrorCode::LengthMismatch, "one label per coefficient is required");

  const auto m = coefficients.size();
  Matrix rows(n, m + 1);
  Rng rng(seed);
  for (std::size_t r = 0; r < n; ++r) {
    double y = intercept;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = rng.uniform(1.0, 10.0);
      rows(r, j) = x;
      y += coefficients[j] * x;
    }
    if (noise_sd > 0.0) y += noise_sd * rng.normal();
    rows(r, m) = std::clamp(y, 1.0, 10.0);
  }
  auto all_labels = labels;
  all_labels.push_back("Opportunities");
  return Dataset(SurveySchema::synthetic(labels), std::move(rows), std::move(all_labels));
}

}  // namespace readiness

namespace readiness {

std::optional<double> SurveyResponse::find(std::string_view label) const {
  for (const auto& [l, v] : scores)
    if (l == label) return v;
  return std::nullopt;
}

namespace {

void add_score(SurveyResponse& response, std::string label, std::string_view cell) {
  auto value = parse_double(cell);
  if (!value)
    throw Error(ErrorCode::NotNumeric, label + ": '" + std::string(cell) + "' is not a number",
                std::nullopt, label);
  if (response.find(label))
    throw Error(ErrorCode::InvalidArgument, "label '" + label + "' given twice");
  response.scores.emplace_back(std::move(label), *value);
}

}  // namespace

SurveyResponse parse_response_csv(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    if (!trim(text.substr(start, end - start)).empty()) lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::EmptyFile, "response has no header row");
  if (lines.size() != 2)
    throw Error(ErrorCode::MalformedDocument, "response must be a header and exactly one row");
  const auto header = split_csv_record(lines[0]);
  const auto cells = split_csv_record(lines[1]);
  if (header.size() != cells.size())
    throw Error(ErrorCode::MalformedDocument, "response row width differs from its header");
  SurveyResponse response;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto label = std::string(trim(header[i]));
    const auto cell = trim(cells[i]);
    if (label.empty() || cell.empty()) continue;
    if (label == "Name" || label == "PhoneNumber") continue;
    add_score(response, label, cell);
  }
  return response;
}

SurveyResponse parse_response_pairs(std::string_view text) {
  SurveyResponse response;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error(ErrorCode::InvalidArgument, "'" + item + "' must look like Label=score");
    add_score(response, std::string(trim(std::string_view(item).substr(0, eq))),
              trim(std::string_view(item).substr(eq + 1)));
  }
  if (response.scores.empty()) throw Error(ErrorCode::Empty, "response has no scores");
  return response;
}

void validate_response(const SurveyResponse& response, const SurveySchema& schema,
                       bool require_complete) {
  for (const auto& [label, value] : response.scores) {
    const auto* spec = schema.find(label);
    if (spec && spec->kind != FieldKind::Identity && !admissible(*spec, value))
      throw Error(ErrorCode::OutOfRange,
                  label + ": value " + format_shortest(value) + " outside " +
                      format_shortest(spec->scale_min) + ".." + format_shortest(spec->scale_max),
                  std::nullopt, label);
  }
  if (!require_complete) return;
  for (const auto& f : schema.fields())
    if (f.required && f.kind != FieldKind::Identity && !response.find(f.label))
      throw Error(ErrorCode::MissingFeature, "response lacks " + f.label, std::nullopt, f.label);
}

std::vector<double> feature_vector(const SurveyResponse& response,
                                   std::span<const std::string> labels) {
  std::vector<double> out;
  for (const auto& label : labels) {
    auto v = response.find(label);
    if (!v) throw Error(ErrorCode::MissingFeature, "response lacks " + label, std::nullopt, label);
    out.push_back(*v);
  }
  return out;
}

}  // namespace readiness
