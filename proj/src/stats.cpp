#include "readiness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "readiness/error.hpp"
#include "readiness/text.hpp"

namespace readiness {

namespace {
constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();
}

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(ErrorCode::Empty, "quantile of an empty sample");
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ColumnSummary summarize(std::string label, std::span<const double> values) {
  std::vector<double> present;
  present.reserve(values.size());
  for (double v : values)
    if (!std::isnan(v)) present.push_back(v);
  if (present.empty()) throw Error(ErrorCode::EmptyColumn, "column '" + label + "' has no values");

  ColumnSummary s;
  s.label = std::move(label);
  s.count = present.size();
  const double n = static_cast<double>(present.size());
  s.mean = std::accumulate(present.begin(), present.end(), 0.0) / n;
  if (present.size() >= 2) {
    double ss = 0.0;
    for (double v : present) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1.0));
  } else {
    s.std = kUndefined;
  }
  std::sort(present.begin(), present.end());
  s.min = present.front();
  s.max = present.back();
  s.q25 = quantile_sorted(present, 0.25);
  s.median = quantile_sorted(present, 0.5);
  s.q75 = quantile_sorted(present, 0.75);
  return s;
}

DescriptiveStats describe(const Dataset& dataset) {
  DescriptiveStats out;
  const auto& m = dataset.rows();
  for (std::size_t c = 0; c < m.cols(); ++c)
    out.columns.push_back(summarize(dataset.column_labels()[c], m.column(c)));
  return out;
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> labels, Matrix values)
    : labels_(std::move(labels)), values_(std::move(values)) {
  if (values_.rows() != labels_.size() || values_.cols() != labels_.size())
    throw Error(ErrorCode::DimensionMismatch, "correlation matrix must be square over its labels");
}

std::size_t CorrelationMatrix::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw Error(ErrorCode::UnknownLabel, "'" + std::string(label) + "' is not in the matrix");
}

bool CorrelationMatrix::defined(std::size_t i, std::size_t j) const {
  return !std::isnan(values_(i, j));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "pearson needs equal lengths");
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) continue;
    sx += x[i];
    sy += y[i];
    ++n;
  }
  if (n < 2) return kUndefined;
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) continue;
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return kUndefined;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix pearson(const Dataset& dataset) {
  const auto& m = dataset.rows();
  if (m.rows() < 2) throw Error(ErrorCode::InvalidArgument, "correlation needs at least two rows");
  const auto k = m.cols();
  std::vector<std::vector<double>> cols(k);
  for (std::size_t c = 0; c < k; ++c) cols[c] = m.column(c);

  Matrix values(k, k, kUndefined);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double r = pearson(cols[i], cols[j]);
      if (i == j && !std::isnan(r)) r = 1.0;
      values(i, j) = r;
      values(j, i) = r;
    }
  }
  return CorrelationMatrix(dataset.column_labels(), std::move(values));
}

FeatureSelection select_features(const CorrelationMatrix& corr, std::string_view target,
                                 double threshold, std::span<const std::string> excluded) {
  const auto t = corr.index_of(target);
  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < corr.labels().size(); ++i) {
    if (i == t || !corr.defined(i, t)) continue;
    if (std::find(excluded.begin(), excluded.end(), corr.labels()[i]) != excluded.end()) continue;
    if (std::abs(corr.at(i, t)) > threshold) picked.push_back(i);
  }
  if (picked.empty()) {
    std::string realized;
    for (std::size_t i = 0; i < corr.labels().size(); ++i) {
      if (i == t) continue;
      if (!realized.empty()) realized += ", ";
      realized += corr.labels()[i] + "=" + format_digits(corr.at(i, t), 4);
    }
    throw Error(ErrorCode::NoFeaturesSelected,
                "no |r| against " + std::string(target) + " exceeds " + format_shortest(threshold) +
                    " (" + realized + ")");
  }
  std::stable_sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(corr.at(a, t)) > std::abs(corr.at(b, t));
  });

  FeatureSelection out;
  out.target_label = std::string(target);
  out.threshold = threshold;
  for (auto i : picked) {
    out.selected_labels.push_back(corr.labels()[i]);
    out.selected_correlations.push_back(corr.at(i, t));
  }
  return out;
}

std::string describe_table(const DescriptiveStats& stats) {
  std::string out = "label,count,mean,std,min,25%,50%,75%,max\n";
  for (const auto& c : stats.columns) {
    out += c.label + ',' + std::to_string(c.count);
    for (double v : {c.mean, c.std, c.min, c.q25, c.median, c.q75, c.max})
      out += ',' + format_digits(v, 2);
    out += '\n';
  }
  return out;
}

std::string correlation_table(const CorrelationMatrix& corr) {
  std::string out = "label";
  for (const auto& l : corr.labels()) out += ',' + l;
  out += '\n';
  for (std::size_t i = 0; i < corr.labels().size(); ++i) {
    out += corr.labels()[i];
    for (std::size_t j = 0; j < corr.labels().size(); ++j)
      out += ',' + format_digits(corr.at(i, j), 4);
    out += '\n';
  }
  return out;
}

std::string target_correlation_table(const CorrelationMatrix& corr, std::string_view target) {
  const auto t = corr.index_of(target);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < corr.labels().size(); ++i)
    if (i != t) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool da = corr.defined(a, t), db = corr.defined(b, t);
    if (da != db) return da;
    return da && corr.at(a, t) > corr.at(b, t);
  });
  std::string out = "label,r\n";
  for (auto i : order) out += corr.labels()[i] + ',' + format_digits(corr.at(i, t), 4) + '\n';
  return out;
}

}  // namespace readiness
