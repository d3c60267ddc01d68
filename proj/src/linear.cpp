#include <cmath>

#include "readiness/error.hpp"
#include "readiness/regression.hpp"

namespace readiness {

namespace {

// Relative size below which a pivot of R marks a column as dependent on the
// ones before it.
constexpr double kRankTolerance = 1e-10;

}  // namespace

LinearModel fit_linear(const Matrix& x, std::span<const double> y, double ridge_lambda,
                       std::vector<std::string> feature_labels) {
  const auto n = x.rows();
  const auto m = x.cols();
  if (y.size() != n) throw Error(ErrorCode::LengthMismatch, "target length differs from row count");
  if (n == 0) throw Error(ErrorCode::Empty, "no training rows");
  if (!(ridge_lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "ridge_lambda must be >= 0");
  if (!feature_labels.empty() && feature_labels.size() != m)
    throw Error(ErrorCode::LengthMismatch, "one feature label per column is required");
  const auto p = m + 1;
  if (ridge_lambda == 0.0 && n < p)
    throw Error(ErrorCode::RankDeficient, std::to_string(n) + " rows cannot determine " +
                                              std::to_string(p) + " parameters");

  // Design [1 | X], with sqrt(lambda) * I rows appended under the coefficient
  // columns for the ridge penalty.
  const auto extra = ridge_lambda > 0.0 ? m : 0;
  const auto rows = n + extra;
  Matrix a(rows, p);
  std::vector<double> b(rows, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, 0) = 1.0;
    for (std::size_t j = 0; j < m; ++j) a(i, j + 1) = x(i, j);
    b[i] = y[i];
  }
  for (std::size_t j = 0; j < extra; ++j) a(n + j, j + 1) = std::sqrt(ridge_lambda);

  std::vector<double> column_norm(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    column_norm[j] = std::sqrt(s);
  }

  // Householder QR, applying each reflection to the right-hand side as well.
  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < rows; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm <= kRankTolerance * column_norm[k]) {
      if (ridge_lambda == 0.0)
        throw Error(ErrorCode::RankDeficient,
                    k == 0 ? std::string("empty design")
                           : "column " + (feature_labels.empty() ? std::to_string(k - 1)
                                                                  : feature_labels[k - 1]) +
                                 " is a linear combination of the intercept and earlier columns");
      continue;
    }
    const double alpha = a(k, k) > 0.0 ? -norm : norm;
    std::vector<double> v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double vi : v) vnorm2 += vi * vi;
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = k; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * a(i, j);
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < rows; ++i) a(i, j) -= f * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i - k] * b[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < rows; ++i) b[i] -= f * v[i - k];
  }

  std::vector<double> beta(p, 0.0);
  for (std::size_t k = p; k-- > 0;) {
    if (a(k, k) == 0.0) throw Error(ErrorCode::RankDeficient, "singular triangular factor");
    double s = b[k];
    for (std::size_t j = k + 1; j < p; ++j) s -= a(k, j) * beta[j];
    beta[k] = s / a(k, k);
  }

  LinearModel model;
  model.intercept = beta[0];
  model.coefficients.assign(beta.begin() + 1, beta.end());
  if (feature_labels.empty())
    for (std::size_t j = 0; j < m; ++j) feature_labels.push_back("x" + std::to_string(j + 1));
  model.feature_labels = std::move(feature_labels);
  return model;
}

double predict(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.coefficients.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " +
                                                  std::to_string(model.coefficients.size()) +
                                                  " features, got " + std::to_string(x.size()));
  double y = model.intercept;
  for (std::size_t j = 0; j < x.size(); ++j) y += model.coefficients[j] * x[j];
  return y;
}

}  // namespace readiness
