#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "readiness/matrix.hpp"

namespace readiness {

struct LinearModel {
  double intercept = 0.0;
  std::vector<double> coefficients;
  std::vector<std::string> feature_labels;
};

enum class KernelKind { Rbf, Linear };

struct SvrParams {
  double c = 1.0;
  double epsilon = 0.1;
  KernelKind kernel = KernelKind::Rbf;
  std::optional<double> gamma;  // unset: 1 / (m * var(X)) over all training cells
  double tolerance = 1e-3;      // stop once the maximal KKT violation is below this
  std::size_t max_iterations = 100000;
};

struct ForestParams {
  std::size_t n_trees = 100;
  std::optional<std::size_t> max_depth;
  std::size_t min_samples_split = 2;
  bool bootstrap = true;
  std::size_t max_features = 0;  // 0: all features at every split
  std::size_t threads = 0;       // 0: hardware concurrency
};

struct LinearParams {
  double ridge_lambda = 0.0;
};

struct ModelParams {
  SvrParams svr;
  ForestParams forest;
  LinearParams linear;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SvrModel {
  Matrix support_vectors;
  std::vector<double> dual_weights;  // alpha_i - alpha_i*
  double bias = 0.0;
  double c = 1.0;
  double epsilon = 0.1;
  KernelKind kernel = KernelKind::Rbf;
  double gamma = 1.0;
  std::vector<std::string> feature_labels;
  // Training diagnostics.
  bool converged = true;
  std::size_t iterations = 0;
  double kkt_violation = 0.0;
  double dual_objective = 0.0;  // maximised dual value
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  double value = 0.0;  // leaf: mean of the training targets that reached it
};

/// Flat CART regression tree; node 0 is the root. x[feature] <= threshold
/// descends left.
struct RegressionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const;
  std::size_t depth() const;
  std::size_t leaf_count() const;
};

struct ForestModel {
  std::vector<RegressionTree> trees;
  ForestParams params;
  std::uint64_t seed = 0;
  std::vector<std::string> feature_labels;
};

using Model = std::variant<LinearModel, SvrModel, ForestModel>;

enum class ModelKind { Linear, Svr, Forest };

const char* model_kind_name(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view name) noexcept;
ModelKind kind_of(const Model& model) noexcept;
const std::vector<std::string>& feature_labels(const Model& model) noexcept;

/// Least squares with an intercept, solved by Householder QR. With
/// ridge_lambda > 0 the coefficients (not the intercept) are penalised.
/// Throws RankDeficient for an unpenalised fit of a rank-deficient design.
LinearModel fit_linear(const Matrix& x, std::span<const double> y, double ridge_lambda = 0.0,
                       std::vector<std::string> feature_labels = {});

/// gamma used by fit_svr when SvrParams::gamma is unset.
double scale_gamma(const Matrix& x);
double kernel_value(KernelKind kernel, double gamma, std::span<const double> a,
                    std::span<const double> b);

/// epsilon-SVR trained on the dual by two-variable working-set updates with
/// second-order working-set selection.
SvrModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params = {},
                 std::vector<std::string> feature_labels = {});

/// Grows one CART tree on the given sample rows (duplicates allowed).
RegressionTree grow_tree(const Matrix& x, std::span<const double> y,
                         std::span<const std::size_t> sample, const ForestParams& params,
                         std::uint64_t seed);

ForestModel fit_forest(const Matrix& x, std::span<const double> y, const ForestParams& params = {},
                       std::uint64_t seed = 0, std::vector<std::string> feature_labels = {});

/// Fits the requested model kind from the shared parameter set.
Model fit_model(ModelKind kind, const Matrix& x, std::span<const double> y,
                const ModelParams& params, std::vector<std::string> feature_labels);

/// Raw predictions, never clipped. Throws DimensionMismatch on a wrong-length x.
double predict(const LinearModel& model, std::span<const double> x);
double predict(const SvrModel& model, std::span<const double> x);
double predict(const ForestModel& model, std::span<const double> x);
double predict(const Model& model, std::span<const double> x);
std::vector<double> predict_rows(const Model& model, const Matrix& x);

inline constexpr int kModelFormatVersion = 1;

/// Versioned sectioned-text document; decimals carry 17 significant digits
/// so load_model(save_model(m)) predicts bit-identically.
std::string save_model(const Model& model);
Model load_model(std::string_view document);

}  // namespace readiness
