#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "readiness/error.hpp"
#include "readiness/random.hpp"
#include "readiness/regression.hpp"

namespace readiness {

double RegressionTree::predict(std::span<const double> x) const {
  std::size_t at = 0;
  while (nodes[at].feature >= 0) {
    const auto& node = nodes[at];
    at = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return nodes[at].value;
}

std::size_t RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    auto [at, d] = stack.back();
    stack.pop_back();
    deepest = std::max(deepest, d);
    if (nodes[at].feature >= 0) {
      stack.emplace_back(nodes[at].left, d + 1);
      stack.emplace_back(nodes[at].right, d + 1);
    }
  }
  return deepest;
}

std::size_t RegressionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double score = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& x, std::span<const double> y, const ForestParams& params,
              std::uint64_t seed)
      : x_(x), y_(y), params_(params), rng_(seed) {}

  RegressionTree build(std::vector<std::size_t> sample) {
    grow(std::move(sample), 0);
    return std::move(tree_);
  }

 private:
  std::uint32_t grow(std::vector<std::size_t> sample, std::size_t depth) {
    const auto id = static_cast<std::uint32_t>(tree_.nodes.size());
    tree_.nodes.emplace_back();

    const bool depth_capped = params_.max_depth && depth >= *params_.max_depth;
    std::optional<Split> split;
    if (!depth_capped && sample.size() >= params_.min_samples_split && !pure(sample))
      split = best_split(sample);
    if (!split) {
      tree_.nodes[id].value = leaf_value(sample);
      return id;
    }

    std::vector<std::size_t> left, right;
    for (auto i : sample)
      (x_(i, static_cast<std::size_t>(split->feature)) <= split->threshold ? left : right)
          .push_back(i);
    sample.clear();
    sample.shrink_to_fit();

    const auto l = grow(std::move(left), depth + 1);
    const auto r = grow(std::move(right), depth + 1);
    auto& node = tree_.nodes[id];
    node.feature = split->feature;
    node.threshold = split->threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  bool pure(const std::vector<std::size_t>& sample) const {
    for (auto i : sample)
      if (y_[i] != y_[sample.front()]) return false;
    return true;
  }

  double leaf_value(const std::vector<std::size_t>& sample) const {
    if (pure(sample)) return y_[sample.front()];
    double sum = 0.0;
    for (auto i : sample) sum += y_[i];
    return sum / static_cast<double>(sample.size());
  }

  std::vector<std::size_t> candidate_features() {
    std::vector<std::size_t> features(x_.cols());
    std::iota(features.begin(), features.end(), std::size_t{0});
    const auto k = params_.max_features;
    if (k == 0 || k >= features.size()) return features;
    for (std::size_t i = 0; i < k; ++i)
      std::swap(features[i], features[i + rng_.below(features.size() - i)]);
    features.resize(k);
    std::sort(features.begin(), features.end());
    return features;
  }

  // Minimises the summed squared error of the two children. Strict
  // improvement only, so the lowest feature and lowest threshold win ties.
  std::optional<Split> best_split(const std::vector<std::size_t>& sample) {
    std::optional<Split> best;
    std::vector<std::pair<double, double>> points(sample.size());
    double total = 0.0, total_sq = 0.0;
    for (auto i : sample) {
      total += y_[i];
      total_sq += y_[i] * y_[i];
    }
    const double n = static_cast<double>(sample.size());

    for (auto f : candidate_features()) {
      for (std::size_t k = 0; k < sample.size(); ++k) points[k] = {x_(sample[k], f), y_[sample[k]]};
      std::sort(points.begin(), points.end());
      double lsum = 0.0, lsq = 0.0;
      for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        lsum += points[k].second;
        lsq += points[k].second * points[k].second;
        if (points[k].first == points[k + 1].first) continue;
        const double nl = static_cast<double>(k + 1);
        const double nr = n - nl;
        const double rsum = total - lsum;
        const double rsq = total_sq - lsq;
        const double score = std::max(0.0, lsq - lsum * lsum / nl) +
                             std::max(0.0, rsq - rsum * rsum / nr);
        if (!best || score < best->score) {
          double threshold = 0.5 * (points[k].first + points[k + 1].first);
          if (threshold >= points[k + 1].first) threshold = points[k].first;
          best = Split{static_cast<int>(f), threshold, score};
        }
      }
    }
    return best;
  }

  const Matrix& x_;
  std::span<const double> y_;
  const ForestParams& params_;
  Rng rng_;
  RegressionTree tree_;
};

void check_training_input(const Matrix& x, std::span<const double> y) {
  if (y.size() != x.rows()) throw Error(ErrorCode::LengthMismatch, "target length differs from row count");
  if (x.rows() < 2) throw Error(ErrorCode::InvalidArgument, "forest needs at least two rows");
  if (x.cols() < 1) throw Error(ErrorCode::InvalidArgument, "forest needs at least one feature");
}

}  // namespace

RegressionTree grow_tree(const Matrix& x, std::span<const double> y,
                         std::span<const std::size_t> sample, const ForestParams& params,
                         std::uint64_t seed) {
  if (sample.empty()) throw Error(ErrorCode::Empty, "tree needs at least one sample");
  TreeBuilder builder(x, y, params, seed);
  return builder.build({sample.begin(), sample.end()});
}

ForestModel fit_forest(const Matrix& x, std::span<const double> y, const ForestParams& params,
                       std::uint64_t seed, std::vector<std::string> feature_labels) {
  check_training_input(x, y);
  if (params.n_trees < 1) throw Error(ErrorCode::InvalidArgument, "n_trees must be >= 1");
  if (params.min_samples_split < 2)
    throw Error(ErrorCode::InvalidArgument, "min_samples_split must be >= 2");
  if (!feature_labels.empty() && feature_labels.size() != x.cols())
    throw Error(ErrorCode::LengthMismatch, "one feature label per column is required");

  const auto n = x.rows();
  ForestModel model;
  model.params = params;
  model.seed = seed;
  model.trees.resize(params.n_trees);

  // Tree k depends only on derive_seed(seed, k), so the thread count cannot
  // change the result.
  auto train_one = [&](std::size_t k) {
    const auto tree_seed = derive_seed(seed, k);
    Rng rng(tree_seed);
    std::vector<std::size_t> sample(n);
    if (params.bootstrap)
      for (auto& s : sample) s = rng.below(n);
    else
      std::iota(sample.begin(), sample.end(), std::size_t{0});
    model.trees[k] = grow_tree(x, y, sample, params, mix64(tree_seed));
  };

  std::size_t threads = params.threads ? params.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, params.n_trees);
  if (threads == 1) {
    for (std::size_t k = 0; k < params.n_trees; ++k) train_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (auto k = next++; k < params.n_trees && !failed; k = next++) {
          try {
            train_one(k);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  if (feature_labels.empty())
    for (std::size_t j = 0; j < x.cols(); ++j) feature_labels.push_back("x" + std::to_string(j + 1));
  model.feature_labels = std::move(feature_labels);
  return model;
}

double predict(const ForestModel& model, std::span<const double> x) {
  if (x.size() != model.feature_labels.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " +
                                                  std::to_string(model.feature_labels.size()) +
                                                  " features, got " + std::to_string(x.size()));
  double sum = 0.0;
  for (const auto& tree : model.trees) sum += tree.predict(x);
  return sum / static_cast<double>(model.trees.size());
}

}  // namespace readiness
