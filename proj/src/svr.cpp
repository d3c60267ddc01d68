#include <algorithm>
#include <cmath>
#include <limits>

#include "readiness/error.hpp"
#include "readiness/regression.hpp"

namespace readiness {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// The epsilon-SVR dual written over 2n bounded variables a_t in [0, C]:
//   min 1/2 a'Qa + p'a  s.t.  s'a = 0,
// with s_t = +1 for t < n (alpha) and -1 otherwise (alpha*), Q_tu = s_t s_u K,
// p_t = eps - y_t for alpha and eps + y_t for alpha*.
class DualSolver {
 public:
  DualSolver(const Matrix& kernel, std::span<const double> y, double c, double epsilon)
      : kernel_(kernel), n_(y.size()), c_(c), alpha_(2 * n_, 0.0), grad_(2 * n_), p_(2 * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      p_[i] = epsilon - y[i];
      p_[i + n_] = epsilon + y[i];
    }
    grad_ = p_;
  }

  struct Outcome {
    std::size_t iterations = 0;
    std::size_t updates = 0;
    double violation = kInf;
    bool converged = false;
  };

  Outcome run(double tolerance, std::size_t max_iterations) {
    Outcome out;
    while (out.iterations < max_iterations) {
      std::size_t i = 0, j = 0;
      out.violation = std::max(0.0, select(i, j));
      if (out.violation < tolerance || j == kNone) {
        out.converged = out.violation < tolerance;
        return out;
      }
      if (update(i, j)) ++out.updates;
      ++out.iterations;
    }
    std::size_t i = 0, j = 0;
    out.violation = std::max(0.0, select(i, j));
    out.converged = out.violation < tolerance;
    return out;
  }

  std::vector<double> weights() const {
    std::vector<double> w(n_);
    for (std::size_t i = 0; i < n_; ++i) w[i] = alpha_[i] - alpha_[i + n_];
    return w;
  }

  double bias() const {
    double upper = kInf, lower = -kInf, free_sum = 0.0;
    std::size_t free_count = 0;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      const double yg = sign(t) * grad_[t];
      if (alpha_[t] >= c_) {
        if (sign(t) < 0) upper = std::min(upper, yg);
        else lower = std::max(lower, yg);
      } else if (alpha_[t] <= 0.0) {
        if (sign(t) > 0) upper = std::min(upper, yg);
        else lower = std::max(lower, yg);
      } else {
        ++free_count;
        free_sum += yg;
      }
    }
    const double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                                      : (upper + lower) / 2.0;
    return -rho;
  }

  /// Maximised dual value: -(1/2 a'Qa + p'a).
  double dual_objective() const {
    double v = 0.0;
    for (std::size_t t = 0; t < 2 * n_; ++t) v += alpha_[t] * (grad_[t] + p_[t]);
    return -0.5 * v;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double sign(std::size_t t) const { return t < n_ ? 1.0 : -1.0; }
  double q(std::size_t t, std::size_t u) const {
    return sign(t) * sign(u) * kernel_(t % n_, u % n_);
  }
  double qd(std::size_t t) const { return kernel_(t % n_, t % n_); }
  bool at_upper(std::size_t t) const { return alpha_[t] >= c_; }
  bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }

  // Second-order working-set selection. Returns the maximal KKT violation.
  double select(std::size_t& out_i, std::size_t& out_j) const {
    double gmax = -kInf;
    std::size_t i = kNone;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      if (sign(t) > 0) {
        if (!at_upper(t) && -grad_[t] >= gmax) {
          gmax = -grad_[t];
          i = t;
        }
      } else if (!at_lower(t) && grad_[t] >= gmax) {
        gmax = grad_[t];
        i = t;
      }
    }

    double gmax2 = -kInf;
    double best = kInf;
    std::size_t j = kNone;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      double diff = 0.0;
      double quad = 0.0;
      if (sign(t) > 0) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad_[t]);
        diff = gmax + grad_[t];
        if (i != kNone) quad = qd(i) + qd(t) - 2.0 * sign(i) * q(i, t);
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad_[t]);
        diff = gmax - grad_[t];
        if (i != kNone) quad = qd(i) + qd(t) + 2.0 * sign(i) * q(i, t);
      }
      if (i == kNone || diff <= 0.0) continue;
      const double gain = -(diff * diff) / (quad > 0.0 ? quad : kTau);
      if (gain <= best) {
        best = gain;
        j = t;
      }
    }
    out_i = i;
    out_j = j;
    if (i == kNone) return 0.0;
    return gmax + gmax2;
  }

  bool update(std::size_t i, std::size_t j) {
    const double old_i = alpha_[i];
    const double old_j = alpha_[j];
    const double qij = q(i, j);
    double& ai = alpha_[i];
    double& aj = alpha_[j];
    if (sign(i) != sign(j)) {
      double quad = qd(i) + qd(j) + 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c_) {
          ai = c_;
          aj = c_ - diff;
        }
      } else if (aj > c_) {
        aj = c_;
        ai = c_ + diff;
      }
    } else {
      double quad = qd(i) + qd(j) - 2.0 * qij;
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) {
          ai = c_;
          aj = sum - c_;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c_) {
        if (aj > c_) {
          aj = c_;
          ai = sum - c_;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }
    const double di = ai - old_i;
    const double dj = aj - old_j;
    if (di == 0.0 && dj == 0.0) return false;
    for (std::size_t t = 0; t < 2 * n_; ++t) grad_[t] += q(i, t) * di + q(j, t) * dj;
    return true;
  }

  const Matrix& kernel_;
  std::size_t n_;
  double c_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
  std::vector<double> p_;
};

}  // namespace

double scale_gamma(const Matrix& x) {
  const auto& cells = x.data();
  if (cells.empty()) return 1.0;
  double mean = 0.0;
  for (double v : cells) mean += v;
  mean /= static_cast<double>(cells.size());
  double var = 0.0;
  for (double v : cells) var += (v - mean) * (v - mean);
  var /= static_cast<double>(cells.size());
  if (var == 0.0) return 1.0;
  return 1.0 / (static_cast<double>(x.cols()) * var);
}

double kernel_value(KernelKind kernel, double gamma, std::span<const double> a,
                    std::span<const double> b) {
  double acc = 0.0;
  if (kernel == KernelKind::Linear) {
    for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
  }
  for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
  return std::exp(-gamma * acc);
}

SvrModel fit_svr(const Matrix& x, std::span<const double> y, const SvrParams& params,
                 std::vector<std::string> feature_labels) {
  const auto n = x.rows();
  if (y.size() != n) throw Error(ErrorCode::LengthMismatch, "target length differs from row count");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "SVR needs at least two rows");
  if (!(params.c > 0.0)) throw Error(ErrorCode::InvalidArgument, "SVR c must be > 0");
  if (!(params.epsilon >= 0.0)) throw Error(ErrorCode::InvalidArgument, "SVR epsilon must be >= 0");
  if (!feature_labels.empty() && feature_labels.size() != x.cols())
    throw Error(ErrorCode::LengthMismatch, "one feature label per column is required");

  const double gamma = params.gamma.value_or(scale_gamma(x));
  Matrix kernel(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double k = kernel_value(params.kernel, gamma, x.row(i), x.row(j));
      kernel(i, j) = k;
      kernel(j, i) = k;
    }

  DualSolver solver(kernel, y, params.c, params.epsilon);
  const auto outcome = solver.run(params.tolerance, params.max_iterations);
  if (!outcome.converged && outcome.updates == 0)
    throw Error(ErrorCode::NotConverged, "no feasible dual update was found");

  SvrModel model;
  model.c = params.c;
  model.epsilon = params.epsilon;
  model.kernel = params.kernel;
  model.gamma = gamma;
  model.bias = solver.bias();
  model.converged = outcome.converged;
  model.iterations = outcome.iterations;
  model.kkt_violation = outcome.violation;
  model.dual_objective = solver.dual_objective();

  const auto weights = solver.weights();
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i)
    if (weights[i] != 0.0) support.push_back(i);
  model.support_vectors = x.select_rows(support);
  for (auto i : support) model.dual_weights.push_back(weights[i]);

  if (feature_labels.empty())
    for (std::size_t j = 0; j < x.cols(); ++j) feature_labels.push_back("x" + std::to_string(j + 1));
  model.feature_labels = std::move(feature_labels);
  return model;
}

double predict(const SvrModel& model, std::span<const double> x) {
  if (x.size() != model.feature_labels.size())
    throw Error(ErrorCode::DimensionMismatch, "expected " +
                                                  std::to_string(model.feature_labels.size()) +
                                                  " features, got " + std::to_string(x.size()));
  double y = model.bias;
  for (std::size_t i = 0; i < model.dual_weights.size(); ++i)
    y += model.dual_weights[i] *
         kernel_value(model.kernel, model.gamma, model.support_vectors.row(i), x);
  return y;
}

}  // namespace readiness
