#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "trustlens/learners/matrix.hpp"

namespace trustlens::learners {

enum class KernelKind { linear, rbf };

struct SvmParams {
  double c = 1.0;
  KernelKind kernel = KernelKind::rbf;
  double gamma = 0.0;  // <= 0: 1 / (d * Var(X))
  double tolerance = 1e-3;
  std::uint64_t max_iterations = 10'000'000;
  std::uint64_t seed = 0;

  bool operator==(const SvmParams&) const = default;
};

struct SvmDiagnostics {
  std::uint64_t iterations = 0;
  double kkt_violation = 0.0;  // max over I_up of -yG minus min over I_low
  double dual_objective = 0.0;    // sum(alpha) - 1/2 alpha'Q alpha
  double primal_objective = 0.0;  // 1/2 |w|^2 + C sum(hinge)
  double duality_gap = 0.0;

  bool operator==(const SvmDiagnostics&) const = default;
};

struct SvmConvergenceError : Error {
  SvmConvergenceError(const std::string& what, double gap) : Error(what), duality_gap(gap) {}
  double duality_gap;
};

/// Soft-margin kernel SVM trained with SMO using second-order working-set
/// selection. Class probabilities come from a Platt sigmoid fitted on the
/// training decision values.
class Svm {
 public:
  Svm() = default;

  static Svm fit(const Matrix& x, std::span<const int> y01, const SvmParams& params = {}) {
    detail::check_training_set(x, y01);
    if (!(params.c > 0.0)) throw ValidationError("C must be positive");
    Svm m;
    m.params_ = params;
    m.width_ = x.cols();
    m.gamma_ = params.gamma > 0.0 ? params.gamma : scale_gamma(x);

    const std::size_t n = x.rows();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = y01[i] == 1 ? 1.0 : -1.0;

    KernelRows q(x, y, m);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);
    const double c = params.c;
    const double tau = 1e-12;

    auto in_up = [&](std::size_t t) {
      return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
    };
    auto in_low = [&](std::size_t t) {
      return (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
    };

    std::uint64_t iter = 0;
    double violation = 0.0;
    while (true) {
      // i: maximal violating index in I_up.
      double gmax = -std::numeric_limits<double>::infinity();
      std::size_t i = n;
      for (std::size_t t = 0; t < n; ++t) {
        if (in_up(t) && -y[t] * grad[t] >= gmax) {
          gmax = -y[t] * grad[t];
          i = t;
        }
      }
      double gmin = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < n; ++t) {
        if (in_low(t)) gmin = std::min(gmin, -y[t] * grad[t]);
      }
      violation = gmax - gmin;
      if (i == n || violation < params.tolerance) break;
      if (iter >= params.max_iterations) {
        m.finalize(alpha, grad, y, x, q, iter, violation);
        throw SvmConvergenceError("SVM did not converge after " + std::to_string(iter) +
                                      " iterations (duality gap " +
                                      std::to_string(m.diagnostics_.duality_gap) + ")",
                                  m.diagnostics_.duality_gap);
      }
      ++iter;

      // j: second-order choice among I_low.
      const auto& qi = q.row(i);
      std::size_t j = n;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < n; ++t) {
        if (!in_low(t)) continue;
        const double b = gmax + y[t] * grad[t];
        if (b <= 0.0) continue;
        double a = q.diag(i) + q.diag(t) - 2.0 * qi[t];
        if (a <= 0.0) a = tau;
        const double score = -(b * b) / a;
        if (score <= best) {
          best = score;
          j = t;
        }
      }
      if (j == n) break;
      const auto& qj = q.row(j);

      // Two-variable subproblem (LIBSVM's update with box clipping).
      const double old_ai = alpha[i], old_aj = alpha[j];
      if (y[i] != y[j]) {
        double quad = q.diag(i) + q.diag(j) - 2.0 * qi[j];
        if (quad <= 0.0) quad = tau;
        const double delta = (-grad[i] - grad[j]) / quad;
        const double diff = alpha[i] - alpha[j];
        alpha[i] += delta;
        alpha[j] += delta;
        if (diff > 0) {
          if (alpha[j] < 0) {
            alpha[j] = 0;
            alpha[i] = diff;
          }
        } else {
          if (alpha[i] < 0) {
            alpha[i] = 0;
            alpha[j] = -diff;
          }
        }
        if (diff > 0) {
          if (alpha[i] > c) {
            alpha[i] = c;
            alpha[j] = c - diff;
          }
        } else {
          if (alpha[j] > c) {
            alpha[j] = c;
            alpha[i] = c + diff;
          }
        }
      } else {
        double quad = q.diag(i) + q.diag(j) - 2.0 * qi[j];
        if (quad <= 0.0) quad = tau;
        const double delta = (grad[i] - grad[j]) / quad;
        const double sum = alpha[i] + alpha[j];
        alpha[i] -= delta;
        alpha[j] += delta;
        if (sum > c) {
          if (alpha[i] > c) {
            alpha[i] = c;
            alpha[j] = sum - c;
          }
        } else {
          if (alpha[j] < 0) {
            alpha[j] = 0;
            alpha[i] = sum;
          }
        }
        if (sum > c) {
          if (alpha[j] > c) {
            alpha[j] = c;
            alpha[i] = sum - c;
          }
        } else {
          if (alpha[i] < 0) {
            alpha[i] = 0;
            alpha[j] = sum;
          }
        }
      }

      const double dai = alpha[i] - old_ai, daj = alpha[j] - old_aj;
      for (std::size_t t = 0; t < n; ++t) {
        grad[t] += y[t] * (y[i] * qi[t] * dai + y[j] * qj[t] * daj);
      }
    }
    m.finalize(alpha, grad, y, x, q, iter, violation);
    m.fit_platt(x, y01);
    return m;
  }

  /// Signed distance-like score; positive means class 1.
  double decision_value(std::span<const double> row) const {
    detail::check_width(row, width_);
    double f = bias_;
    for (std::size_t s = 0; s < coef_.size(); ++s) f += coef_[s] * kernel(support_.row(s), row);
    return f;
  }

  Proba predict_proba(std::span<const double> row) const {
    const double f = decision_value(row);
    const double z = platt_a_ * f + platt_b_;
    // p1 = 1 / (1 + exp(z)), evaluated without overflow.
    const double p1 = z >= 0 ? std::exp(-z) / (1.0 + std::exp(-z)) : 1.0 / (1.0 + std::exp(z));
    return {1.0 - p1, p1};
  }

  int predict(std::span<const double> row) const { return argmax(predict_proba(row)); }

  const SvmDiagnostics& diagnostics() const noexcept { return diagnostics_; }
  const SvmParams& params() const noexcept { return params_; }
  double gamma() const noexcept { return gamma_; }
  double bias() const noexcept { return bias_; }
  std::size_t support_count() const noexcept { return coef_.size(); }
  double platt_a() const noexcept { return platt_a_; }
  double platt_b() const noexcept { return platt_b_; }

  bool operator==(const Svm&) const = default;

  friend void to_json(nlohmann::json& j, const Svm& m) {
    j = nlohmann::json::object();
    j["params"] = {{"c", m.params_.c},
                   {"kernel", m.params_.kernel == KernelKind::linear ? "linear" : "rbf"},
                   {"gamma", m.params_.gamma},
                   {"tolerance", m.params_.tolerance},
                   {"max_iterations", m.params_.max_iterations},
                   {"seed", m.params_.seed}};
    j["width"] = m.width_;
    j["gamma_effective"] = m.gamma_;
    j["bias"] = m.bias_;
    j["platt"] = {m.platt_a_, m.platt_b_};
    j["coef"] = m.coef_;
    j["support"] = m.support_.data();
    j["diagnostics"] = {{"iterations", m.diagnostics_.iterations},
                        {"kkt_violation", m.diagnostics_.kkt_violation},
                        {"dual_objective", m.diagnostics_.dual_objective},
                        {"primal_objective", m.diagnostics_.primal_objective},
                        {"duality_gap", m.diagnostics_.duality_gap}};
  }

  friend void from_json(const nlohmann::json& j, Svm& m) {
    const auto& p = j.at("params");
    m.params_.c = p.at("c").get<double>();
    m.params_.kernel = p.at("kernel").get<std::string>() == "linear" ? KernelKind::linear : KernelKind::rbf;
    m.params_.gamma = p.at("gamma").get<double>();
    m.params_.tolerance = p.at("tolerance").get<double>();
    m.params_.max_iterations = p.at("max_iterations").get<std::uint64_t>();
    m.params_.seed = p.at("seed").get<std::uint64_t>();
    m.width_ = j.at("width").get<std::size_t>();
    m.gamma_ = j.at("gamma_effective").get<double>();
    m.bias_ = j.at("bias").get<double>();
    m.platt_a_ = j.at("platt").at(0).get<double>();
    m.platt_b_ = j.at("platt").at(1).get<double>();
    m.coef_ = j.at("coef").get<std::vector<double>>();
    const auto flat = j.at("support").get<std::vector<double>>();
    if (m.width_ == 0 || flat.size() != m.coef_.size() * m.width_) {
      throw ValidationError("SVM snapshot support vectors do not match coefficients");
    }
    m.support_ = Matrix(m.coef_.size(), m.width_);
    for (std::size_t s = 0; s < m.coef_.size(); ++s) {
      for (std::size_t k = 0; k < m.width_; ++k) m.support_(s, k) = flat[s * m.width_ + k];
    }
    const auto& d = j.at("diagnostics");
    m.diagnostics_ = {d.at("iterations").get<std::uint64_t>(), d.at("kkt_violation").get<double>(),
                      d.at("dual_objective").get<double>(), d.at("primal_objective").get<double>(),
                      d.at("duality_gap").get<double>()};
  }

 private:
  // Rows of Q_ij = y_i y_j K(x_i, x_j). Precomputed in full for moderate n,
  // otherwise computed per request with a two-row cache.
  class KernelRows {
   public:
    KernelRows(const Matrix& x, const std::vector<double>& y, const Svm& m)
        : x_(x), y_(y), m_(m), n_(x.rows()), diag_(n_) {
      for (std::size_t i = 0; i < n_; ++i) diag_[i] = m.kernel(x.row(i), x.row(i));
      full_ = n_ <= kFullLimit;
      if (full_) {
        full_rows_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
          for (std::size_t j = i; j < n_; ++j) {
            const double k = m.kernel(x.row(i), x.row(j));
            full_rows_[i * n_ + j] = k;
            full_rows_[j * n_ + i] = k;
          }
        }
      }
    }

    /// Kernel row K(x_i, .) (unsigned).
    const std::vector<double>& row(std::size_t i) {
      if (cache_idx_[0] == i) {
        next_ = 1;
        return cache_[0];
      }
      if (cache_idx_[1] == i) {
        next_ = 0;
        return cache_[1];
      }
      auto& slot = cache_[next_];
      slot.resize(n_);
      if (full_) {
        std::copy_n(full_rows_.begin() + static_cast<std::ptrdiff_t>(i * n_), n_, slot.begin());
      } else {
        for (std::size_t t = 0; t < n_; ++t) slot[t] = m_.kernel(x_.row(i), x_.row(t));
      }
      cache_idx_[next_] = i;
      next_ ^= 1;
      return slot;
    }

    double diag(std::size_t i) const { return diag_[i]; }

   private:
    static constexpr std::size_t kFullLimit = 3000;
    const Matrix& x_;
    const std::vector<double>& y_;
    const Svm& m_;
    std::size_t n_;
    std::vector<double> diag_;
    bool full_ = false;
    std::vector<double> full_rows_;
    std::vector<double> cache_[2];
    std::size_t cache_idx_[2] = {static_cast<std::size_t>(-1), static_cast<std::size_t>(-1)};
    int next_ = 0;
  };

  static double scale_gamma(const Matrix& x) {
    const auto& d = x.data();
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(d.size());
    double var = 0.0;
    for (double v : d) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d.size());
    return var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var) : 1.0;
  }

  double kernel(std::span<const double> a, std::span<const double> b) const {
    if (params_.kernel == KernelKind::linear) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
      return s;
    }
    double d2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double d = a[k] - b[k];
      d2 += d * d;
    }
    return std::exp(-gamma_ * d2);
  }

  void finalize(const std::vector<double>& alpha, const std::vector<double>& grad,
                const std::vector<double>& y, const Matrix& x, KernelRows&, std::uint64_t iter,
                double violation) {
    const std::size_t n = alpha.size();
    const double c = params_.c;
    // Bias from free vectors; midpoint of the feasible interval otherwise.
    double sum_free = 0.0;
    std::size_t n_free = 0;
    double ub = std::numeric_limits<double>::infinity(), lb = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
      const double yg = y[t] * grad[t];
      if (alpha[t] > 0.0 && alpha[t] < c) {
        sum_free += yg;
        ++n_free;
      } else if ((alpha[t] >= c && y[t] < 0) || (alpha[t] <= 0.0 && y[t] > 0)) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    }
    const double rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
    bias_ = -rho;

    coef_.clear();
    std::vector<std::size_t> sv;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] > 0.0) {
        sv.push_back(t);
        coef_.push_back(alpha[t] * y[t]);
      }
    }
    support_ = x.select(sv);

    // With G = Q alpha - e:  alpha'Q alpha = sum alpha_t (G_t + 1) and the
    // hinge slack of instance t is max(0, -G_t - y_t b).
    double aqa = 0.0, sum_alpha = 0.0, slack = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      aqa += alpha[t] * (grad[t] + 1.0);
      sum_alpha += alpha[t];
      slack += std::max(0.0, -grad[t] - y[t] * bias_);
    }
    diagnostics_.iterations = iter;
    diagnostics_.kkt_violation = violation;
    diagnostics_.dual_objective = sum_alpha - 0.5 * aqa;
    diagnostics_.primal_objective = 0.5 * aqa + c * slack;
    diagnostics_.duality_gap = diagnostics_.primal_objective - diagnostics_.dual_objective;
  }

  // Platt scaling with the Newton/backtracking procedure of Lin, Lin & Weng.
  void fit_platt(const Matrix& x, std::span<const int> y01) {
    const std::size_t n = x.rows();
    std::vector<double> f(n);
    double prior1 = 0.0, prior0 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = decision_value(x.row(i));
      (y01[i] == 1 ? prior1 : prior0) += 1.0;
    }
    const double hi = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo = 1.0 / (prior0 + 2.0);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = y01[i] == 1 ? hi : lo;

    double a = 0.0, b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    auto objective = [&](double aa, double bb) {
      double fval = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double fapb = f[i] * aa + bb;
        fval += fapb >= 0 ? t[i] * fapb + std::log1p(std::exp(-fapb))
                          : (t[i] - 1.0) * fapb + std::log1p(std::exp(fapb));
      }
      return fval;
    };
    const double sigma = 1e-12, eps = 1e-5, min_step = 1e-10;
    double fval = objective(a, b);
    for (int it = 0; it < 100; ++it) {
      double h11 = sigma, h22 = sigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double fapb = f[i] * a + b;
        double p, q;
        if (fapb >= 0) {
          p = std::exp(-fapb) / (1.0 + std::exp(-fapb));
          q = 1.0 / (1.0 + std::exp(-fapb));
        } else {
          p = 1.0 / (1.0 + std::exp(fapb));
          q = std::exp(fapb) / (1.0 + std::exp(fapb));
        }
        const double d2 = p * q;
        h11 += f[i] * f[i] * d2;
        h22 += d2;
        h21 += f[i] * d2;
        const double d1 = t[i] - p;
        g1 += f[i] * d1;
        g2 += d1;
      }
      if (std::abs(g1) < eps && std::abs(g2) < eps) break;
      const double det = h11 * h22 - h21 * h21;
      const double da = -(h22 * g1 - h21 * g2) / det;
      const double db = -(-h21 * g1 + h11 * g2) / det;
      const double gd = g1 * da + g2 * db;
      double step = 1.0;
      while (step >= min_step) {
        const double na = a + step * da, nb = b + step * db;
        const double nf = objective(na, nb);
        if (nf < fval + 1e-4 * step * gd) {
          a = na;
          b = nb;
          fval = nf;
          break;
        }
        step /= 2.0;
      }
      if (step < min_step) break;
    }
    platt_a_ = a;
    platt_b_ = b;
  }

  SvmParams params_;
  std::size_t width_ = 0;
  double gamma_ = 1.0;
  double bias_ = 0.0;
  std::vector<double> coef_;
  Matrix support_;
  double platt_a_ = -1.0;
  double platt_b_ = 0.0;
  SvmDiagnostics diagnostics_;
};

}  // namespace trustlens::learners
