#include "nlpsel/priors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nlpsel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.9189385332046727;  // log(2*pi)/2

double log_double_factorial_odd(int r) {
  // (2r-1)!! for small r
  double v = 1.0;
  for (int l = 1; l <= r; ++l) v *= 2.0 * l - 1.0;
  return std::log(v);
}

}  // namespace

void PriorConfig::validate() const {
  if (tau <= 0.0) throw std::invalid_argument("tau must be positive");
  if (phi <= 0.0) throw std::invalid_argument("phi must be positive");
  if (family == PriorFamily::PMOM) {
    if (order_r < 1 || order_r > 3)
      throw std::invalid_argument("order_r must be in {1,2,3}");
  } else {
    if (nu <= 0.0) throw std::invalid_argument("nu must be positive");
  }
}

double log_pmom(const Eigen::VectorXd& beta, const PriorConfig& cfg) {
  const double s2 = cfg.phi * cfg.tau;
  const int r = cfg.order_r;
  const double log_norm =
      (0.5 + r) * std::log(s2) + kHalfLog2Pi + log_double_factorial_odd(r);
  double lp = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double b = beta[j];
    if (b == 0.0) return kNegInf;
    lp += 2.0 * r * std::log(std::abs(b)) - b * b / (2.0 * s2) - log_norm;
  }
  return lp;
}

double log_pimom(const Eigen::VectorXd& beta, const PriorConfig& cfg) {
  const double s2 = cfg.phi * cfg.tau;
  const double nu = cfg.nu;
  const double log_norm = 0.5 * nu * std::log(s2) - std::lgamma(0.5 * nu);
  double lp = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    const double b = beta[j];
    if (b == 0.0) return kNegInf;
    lp += log_norm - (nu + 1.0) * std::log(std::abs(b)) - s2 / (b * b);
  }
  return lp;
}

double log_prior(const Eigen::VectorXd& beta, const PriorConfig& cfg) {
  return cfg.family == PriorFamily::PMOM ? log_pmom(beta, cfg)
                                         : log_pimom(beta, cfg);
}

void prior_grad_hess(const Eigen::VectorXd& beta, const PriorConfig& cfg,
                     Eigen::VectorXd& grad, Eigen::VectorXd& hess_diag) {
  const Eigen::Index k = beta.size();
  grad.resize(k);
  hess_diag.resize(k);
  const double s2 = cfg.phi * cfg.tau;
  if (cfg.family == PriorFamily::PMOM) {
    const double tr = 2.0 * cfg.order_r;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double b = beta[j];
      grad[j] = tr / b - b / s2;
      hess_diag[j] = -tr / (b * b) - 1.0 / s2;
    }
  } else {
    const double nu1 = cfg.nu + 1.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double b = beta[j];
      const double b2 = b * b;
      grad[j] = -nu1 / b + 2.0 * s2 / (b2 * b);
      hess_diag[j] = nu1 / b2 - 6.0 * s2 / (b2 * b2);
    }
  }
}

double log_model_prior(int k_size, int p_s) {
  if (k_size < 0 || k_size > p_s)
    throw std::invalid_argument("model size out of range");
  return std::lgamma(k_size + 1.0) + std::lgamma(p_s - k_size + 1.0) -
         std::lgamma(p_s + 2.0);
}

}  // namespace nlpsel
