#pragma once

#include <Eigen/Dense>

namespace nlpsel {

enum class PriorFamily { PMOM, PIMOM };

struct PriorConfig {
  PriorFamily family = PriorFamily::PMOM;
  double tau = 0.2;   // tau1 for pMOM, tau2 for piMOM
  int order_r = 1;    // pMOM only, in {1,2,3}
  double nu = 1.0;    // piMOM only
  double phi = 1.0;   // dispersion

  void validate() const;  // throws std::invalid_argument
};

// Log of the normalized pMOM density, summed over coordinates.
// -inf if any coordinate is zero.
double log_pmom(const Eigen::VectorXd& beta, const PriorConfig& cfg);

// Log of the normalized piMOM density, summed over coordinates.
// -inf if any coordinate is zero.
double log_pimom(const Eigen::VectorXd& beta, const PriorConfig& cfg);

// Dispatch on cfg.family.
double log_prior(const Eigen::VectorXd& beta, const PriorConfig& cfg);

// Analytic coordinate-wise gradient and diagonal Hessian of the selected
// log-density. beta must have no zero coordinates.
void prior_grad_hess(const Eigen::VectorXd& beta, const PriorConfig& cfg,
                     Eigen::VectorXd& grad, Eigen::VectorXd& hess_diag);

// log B(k+1, p_s-k+1): marginal beta-binomial model prior with a
// uniform hyperprior on the inclusion probability.
double log_model_prior(int k_size, int p_s);

}  // namespace nlpsel
