#pragma once

#include <Eigen/Dense>

#include "nlpsel/dataset.hpp"

namespace nlpsel {

// Coefficients are clamped to this magnitude when the data are separated.
inline constexpr double kBetaClamp = 30.0;

struct FitResult {
  Eigen::VectorXd beta;        // intercept first
  double log_lik = 0.0;
  bool converged = false;
  int iterations = 0;
  Eigen::MatrixXd neg_hessian;  // X^T W X at beta
};

// Bernoulli log-likelihood sum_i [ y_i*eta_i - log(1+exp(eta_i)) ],
// overflow-safe for large |eta|.
double log_likelihood(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                      const Eigen::VectorXd& y);

// Newton-Raphson with step-halving. X must include the intercept column.
// Coefficients are clamped to |b| <= kBetaClamp; a binding clamp means
// converged=false. Singular Hessians get a 1e-8 ridge retry.
FitResult fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& init, double grad_tol = 1e-8,
                       int max_iter = 100);

struct MmleResult {
  double coef = 0.0;    // coefficient of the candidate column
  bool converged = false;
  Eigen::VectorXd beta; // full fit, for warm starts
};

// Coefficient of x_j from the logistic fit of y on
// [intercept, X_conditioning, x_j]. warm, when given, initializes the
// intercept and conditioning coefficients.
MmleResult mmle(const Dataset& ds, int j, const VariableSet& conditioning,
                const Eigen::VectorXd* warm = nullptr, double grad_tol = 1e-8,
                int max_iter = 100);

}  // namespace nlpsel
