#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nlpsel/dataset.hpp"

namespace nlpsel {

struct EnetConfig {
  double alpha = 1.0;  // 1 = lasso
  int n_lambda = 100;
  double lambda_min_ratio = 1e-3;
  int folds = 10;
  std::uint64_t seed = 0;
  bool one_se = false;  // default: lambda-min rule

  void validate() const;
};

struct EnetPath {
  std::vector<double> lambda;             // descending from lambda_max
  std::vector<double> intercept;
  std::vector<Eigen::VectorXd> beta;      // per lambda, length p
};

// Smallest lambda with an all-zero solution.
double enet_lambda_max(const Dataset& ds, double alpha);

// Penalized logistic path by IRLS + cyclic coordinate descent with warm
// starts. Intercept unpenalized. lambdas, when given, overrides the grid.
EnetPath fit_enet_path(const Dataset& ds, const EnetConfig& cfg,
                       const std::vector<double>* lambdas = nullptr);

// Mean validation deviance per lambda under seeded k-fold CV.
std::vector<double> cv_deviance(const Dataset& ds, const EnetConfig& cfg,
                                const std::vector<double>& lambdas);

// k-fold CV, lambda minimizing mean deviance, nonzero support of the
// full-data refit at that lambda.
VariableSet cv_select(const Dataset& ds, const EnetConfig& cfg);

}  // namespace nlpsel
