#pragma once

#include <Eigen/Dense>

#include "nlpsel/dataset.hpp"
#include "nlpsel/priors.hpp"

namespace nlpsel {

struct MapResult {
  Eigen::VectorXd beta_map;     // [intercept, mandatory..., model...]
  Eigen::MatrixXd neg_hessian;  // of the full joint at beta_map
  double log_joint = 0.0;
  bool converged = false;
};

// MAP of log-likelihood + log-prior. The non-local prior applies only to
// the model coefficients; intercept and mandatory covariates are flat.
// Initialized at the unpenalized MLE with model coefficients floored away
// from the origin (magnitude >= 0.05*sqrt(phi*tau)).
MapResult map_estimate(const VariableSet& model, const VariableSet& mandatory,
                       const Dataset& ds, const PriorConfig& prior);

struct EvidenceResult {
  double log_evidence = 0.0;
  bool map_converged = false;
  bool hessian_jittered = false;  // neg_hessian was not PD; 1e-6 I added
};

EvidenceResult laplace_log_evidence(const VariableSet& model,
                                    const VariableSet& mandatory,
                                    const Dataset& ds,
                                    const PriorConfig& prior);

// Laplace evidence of the intercept + mandatory-only model (flat priors).
double null_evidence(const VariableSet& mandatory, const Dataset& ds);

struct ModelPosterior {
  VariableSet model;            // excludes mandatory covariates
  Eigen::VectorXd beta_map;
  double log_evidence = 0.0;
  double log_model_prior = 0.0;
  double log_post_unnorm = 0.0;  // log_evidence + log_model_prior
  bool map_converged = true;
  bool hessian_jittered = false;
};

// Highest-posterior-probability model over subsets of `candidates`
// (including the empty model). Exhaustive when |candidates| <=
// exhaustive_cap, greedy add-or-drop otherwise. Ties: smaller model,
// then lexicographically smallest index set.
//
// p_total is the number of variables the beta-binomial model-size prior
// ranges over; it defaults to |candidates| but callers that carved the
// candidates out of a larger screened pool must pass the pool size, since
// the size prior is what absorbs the selection effect of screening (the
// best of p null coefficients gains ~log p in likelihood, and the
// beta-binomial penalty per added variable is ~log p_total).
ModelPosterior search_hppm(const VariableSet& candidates,
                           const VariableSet& mandatory, const Dataset& ds,
                           const PriorConfig& prior, int exhaustive_cap = 12,
                           int p_total = -1);

}  // namespace nlpsel
