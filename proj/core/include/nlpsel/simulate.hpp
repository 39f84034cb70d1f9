#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "nlpsel/dataset.hpp"

namespace nlpsel {

struct SimSpec {
  int n = 2000;
  int p = 20000;
  int block_size = 10;
  double rho = 0.5;       // within-block latent AR(1) correlation
  double maf_lo = 0.05;
  double maf_hi = 0.5;
  int n_causal = 20;
  double effect_sd = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

// {0,1,2} genotypes: consecutive blocks of AR(1)-correlated latent normals,
// two independent allele copies thresholded at the per-column
// (1-maf)-quantile. Zero-variance columns are redrawn up to 10 times.
Eigen::MatrixXd simulate_genotypes(const SimSpec& spec);

// Uniform causal indices without replacement, N(0, effect_sd^2) effects.
std::pair<VariableSet, Eigen::VectorXd> sample_causal_effects(
    const SimSpec& spec);

// y_i ~ Bernoulli(logistic(offset + sum_j z_ij * effects_j)) where z are the
// standardized causal columns of X.
Eigen::VectorXd simulate_phenotype(const Eigen::MatrixXd& X,
                                   const VariableSet& causal,
                                   const Eigen::VectorXd& effects,
                                   std::uint64_t seed, double offset = 0.0);

}  // namespace nlpsel
