#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "nlpsel/dataset.hpp"

namespace nlpsel {

struct ScreenReport {
  // (candidate index, |MMLE|), ascending index.
  std::vector<std::pair<int, double>> assoc;
  std::vector<int> leaders;               // rank order, strongest first
  std::vector<VariableSet> leading_sets;  // one per leader, pairwise disjoint
  std::vector<int> flagged;               // candidates with non-converged fits
};

// One screening pass: conditional MMLE for every candidate, top-k0 leaders
// by |MMLE| (ties to the smaller index), correlation-based leading sets.
// Overlap is resolved in favor of the higher-ranked leader; a leader always
// stays in its own set. warm initializes the conditioning coefficients.
ScreenReport screen(const Dataset& ds, const VariableSet& candidates,
                    const VariableSet& selected, int k0, double r_thresh,
                    const Eigen::VectorXd* warm = nullptr,
                    double grad_tol = 1e-8, int max_iter = 100,
                    int n_threads = 0);

}  // namespace nlpsel
