#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlpsel/dataset.hpp"
#include "nlpsel/priors.hpp"
#include "nlpsel/screening.hpp"
#include "nlpsel/selection.hpp"

namespace nlpsel {

struct SchemeConfig {
  int k0 = 1;
  double r_thresh = 0.3;
  int m = 0;        // 0: default to min(p, ceil(n/log n))
  int maxno = 3;
  PriorConfig prior;
  int exhaustive_cap = 12;
  double grad_tol = 1e-8;
  int max_iter = 100;
  // Default: maxno counts consecutive no-selection iterations.
  bool cumulative_no_selection = false;
  std::uint64_t seed = 0;
  int n_threads = 0;  // 0: hardware concurrency

  void validate(const Dataset& ds) const;
  int effective_m(const Dataset& ds) const;
};

enum class StopReason { REACHED_M, MAXNO_EXHAUSTED, POOL_EMPTY };

std::string to_string(StopReason r);

struct IterationRecord {
  int iteration = 0;
  std::vector<int> leaders;
  std::vector<VariableSet> leading_sets;
  std::vector<VariableSet> hppms;        // per leading set
  std::vector<double> log_post;          // HPPM unnormalized log posterior
  std::vector<bool> hessian_jittered;    // per leading set
  std::vector<int> added;                // ascending index
  std::vector<int> flagged;              // non-converged screening fits
  int candidates_remaining = 0;
};

struct SelectionResult {
  std::vector<int> selected;  // iteration order, ascending within iteration
  std::vector<IterationRecord> trace;
  StopReason stop_reason = StopReason::POOL_EMPTY;
};

// The full iterative screen-and-select loop.
SelectionResult run_selection(const Dataset& ds, const SchemeConfig& cfg);

// One JSON record per iteration plus a final summary line.
void write_trace_jsonl(std::ostream& os, const SelectionResult& res);

}  // namespace nlpsel
