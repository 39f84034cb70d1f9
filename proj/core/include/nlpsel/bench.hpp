#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlpsel/dataset.hpp"
#include "nlpsel/enet.hpp"
#include "nlpsel/scheme.hpp"

namespace nlpsel {

struct MethodReport {
  std::string name;
  VariableSet selected;
  double tpr = 0.0;
  double fdr = 0.0;
  int n_selected = 0;
  double wall_time = 0.0;  // seconds
  bool failed = false;
  std::string error;
};

// tpr = |selected ∩ causal| / |causal|,
// fdr = |selected \ causal| / max(1, |selected|).
// Empty selected -> (0, 0). Empty causal -> DataError.
std::pair<double, double> compute_metrics(const VariableSet& selected,
                                          const VariableSet& causal);

struct BenchConfig {
  SchemeConfig scheme;
  EnetConfig enet;
  // pmom, pimom, lasso, enet75, enet50, enet25
  std::vector<std::string> methods = {"pmom",   "pimom",  "lasso",
                                      "enet75", "enet50", "enet25"};
  // run methods concurrently; per-method wall times are then omitted
  bool parallel = false;
};

// Runs every configured method; a failing method becomes an error row and
// the rest proceed. ds should already be standardized.
std::vector<MethodReport> run_benchmark(const Dataset& ds,
                                        const VariableSet& causal,
                                        const BenchConfig& cfg);

void write_report_csv(const std::string& path,
                      const std::vector<MethodReport>& reports);

// Paired TPR/FDR bar chart, x-labels "name (n_selected)". Deterministic
// bytes for identical reports (wall time is not drawn).
void write_chart_svg(const std::string& path,
                     const std::vector<MethodReport>& reports);

// Flat key=value config text. '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);

// truth.csv: header "index,name,effect", one row per causal variable.
void write_truth_csv(const std::string& path, const VariableSet& causal,
                     const Eigen::VectorXd& effects,
                     const std::vector<std::string>& names);
std::pair<VariableSet, Eigen::VectorXd> read_truth_csv(
    const std::string& path);

}  // namespace nlpsel
