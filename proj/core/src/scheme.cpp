#include "nlpsel/scheme.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "nlpsel/glm.hpp"

namespace nlpsel {

void SchemeConfig::validate(const Dataset& ds) const {
  prior.validate();
  if (k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  if (r_thresh <= 0.0 || r_thresh > 1.0)
    throw std::invalid_argument("r_thresh must be in (0,1]");
  if (m < 0) throw std::invalid_argument("m must be >= 1 (or 0 for default)");
  if (maxno < 1) throw std::invalid_argument("maxno must be >= 1");
  if (exhaustive_cap < 0 || exhaustive_cap > 24)
    throw std::invalid_argument("exhaustive_cap out of range");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  (void)ds;
}

int SchemeConfig::effective_m(const Dataset& ds) const {
  if (m > 0) return m;
  const double n = static_cast<double>(ds.n());
  const int heuristic = static_cast<int>(std::ceil(n / std::log(n)));
  return std::min<int>(static_cast<int>(ds.p()), std::max(1, heuristic));
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::REACHED_M: return "REACHED_M";
    case StopReason::MAXNO_EXHAUSTED: return "MAXNO_EXHAUSTED";
    case StopReason::POOL_EMPTY: return "POOL_EMPTY";
  }
  return "UNKNOWN";
}

SelectionResult run_selection(const Dataset& ds, const SchemeConfig& cfg) {
  cfg.validate(ds);
  const int target_m = cfg.effective_m(ds);

  std::vector<int> pool(ds.p());
  for (int j = 0; j < static_cast<int>(ds.p()); ++j) pool[j] = j;
  VariableSet candidates(pool);
  VariableSet selected_set;

  SelectionResult res;
  int no_select_count = 0;
  Eigen::VectorXd warm;  // fit of [intercept, selected] from last change
  bool have_warm = false;

  for (int iter = 1; !candidates.empty(); ++iter) {
    ScreenReport rep =
        screen(ds, candidates, selected_set, cfg.k0, cfg.r_thresh,
               have_warm ? &warm : nullptr, cfg.grad_tol, cfg.max_iter,
               cfg.n_threads);

    IterationRecord rec;
    rec.iteration = iter;
    rec.leaders = rep.leaders;
    rec.leading_sets = rep.leading_sets;
    rec.flagged = rep.flagged;

    std::vector<int> added;
    // size-prior over the whole screened pool, not the leading set: the
    // leader is the best of |candidates| coefficients, so only a ~log(pool)
    // penalty per inclusion absorbs that selection effect
    const int pool_size = candidates.size();
    for (const VariableSet& lead_set : rep.leading_sets) {
      ModelPosterior hppm = search_hppm(lead_set, selected_set, ds, cfg.prior,
                                        cfg.exhaustive_cap, pool_size);
      for (int j : hppm.model) added.push_back(j);
      rec.hppms.push_back(hppm.model);
      rec.log_post.push_back(hppm.log_post_unnorm);
      rec.hessian_jittered.push_back(hppm.hessian_jittered);
    }
    std::sort(added.begin(), added.end());
    rec.added = added;

    for (int j : added) {
      selected_set.insert(j);
      res.selected.push_back(j);
    }
    for (const VariableSet& lead_set : rep.leading_sets)
      for (int j : lead_set) candidates.erase(j);
    rec.candidates_remaining = candidates.size();
    res.trace.push_back(std::move(rec));

    if (added.empty()) {
      ++no_select_count;
    } else {
      if (!cfg.cumulative_no_selection) no_select_count = 0;
      // refresh the screening warm start with the enlarged selected set
      Eigen::MatrixXd Xs(ds.n(), 1 + selected_set.size());
      Xs.col(0).setOnes();
      int c = 1;
      for (int j : selected_set) Xs.col(c++) = ds.X.col(j);
      warm = fit_logistic(Xs, ds.y, Eigen::VectorXd::Zero(Xs.cols()),
                          cfg.grad_tol, cfg.max_iter)
                 .beta;
      have_warm = true;
    }

    if (static_cast<int>(res.selected.size()) >= target_m) {
      res.stop_reason = StopReason::REACHED_M;
      return res;
    }
    if (no_select_count >= cfg.maxno) {
      res.stop_reason = StopReason::MAXNO_EXHAUSTED;
      return res;
    }
  }
  res.stop_reason = StopReason::POOL_EMPTY;
  return res;
}

void write_trace_jsonl(std::ostream& os, const SelectionResult& res) {
  using json = nlohmann::ordered_json;
  for (const IterationRecord& rec : res.trace) {
    json j;
    j["iteration"] = rec.iteration;
    j["leaders"] = rec.leaders;
    json sets = json::array();
    for (const auto& s : rec.leading_sets) sets.push_back(s.indices());
    j["leading_sets"] = sets;
    json hppms = json::array();
    for (const auto& h : rec.hppms) hppms.push_back(h.indices());
    j["hppms"] = hppms;
    j["log_post"] = rec.log_post;
    j["hessian_jittered"] = rec.hessian_jittered;
    j["added"] = rec.added;
    j["flagged"] = rec.flagged;
    j["candidates_remaining"] = rec.candidates_remaining;
    os << j.dump() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["selected"] = res.selected;
  summary["stop_reason"] = to_string(res.stop_reason);
  os << summary.dump() << '\n';
}

}  // namespace nlpsel
