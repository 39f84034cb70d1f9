#include "nlpsel/screening.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "nlpsel/glm.hpp"
#include "nlpsel/parallel.hpp"

namespace nlpsel {

ScreenReport screen(const Dataset& ds, const VariableSet& candidates,
                    const VariableSet& selected, int k0, double r_thresh,
                    const Eigen::VectorXd* warm, double grad_tol,
                    int max_iter, int n_threads) {
  if (candidates.empty())
    throw std::invalid_argument("screen: empty candidate set");
  if (k0 < 1) throw std::invalid_argument("screen: k0 must be >= 1");
  if (r_thresh <= 0.0 || r_thresh > 1.0)
    throw std::invalid_argument("screen: r_thresh must be in (0,1]");

  const std::vector<int>& cand = candidates.indices();
  const int nc = static_cast<int>(cand.size());

  std::vector<double> magnitude(nc);
  std::vector<char> converged(nc);
  parallel_for(
      nc,
      [&](std::int64_t i) {
        const MmleResult r =
            mmle(ds, cand[i], selected, warm, grad_tol, max_iter);
        magnitude[i] = std::abs(r.coef);
        converged[i] = r.converged ? 1 : 0;
      },
      n_threads);

  ScreenReport rep;
  rep.assoc.reserve(nc);
  for (int i = 0; i < nc; ++i) {
    rep.assoc.emplace_back(cand[i], magnitude[i]);
    if (!converged[i]) rep.flagged.push_back(cand[i]);
  }

  // top-k0 by |MMLE|, ties to the smaller index
  std::vector<int> order(nc);
  for (int i = 0; i < nc; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (magnitude[a] != magnitude[b]) return magnitude[a] > magnitude[b];
    return cand[a] < cand[b];
  });
  const int n_lead = std::min(k0, nc);
  for (int i = 0; i < n_lead; ++i) rep.leaders.push_back(cand[order[i]]);

  // leaders claim their own sets first so no leader is absorbed
  std::unordered_set<int> claimed(rep.leaders.begin(), rep.leaders.end());
  rep.leading_sets.resize(n_lead);
  for (int i = 0; i < n_lead; ++i)
    rep.leading_sets[i].insert(rep.leaders[i]);
  for (int i = 0; i < n_lead; ++i) {
    const int leader = rep.leaders[i];
    for (int j : cand) {
      if (claimed.count(j)) continue;
      if (std::abs(pearson_correlation(ds, j, leader)) >= r_thresh) {
        rep.leading_sets[i].insert(j);
        claimed.insert(j);
      }
    }
  }
  return rep;
}

}  // namespace nlpsel
