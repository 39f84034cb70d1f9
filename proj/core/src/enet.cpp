#include "nlpsel/enet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "nlpsel/parallel.hpp"

namespace nlpsel {

namespace {

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

inline double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

constexpr double kProbClamp = 1e-5;
constexpr double kCoordTol = 1e-7;
constexpr int kMaxSweeps = 1000;
constexpr int kMaxIrls = 25;

struct PathFit {
  std::vector<double> intercept;
  std::vector<Eigen::VectorXd> beta;
};

// One penalized fit at fixed lambda, warm-started in place.
void fit_one_lambda(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                    double lambda, double alpha, double& b0,
                    Eigen::VectorXd& beta) {
  const Eigen::Index n = X.rows(), p = X.cols();
  const double l1 = lambda * alpha;
  const double l2 = lambda * (1.0 - alpha);

  Eigen::VectorXd eta(n), w(n), z(n), resid(n);
  for (int outer = 0; outer < kMaxIrls; ++outer) {
    eta = (X * beta).array() + b0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double pr = sigmoid(eta[i]);
      pr = std::clamp(pr, kProbClamp, 1.0 - kProbClamp);
      w[i] = pr * (1.0 - pr);
      z[i] = eta[i] + (y[i] - pr) / w[i];
    }
    const double wsum = w.sum();
    resid = z - eta;

    double max_change = 0.0;
    bool full_sweep = true;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      max_change = 0.0;
      // intercept
      {
        const double delta = w.dot(resid) / wsum;
        b0 += delta;
        resid.array() -= delta;
        max_change = std::max(max_change, std::abs(delta));
      }
      for (Eigen::Index j = 0; j < p; ++j) {
        if (!full_sweep && beta[j] == 0.0) continue;
        const auto xj = X.col(j);
        const double wx2 = (w.array() * xj.array().square()).sum() / n;
        const double zj =
            (w.array() * xj.array() * resid.array()).sum() / n +
            wx2 * beta[j];
        const double bnew = soft_threshold(zj, l1) / (wx2 + l2);
        const double delta = bnew - beta[j];
        if (delta != 0.0) {
          beta[j] = bnew;
          resid -= delta * xj;
          max_change = std::max(max_change, std::abs(delta));
        }
      }
      if (max_change < kCoordTol) {
        if (full_sweep) break;
        full_sweep = true;  // verify active-set solution on all coordinates
      } else {
        full_sweep = false;
      }
    }
    // quadratic approximation converged when the working response is stable
    const Eigen::VectorXd eta_new = (X * beta).array() + b0;
    if ((eta_new - eta).lpNorm<Eigen::Infinity>() < 1e-6) break;
  }
}

PathFit fit_path_impl(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                      double alpha, const std::vector<double>& lambdas) {
  PathFit fit;
  const double ybar = y.mean();
  double b0 = std::log(ybar / (1.0 - ybar));
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(X.cols());
  for (double lam : lambdas) {
    fit_one_lambda(X, y, lam, alpha, b0, beta);
    fit.intercept.push_back(b0);
    fit.beta.push_back(beta);
  }
  return fit;
}

std::vector<double> lambda_grid(double lmax, const EnetConfig& cfg) {
  std::vector<double> grid(cfg.n_lambda);
  const double lmin = lmax * cfg.lambda_min_ratio;
  for (int i = 0; i < cfg.n_lambda; ++i) {
    const double t = cfg.n_lambda == 1
                         ? 0.0
                         : static_cast<double>(i) / (cfg.n_lambda - 1);
    grid[i] = std::exp(std::log(lmax) + t * (std::log(lmin) - std::log(lmax)));
  }
  return grid;
}

double deviance(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double b0,
                const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = (X * beta).array() + b0;
  double dev = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double pr =
        std::clamp(sigmoid(eta[i]), kProbClamp, 1.0 - kProbClamp);
    dev += y[i] * std::log(pr) + (1.0 - y[i]) * std::log(1.0 - pr);
  }
  return -2.0 * dev;
}

}  // namespace

void EnetConfig::validate() const {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("alpha must be in (0,1]");
  if (n_lambda < 1) throw std::invalid_argument("n_lambda must be >= 1");
  if (lambda_min_ratio <= 0.0 || lambda_min_ratio >= 1.0)
    throw std::invalid_argument("lambda_min_ratio must be in (0,1)");
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
}

double enet_lambda_max(const Dataset& ds, double alpha) {
  const double ybar = ds.y.mean();
  const Eigen::VectorXd r = ds.y.array() - ybar;
  return (ds.X.transpose() * r).lpNorm<Eigen::Infinity>() /
         (static_cast<double>(ds.n()) * alpha);
}

EnetPath fit_enet_path(const Dataset& ds, const EnetConfig& cfg,
                       const std::vector<double>* lambdas) {
  cfg.validate();
  EnetPath path;
  path.lambda = lambdas ? *lambdas
                        : lambda_grid(enet_lambda_max(ds, cfg.alpha), cfg);
  PathFit fit = fit_path_impl(ds.X, ds.y, cfg.alpha, path.lambda);
  path.intercept = std::move(fit.intercept);
  path.beta = std::move(fit.beta);
  return path;
}

std::vector<double> cv_deviance(const Dataset& ds, const EnetConfig& cfg,
                                const std::vector<double>& lambdas) {
  cfg.validate();
  const Eigen::Index n = ds.n();
  std::vector<int> fold_of(n);
  {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::mt19937_64 rng(mix_seed(cfg.seed, 0xf01d5ULL));
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index i = 0; i < n; ++i)
      fold_of[perm[i]] = static_cast<int>(i) % cfg.folds;
  }

  std::vector<std::vector<double>> fold_dev(
      cfg.folds, std::vector<double>(lambdas.size(), 0.0));
  parallel_for(cfg.folds, [&](std::int64_t f) {
    std::vector<int> tr, va;
    for (Eigen::Index i = 0; i < n; ++i)
      (fold_of[i] == f ? va : tr).push_back(static_cast<int>(i));
    Eigen::MatrixXd Xtr(tr.size(), ds.p()), Xva(va.size(), ds.p());
    Eigen::VectorXd ytr(tr.size()), yva(va.size());
    for (size_t i = 0; i < tr.size(); ++i) {
      Xtr.row(i) = ds.X.row(tr[i]);
      ytr[i] = ds.y[tr[i]];
    }
    for (size_t i = 0; i < va.size(); ++i) {
      Xva.row(i) = ds.X.row(va[i]);
      yva[i] = ds.y[va[i]];
    }
    PathFit fit = fit_path_impl(Xtr, ytr, cfg.alpha, lambdas);
    for (size_t l = 0; l < lambdas.size(); ++l)
      fold_dev[f][l] =
          deviance(Xva, yva, fit.intercept[l], fit.beta[l]) / va.size();
  });

  std::vector<double> mean_dev(lambdas.size(), 0.0);
  for (int f = 0; f < cfg.folds; ++f)
    for (size_t l = 0; l < lambdas.size(); ++l)
      mean_dev[l] += fold_dev[f][l] / cfg.folds;

  if (cfg.one_se) {
    // replace by: largest lambda within one SE of the minimum
    size_t lmin = std::min_element(mean_dev.begin(), mean_dev.end()) -
                  mean_dev.begin();
    double se = 0.0;
    for (int f = 0; f < cfg.folds; ++f) {
      const double d = fold_dev[f][lmin] - mean_dev[lmin];
      se += d * d;
    }
    se = std::sqrt(se / (cfg.folds - 1.0) / cfg.folds);
    const double cutoff = mean_dev[lmin] + se;
    for (size_t l = 0; l <= lmin; ++l) {
      if (mean_dev[l] <= cutoff) {
        std::vector<double> adjusted(mean_dev.size(),
                                     std::numeric_limits<double>::max());
        adjusted[l] = mean_dev[l];
        return adjusted;
      }
    }
  }
  return mean_dev;
}

VariableSet cv_select(const Dataset& ds, const EnetConfig& cfg) {
  cfg.validate();
  const std::vector<double> lambdas =
      lambda_grid(enet_lambda_max(ds, cfg.alpha), cfg);
  const std::vector<double> dev = cv_deviance(ds, cfg, lambdas);
  const size_t best =
      std::min_element(dev.begin(), dev.end()) - dev.begin();

  // refit on the full data down to the chosen lambda (warm-started path)
  std::vector<double> head(lambdas.begin(), lambdas.begin() + best + 1);
  PathFit fit = fit_path_impl(ds.X, ds.y, cfg.alpha, head);
  std::vector<int> nz;
  const Eigen::VectorXd& beta = fit.beta.back();
  for (Eigen::Index j = 0; j < beta.size(); ++j)
    if (beta[j] != 0.0) nz.push_back(static_cast<int>(j));
  return VariableSet(nz);
}

}  // namespace nlpsel
