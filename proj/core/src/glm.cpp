#include "nlpsel/glm.hpp"

#include <cmath>

namespace nlpsel {

namespace {

// log(1+exp(x)) without overflow
inline double log1pexp(double x) {
  if (x > 30.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double log_likelihood(const Eigen::VectorXd& beta, const Eigen::MatrixXd& X,
                      const Eigen::VectorXd& y) {
  const Eigen::VectorXd eta = X * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i)
    ll += y[i] * eta[i] - log1pexp(eta[i]);
  return ll;
}

FitResult fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const Eigen::VectorXd& init, double grad_tol,
                       int max_iter) {
  const Eigen::Index d = X.cols();
  FitResult res;
  res.beta = init;
  double ll = log_likelihood(res.beta, X, y);

  Eigen::VectorXd prob(X.rows()), w(X.rows());
  Eigen::MatrixXd H(d, d);
  for (int iter = 0; iter < max_iter; ++iter) {
    res.iterations = iter + 1;
    const Eigen::VectorXd eta = X * res.beta;
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      prob[i] = sigmoid(eta[i]);
      w[i] = prob[i] * (1.0 - prob[i]);
    }
    const Eigen::VectorXd grad = X.transpose() * (y - prob);
    if (grad.lpNorm<Eigen::Infinity>() <= grad_tol) {
      res.converged = true;
      break;
    }
    H.noalias() = X.transpose() * w.asDiagonal() * X;

    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() != Eigen::Success) {
      H.diagonal().array() += 1e-8;
      llt.compute(H);
      if (llt.info() != Eigen::Success)
        throw NumericalError("singular Hessian in logistic fit");
    }
    Eigen::VectorXd step = llt.solve(grad);

    // step-halving: accept only non-decreasing log-likelihood
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      Eigen::VectorXd cand = res.beta + scale * step;
      cand = cand.cwiseMax(-kBetaClamp).cwiseMin(kBetaClamp);
      const double cand_ll = log_likelihood(cand, X, y);
      if (cand_ll >= ll) {
        res.beta = cand;
        ll = cand_ll;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;  // stationary up to line-search resolution
  }

  // final state
  const Eigen::VectorXd eta = X * res.beta;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    prob[i] = sigmoid(eta[i]);
    w[i] = prob[i] * (1.0 - prob[i]);
  }
  res.log_lik = ll;
  res.neg_hessian.noalias() = X.transpose() * w.asDiagonal() * X;
  const double gnorm =
      (X.transpose() * (y - prob)).lpNorm<Eigen::Infinity>();
  const bool clamped =
      (res.beta.array().abs() >= kBetaClamp - 1e-12).any();
  res.converged = gnorm <= grad_tol && !clamped;
  return res;
}

MmleResult mmle(const Dataset& ds, int j, const VariableSet& conditioning,
                const Eigen::VectorXd* warm, double grad_tol, int max_iter) {
  const Eigen::Index n = ds.n();
  const int q = conditioning.size();
  Eigen::MatrixXd Xs(n, q + 2);
  Xs.col(0).setOnes();
  int c = 1;
  for (int l : conditioning) Xs.col(c++) = ds.X.col(l);
  Xs.col(q + 1) = ds.X.col(j);

  Eigen::VectorXd init = Eigen::VectorXd::Zero(q + 2);
  if (warm && warm->size() == q + 1) init.head(q + 1) = *warm;

  FitResult fit = fit_logistic(Xs, ds.y, init, grad_tol, max_iter);
  MmleResult out;
  out.coef = fit.beta[q + 1];
  out.converged = fit.converged;
  out.beta = std::move(fit.beta);
  return out;
}

}  // namespace nlpsel
