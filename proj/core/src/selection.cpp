#include "nlpsel/selection.hpp"

#include <cmath>
#include <limits>

#include "nlpsel/glm.hpp"

namespace nlpsel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093453;

// [intercept | mandatory | model] design
Eigen::MatrixXd build_design(const VariableSet& model,
                             const VariableSet& mandatory, const Dataset& ds) {
  const Eigen::Index n = ds.n();
  Eigen::MatrixXd Xd(n, 1 + mandatory.size() + model.size());
  Xd.col(0).setOnes();
  int c = 1;
  for (int j : mandatory) Xd.col(c++) = ds.X.col(j);
  for (int j : model) Xd.col(c++) = ds.X.col(j);
  return Xd;
}

double log_joint(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Xd,
                 const Eigen::VectorXd& y, int model_size,
                 const PriorConfig& prior) {
  double lj = log_likelihood(beta, Xd, y);
  if (model_size > 0) lj += log_prior(beta.tail(model_size), prior);
  return lj;
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// gradient and negative Hessian of the joint at beta
void joint_derivs(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Xd,
                  const Eigen::VectorXd& y, int model_size,
                  const PriorConfig& prior, Eigen::VectorXd& grad,
                  Eigen::MatrixXd& neg_hess) {
  const Eigen::Index n = Xd.rows();
  Eigen::VectorXd prob(n), w(n);
  const Eigen::VectorXd eta = Xd * beta;
  for (Eigen::Index i = 0; i < n; ++i) {
    prob[i] = sigmoid(eta[i]);
    w[i] = prob[i] * (1.0 - prob[i]);
  }
  grad = Xd.transpose() * (y - prob);
  neg_hess.noalias() = Xd.transpose() * w.asDiagonal() * Xd;
  if (model_size > 0) {
    Eigen::VectorXd pg, ph;
    prior_grad_hess(beta.tail(model_size), prior, pg, ph);
    const Eigen::Index off = beta.size() - model_size;
    grad.tail(model_size) += pg;
    neg_hess.diagonal().tail(model_size) -= ph;
  }
}

bool solve_spd(Eigen::MatrixXd H, const Eigen::VectorXd& g,
               Eigen::VectorXd& step) {
  double jitter = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::LLT<Eigen::MatrixXd> llt(H);
    if (llt.info() == Eigen::Success) {
      step = llt.solve(g);
      return true;
    }
    jitter = jitter == 0.0 ? 1e-6 : jitter * 100.0;
    H.diagonal().array() += jitter;
  }
  return false;
}

}  // namespace

MapResult map_estimate(const VariableSet& model, const VariableSet& mandatory,
                       const Dataset& ds, const PriorConfig& prior) {
  const int ms = model.size();
  const Eigen::MatrixXd Xd = build_design(model, mandatory, ds);
  const Eigen::Index d = Xd.cols();

  FitResult mle = fit_logistic(Xd, ds.y, Eigen::VectorXd::Zero(d));

  MapResult res;
  res.beta_map = mle.beta;
  if (ms > 0) {
    // both priors vanish at the origin; push model coefficients off it
    const double floor = 0.05 * std::sqrt(prior.phi * prior.tau);
    for (Eigen::Index j = d - ms; j < d; ++j) {
      double& b = res.beta_map[j];
      if (std::abs(b) < floor) b = (b < 0.0) ? -floor : floor;
    }
  }

  double lj = log_joint(res.beta_map, Xd, ds.y, ms, prior);
  Eigen::VectorXd grad, step;
  Eigen::MatrixXd neg_hess;
  constexpr int kMaxIter = 200;
  constexpr double kTol = 1e-6;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    joint_derivs(res.beta_map, Xd, ds.y, ms, prior, grad, neg_hess);
    if (grad.lpNorm<Eigen::Infinity>() <= kTol) {
      res.converged = true;
      break;
    }
    if (!solve_spd(neg_hess, grad, step)) break;
    double scale = 1.0;
    bool accepted = false;
    for (int h = 0; h < 30; ++h) {
      const Eigen::VectorXd cand = res.beta_map + scale * step;
      const double cand_lj = log_joint(cand, Xd, ds.y, ms, prior);
      if (std::isfinite(cand_lj) && cand_lj >= lj) {
        res.beta_map = cand;
        lj = cand_lj;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    if (!accepted) break;
  }

  joint_derivs(res.beta_map, Xd, ds.y, ms, prior, grad, neg_hess);
  if (!res.converged && grad.lpNorm<Eigen::Infinity>() <= kTol)
    res.converged = true;
  res.neg_hessian = 0.5 * (neg_hess + neg_hess.transpose());
  res.log_joint = lj;
  return res;
}

namespace {

// log_joint(mode) + d/2*log(2pi) - 1/2*logdet(negH)
double laplace_from(const MapResult& map, bool& jittered) {
  Eigen::MatrixXd H = map.neg_hessian;
  const Eigen::Index d = H.rows();
  jittered = false;
  Eigen::LLT<Eigen::MatrixXd> llt(H);
  if (llt.info() != Eigen::Success) {
    H.diagonal().array() += 1e-6;
    jittered = true;
    llt.compute(H);
    if (llt.info() != Eigen::Success) return kNegInf;
  }
  double half_logdet = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    half_logdet += std::log(llt.matrixLLT()(i, i));
  return map.log_joint + 0.5 * d * kLog2Pi - half_logdet;
}

}  // namespace

EvidenceResult laplace_log_evidence(const VariableSet& model,
                                    const VariableSet& mandatory,
                                    const Dataset& ds,
                                    const PriorConfig& prior) {
  const MapResult map = map_estimate(model, mandatory, ds, prior);
  EvidenceResult res;
  res.map_converged = map.converged;
  res.log_evidence = laplace_from(map, res.hessian_jittered);
  return res;
}

double null_evidence(const VariableSet& mandatory, const Dataset& ds) {
  PriorConfig flat;  // unused: model is empty
  const MapResult map = map_estimate(VariableSet{}, mandatory, ds, flat);
  bool jittered = false;
  return laplace_from(map, jittered);
}

namespace {

bool better(const ModelPosterior& a, const ModelPosterior& b) {
  if (a.log_post_unnorm != b.log_post_unnorm)
    return a.log_post_unnorm > b.log_post_unnorm;
  if (a.model.size() != b.model.size()) return a.model.size() < b.model.size();
  return a.model.indices() < b.model.indices();
}

ModelPosterior score_model(const VariableSet& model,
                           const VariableSet& mandatory, const Dataset& ds,
                           const PriorConfig& prior, int p_s) {
  ModelPosterior mp;
  mp.model = model;
  if (model.empty()) {
    PriorConfig flat;
    const MapResult map = map_estimate(VariableSet{}, mandatory, ds, flat);
    mp.beta_map = map.beta_map;
    mp.map_converged = map.converged;
    mp.log_evidence = laplace_from(map, mp.hessian_jittered);
  } else {
    const MapResult map = map_estimate(model, mandatory, ds, prior);
    mp.beta_map = map.beta_map;
    mp.map_converged = map.converged;
    mp.log_evidence = laplace_from(map, mp.hessian_jittered);
  }
  mp.log_model_prior = log_model_prior(model.size(), p_s);
  mp.log_post_unnorm = mp.log_evidence + mp.log_model_prior;
  return mp;
}

}  // namespace

ModelPosterior search_hppm(const VariableSet& candidates,
                           const VariableSet& mandatory, const Dataset& ds,
                           const PriorConfig& prior, int exhaustive_cap,
                           int p_total) {
  if (candidates.empty())
    throw std::invalid_argument("search_hppm: empty candidate set");
  const int c = candidates.size();
  if (p_total >= 0 && p_total < c)
    throw std::invalid_argument("search_hppm: p_total < |candidates|");
  const int p_s = p_total < 0 ? c : p_total;
  const std::vector<int>& cand = candidates.indices();

  if (c <= exhaustive_cap) {
    ModelPosterior best =
        score_model(VariableSet{}, mandatory, ds, prior, p_s);
    for (std::uint64_t mask = 1; mask < (1ULL << c); ++mask) {
      std::vector<int> idx;
      for (int b = 0; b < c; ++b)
        if (mask & (1ULL << b)) idx.push_back(cand[b]);
      ModelPosterior mp =
          score_model(VariableSet{std::move(idx)}, mandatory, ds, prior, p_s);
      if (better(mp, best)) best = std::move(mp);
    }
    return best;
  }

  // greedy best-first over single add/drop moves
  ModelPosterior cur = score_model(VariableSet{}, mandatory, ds, prior, p_s);
  for (;;) {
    ModelPosterior best_move = cur;
    bool improved = false;
    for (int j : cand) {
      VariableSet next = cur.model;
      if (next.contains(j))
        next.erase(j);
      else
        next.insert(j);
      ModelPosterior mp = score_model(next, mandatory, ds, prior, p_s);
      if (mp.log_post_unnorm > cur.log_post_unnorm &&
          (!improved || better(mp, best_move))) {
        best_move = std::move(mp);
        improved = true;
      }
    }
    if (!improved) break;
    cur = std::move(best_move);
  }
  return cur;
}

}  // namespace nlpsel
