#include "nlpsel/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nlpsel/parallel.hpp"

namespace nlpsel {

namespace {

// Acklam's rational approximation with one Halley refinement.
double normal_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
          c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

void SimSpec::validate() const {
  if (n < 2 || p < 1) throw std::invalid_argument("n >= 2, p >= 1 required");
  if (block_size < 1) throw std::invalid_argument("block_size must be >= 1");
  if (rho < 0.0 || rho >= 1.0)
    throw std::invalid_argument("rho must be in [0,1)");
  if (!(maf_lo > 0.0 && maf_lo <= maf_hi && maf_hi <= 0.5))
    throw std::invalid_argument("maf bounds must satisfy 0 < lo <= hi <= 0.5");
  if (n_causal < 0 || n_causal > p)
    throw std::invalid_argument("n_causal must be in [0, p]");
  if (effect_sd < 0.0) throw std::invalid_argument("effect_sd must be >= 0");
}

Eigen::MatrixXd simulate_genotypes(const SimSpec& spec) {
  spec.validate();
  Eigen::MatrixXd X(spec.n, spec.p);
  const int n_blocks = (spec.p + spec.block_size - 1) / spec.block_size;
  const double ar_noise = std::sqrt(1.0 - spec.rho * spec.rho);

  parallel_for(n_blocks, [&](std::int64_t b) {
    std::mt19937_64 rng(mix_seed(spec.seed, static_cast<std::uint64_t>(b)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(spec.maf_lo, spec.maf_hi);

    const int lo = static_cast<int>(b) * spec.block_size;
    const int hi = std::min(spec.p, lo + spec.block_size);
    Eigen::MatrixXd lat1(spec.n, hi - lo), lat2(spec.n, hi - lo);
    for (int c = 0; c < hi - lo; ++c) {
      for (int i = 0; i < spec.n; ++i) {
        const double e1 = gauss(rng), e2 = gauss(rng);
        if (c == 0) {
          lat1(i, c) = e1;
          lat2(i, c) = e2;
        } else {
          lat1(i, c) = spec.rho * lat1(i, c - 1) + ar_noise * e1;
          lat2(i, c) = spec.rho * lat2(i, c - 1) + ar_noise * e2;
        }
      }
    }
    for (int c = 0; c < hi - lo; ++c) {
      const int col = lo + c;
      double f = unif(rng);
      double t = normal_quantile(1.0 - f);
      for (int i = 0; i < spec.n; ++i)
        X(i, col) = (lat1(i, c) > t ? 1.0 : 0.0) + (lat2(i, c) > t ? 1.0 : 0.0);

      // redraw degenerate columns with fresh sub-seeds
      int attempt = 0;
      while ((X.col(col).array() == X(0, col)).all()) {
        if (++attempt > 10)
          throw NumericalError("could not draw a non-constant genotype column " +
                               std::to_string(col));
        std::mt19937_64 rng2(mix_seed(
            spec.seed, 0x5eedULL + static_cast<std::uint64_t>(col) * 16 +
                           static_cast<std::uint64_t>(attempt)));
        std::normal_distribution<double> g2(0.0, 1.0);
        std::uniform_real_distribution<double> u2(spec.maf_lo, spec.maf_hi);
        f = u2(rng2);
        t = normal_quantile(1.0 - f);
        for (int i = 0; i < spec.n; ++i)
          X(i, col) =
              (g2(rng2) > t ? 1.0 : 0.0) + (g2(rng2) > t ? 1.0 : 0.0);
      }
    }
  });
  return X;
}

std::pair<VariableSet, Eigen::VectorXd> sample_causal_effects(
    const SimSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(mix_seed(spec.seed, 0xca05a1ULL));
  // partial Fisher-Yates for a uniform draw without replacement
  std::vector<int> all(spec.p);
  for (int j = 0; j < spec.p; ++j) all[j] = j;
  for (int i = 0; i < spec.n_causal; ++i) {
    std::uniform_int_distribution<int> pick(i, spec.p - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  std::vector<int> causal(all.begin(), all.begin() + spec.n_causal);

  Eigen::VectorXd effects(spec.n_causal);
  if (spec.effect_sd == 0.0) {
    effects.setZero();
  } else {
    std::normal_distribution<double> gauss(0.0, spec.effect_sd);
    for (int i = 0; i < spec.n_causal; ++i) effects[i] = gauss(rng);
  }

  // effects follow the sorted order of the causal index set
  VariableSet cs(causal);
  Eigen::VectorXd ordered(spec.n_causal);
  int k = 0;
  for (int j : cs) {
    for (int i = 0; i < spec.n_causal; ++i)
      if (causal[i] == j) ordered[k] = effects[i];
    ++k;
  }
  return {cs, ordered};
}

Eigen::VectorXd simulate_phenotype(const Eigen::MatrixXd& X,
                                   const VariableSet& causal,
                                   const Eigen::VectorXd& effects,
                                   std::uint64_t seed, double offset) {
  if (causal.size() != effects.size())
    throw std::invalid_argument("causal set and effects disagree in length");
  const Eigen::Index n = X.rows();
  Eigen::VectorXd eta = Eigen::VectorXd::Constant(n, offset);
  int k = 0;
  for (int j : causal) {
    Eigen::VectorXd z = X.col(j).array() - X.col(j).mean();
    const double sd = std::sqrt(z.squaredNorm() / (n - 1.0));
    if (sd <= 0.0)
      throw std::invalid_argument("constant causal column " +
                                  std::to_string(j));
    eta += (effects[k++] / sd) * z;
  }
  std::mt19937_64 rng(mix_seed(seed, 0x9e40ULL));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i)
    y[i] = unif(rng) < sigmoid(eta[i]) ? 1.0 : 0.0;
  return y;
}

}  // namespace nlpsel
