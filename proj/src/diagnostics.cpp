#include "levyou/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "levyou/special_functions.hpp"

namespace levyou {

Eigen::VectorXd theoretical_acf(double lambda, double delta, int d) {
  if (d < 1) throw std::domain_error("theoretical_acf: d must be >= 1");
  if (!(lambda >= 0.0) || !(delta > 0.0)) {
    throw std::domain_error("theoretical_acf: need lambda >= 0 and delta > 0");
  }
  Eigen::VectorXd acf(d);
  for (int h = 1; h <= d; ++h) acf[h - 1] = std::exp(-lambda * h * delta);
  return acf;
}

Eigen::VectorXd residuals(const TimeSeries& series, const MomentEstimates& estimates) {
  const Eigen::Index n = series.size();
  if (n < 2) throw std::domain_error("residuals: need at least two observations");
  if (estimates.lambda2.status != LambdaStatus::Ok) {
    throw std::domain_error("residuals: lambda_hat_2 clamped or undefined");
  }
  const double decay = std::exp(-estimates.lambda2.value * series.delta);
  const double drift = estimates.mu_hat * (1.0 - decay);
  return series.values.tail(n - 1) - decay * series.values.head(n - 1) -
         drift * Eigen::VectorXd::Ones(n - 1);
}

LjungBoxResult ljung_box(const Eigen::VectorXd& x, int m) {
  const Eigen::Index n = x.size();
  if (m < 1 || m >= n) throw std::domain_error("ljung_box: need 1 <= m < n");
  const TimeSeries tmp(x, 1.0);
  const AcfEstimate acf = sample_acf(tmp, m);
  if (!acf.rho_defined()) throw std::domain_error("ljung_box: input has zero variance");

  double q = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double rk = acf.rho_hat[k];
    q += rk * rk / static_cast<double>(n - k);
  }
  q *= static_cast<double>(n) * (n + 2.0);

  LjungBoxResult result;
  result.statistic = q;
  result.lags = m;
  result.p_value = chi_square_sf(q, m);
  return result;
}

namespace {

// Interpolated order-statistic quantile (R type 7) of an already sorted vector.
double sorted_quantile(const std::vector<double>& sorted, double p) {
  const double h = p * (static_cast<double>(sorted.size()) - 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

PredictionBand predict_one_step(const LevyOUModel& model, double lambda, double delta,
                                const TimeSeries& history, int n_paths,
                                RandomSource& rng, const SeriesTruncation& trunc) {
  if (n_paths < 2) throw std::domain_error("predict_one_step: need n_paths >= 2");
  if (!(lambda > 0.0) || !(delta > 0.0)) {
    throw std::domain_error("predict_one_step: lambda and delta must be positive");
  }
  const Eigen::Index n = history.size();
  const double decay = std::exp(-lambda * delta);

  PredictionBand band;
  band.n_paths = n_paths;
  band.point.resize(n);
  band.lower.resize(n);
  band.upper.resize(n);

  std::vector<double> draws(static_cast<std::size_t>(n_paths));
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int p = 0; p < n_paths; ++p) {
      const IncrementDraw inc = sample_increment_integral(model, lambda, delta, rng, trunc);
      band.truncation_warnings += inc.budget_exceeded ? 1 : 0;
      draws[static_cast<std::size_t>(p)] = decay * (history.values[i] + inc.value);
      sum += draws[static_cast<std::size_t>(p)];
    }
    std::sort(draws.begin(), draws.end());
    band.point[i] = sum / n_paths;
    band.lower[i] = sorted_quantile(draws, 0.025);
    band.upper[i] = sorted_quantile(draws, 0.975);
  }
  return band;
}

}  // namespace levyou
