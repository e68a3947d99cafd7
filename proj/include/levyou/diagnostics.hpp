#pragma once

#include <Eigen/Dense>

#include "levyou/estimate.hpp"
#include "levyou/simulate.hpp"

namespace levyou {

struct LjungBoxResult {
  double statistic = 0.0;
  int lags = 0;
  double p_value = 1.0;
};

/// One-step-ahead point predictions with bootstrap quantile bounds.
struct PredictionBand {
  Eigen::VectorXd point;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  int n_paths = 0;
  std::size_t truncation_warnings = 0;
};

/// Model-implied autocorrelations (e^{-lambda delta}, ..., e^{-lambda d delta}).
Eigen::VectorXd theoretical_acf(double lambda, double delta, int d);

/// One-step conditional-mean residuals of the OU recursion:
/// r_i = Y_{i+1} - e^{-lambda delta} Y_i - mu (1 - e^{-lambda delta}).
/// Length n-1. Requires an unclamped lambda_hat_2.
Eigen::VectorXd residuals(const TimeSeries& series, const MomentEstimates& estimates);

/// Ljung-Box portmanteau statistic Q = n(n+2) sum_{k<=m} rho_k^2 / (n-k) on
/// the given sequence with p-value from chi^2_m. Callers pass squared
/// residuals for the variance-dynamics test.
LjungBoxResult ljung_box(const Eigen::VectorXd& x, int m);

/// For each observation Y_i, draws n_paths one-step values
/// e^{-lambda delta}(Y_i + increment); point is their mean, the bounds are
/// the 2.5% / 97.5% interpolated empirical quantiles.
PredictionBand predict_one_step(const LevyOUModel& model, double lambda, double delta,
                                const TimeSeries& history, int n_paths,
                                RandomSource& rng,
                                const SeriesTruncation& trunc = SeriesTruncation());

}  // namespace levyou
