#pragma once

#include <Eigen/Dense>
#include <optional>

#include "levyou/simulate.hpp"

namespace levyou {

/// Sample autocovariances gamma_hat(0..d) with the 1/n normalization,
/// centered at the sample mean, and the autocorrelations rho_hat =
/// gamma_hat / gamma_hat(0). rho_hat is left empty for a zero-variance
/// (constant) series; rho() throws in that case.
struct AcfEstimate {
  Eigen::VectorXd gamma_hat;
  Eigen::VectorXd rho_hat;
  Eigen::Index n = 0;
  int d = 0;

  bool rho_defined() const { return rho_hat.size() > 0; }
  const Eigen::VectorXd& rho() const;
};

enum class LambdaStatus { Ok, Clamped, Undefined };

/// A lambda estimate plus its boundary status. Clamped means the
/// unrestricted minimizer was nonpositive (nonstationarity signal);
/// Undefined means the estimator does not exist for this sample
/// (e.g. rho_hat(1) <= 0 for the log-based estimator).
struct LambdaEstimate {
  double value = 0.0;
  LambdaStatus status = LambdaStatus::Undefined;

  bool defined() const { return status != LambdaStatus::Undefined; }
};

struct MomentEstimates {
  double mu_hat = 0.0;
  double sigma2_hat = 0.0;
  LambdaEstimate lambda1;
  LambdaEstimate lambda2;
  AcfEstimate acf;
  double delta = 1.0;

  /// True iff either lambda estimator was clamped at zero.
  bool nonstationary() const {
    return lambda1.status == LambdaStatus::Clamped ||
           lambda2.status == LambdaStatus::Clamped;
  }
};

double sample_mean(const TimeSeries& series);

AcfEstimate sample_acf(const TimeSeries& series, int d);

/// sigma2_hat = 2 gamma_hat(0): the stationary variance is sigma^2 / 2.
double sigma2_estimate(const AcfEstimate& acf);

/// lambda1 = -log(rho_hat(1)) / delta when rho_hat(1) in (0, 1); clamped to
/// zero when rho_hat(1) >= 1, undefined when rho_hat(1) <= 0.
LambdaEstimate lambda_hat_1(const AcfEstimate& acf, double delta);

/// Least-squares ACF fit: argmin over lambda in [0, lambda_max] of
/// sum_{h=1..d} (rho_hat(h) - exp(-lambda h delta))^2, located by bracketed
/// Brent iteration to 1e-8 and polished on the first-order condition.
/// Initialized at `init` when given, else at lambda1 when defined, else at
/// the midpoint of the search interval.
LambdaEstimate lambda_hat_2(const AcfEstimate& acf, int d, double delta,
                            std::optional<double> init = std::nullopt);

MomentEstimates estimate_all(const TimeSeries& series, int d);

/// Upper end of the lambda search interval: beyond it exp(-lambda delta)
/// underflows double precision.
double lambda_search_max(double delta);

/// The lambda_hat_2 objective sum_{h=1..d} (rho(h) - exp(-lambda h delta))^2.
double acf_fit_objective(const Eigen::VectorXd& rho, int d, double delta, double lambda);

}  // namespace levyou
