#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <utility>

#include "levyou/estimate.hpp"

namespace levyou {

/// Raised when a delta-method quantity is requested at the lambda = 0
/// boundary, where the argmin map is not differentiable.
struct ClampedEstimatorError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Plug-in vector (mu_hat, gamma_hat(0), ..., gamma_hat(d)).
Eigen::VectorXd psi_vector(const MomentEstimates& estimates);

/// Newey-West style default lag window floor(4 (n/100)^(2/9)).
int default_bandwidth(Eigen::Index n);

/// Plug-in Z-series, one row per usable index i = 1..n-d:
///   Z_i = (Y_i, (Y_i-mu_hat)^2, (Y_{i+1}-mu_hat)(Y_i-mu_hat), ...,
///          (Y_{i+d}-mu_hat)(Y_i-mu_hat)).
Eigen::MatrixXd z_series(const TimeSeries& series, int d);

/// Long-run covariance of the Z-series, estimated as
/// C(0) + sum_{j<=bandwidth} w_j (C(j) + C(j)^T) with Bartlett weights
/// w_j = 1 - j/(bandwidth+1). Symmetric; negative eigenvalues are clipped
/// to zero (flag reported through eigen_clipped when non-null).
Eigen::MatrixXd estimate_sigma(const TimeSeries& series, int d, int bandwidth,
                               bool* eigen_clipped = nullptr);

/// Jacobian of (mu, gamma_0..gamma_d) -> (rho_0..rho_d); the rho_0 row is
/// identically zero.
Eigen::MatrixXd rho_jacobian(const Eigen::VectorXd& psi);

/// Delta-method covariance of rho_hat: J Sigma J^T.
Eigen::MatrixXd sigma_rho(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& psi);

/// Jacobian of H: (mu, gamma_0..gamma_d) -> (mu, 2 gamma_0, F(rho(gamma)))
/// where F is the lambda_hat_2 argmin map, differentiated implicitly through
/// its first-order condition. Throws ClampedEstimatorError when the implied
/// lambda_hat_2 sits at the zero boundary.
Eigen::MatrixXd theta_jacobian(const Eigen::VectorXd& psi, int d, double delta);

/// Delta-method covariance of theta_hat = (mu_hat, sigma2_hat, lambda2_hat).
Eigen::MatrixXd sigma_theta(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& psi,
                            int d, double delta);

/// theta_hat_i +/- z_(1+level)/2 sqrt(sigma_theta_ii / n); the sigma2 and
/// lambda lower bounds are floored at zero.
std::array<std::pair<double, double>, 3> confidence_intervals(
    const MomentEstimates& estimates, const Eigen::MatrixXd& sigma_theta_mat,
    double level);

}  // namespace levyou
