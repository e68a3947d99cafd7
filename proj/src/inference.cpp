#include "levyou/inference.hpp"

#include <cmath>

#include "levyou/special_functions.hpp"

namespace levyou {

Eigen::VectorXd psi_vector(const MomentEstimates& estimates) {
  const Eigen::Index d1 = estimates.acf.gamma_hat.size();
  Eigen::VectorXd psi(d1 + 1);
  psi[0] = estimates.mu_hat;
  psi.tail(d1) = estimates.acf.gamma_hat;
  return psi;
}

int default_bandwidth(Eigen::Index n) {
  return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

Eigen::MatrixXd z_series(const TimeSeries& series, int d) {
  const Eigen::Index n = series.size();
  if (d < 0 || d >= n) throw std::domain_error("z_series: need 0 <= d < n");
  const Eigen::Index m = n - d;
  Eigen::MatrixXd z(m, d + 2);
  const Eigen::VectorXd centered = series.values.array() - series.values.mean();
  z.col(0) = series.values.head(m);
  for (int h = 0; h <= d; ++h) {
    z.col(1 + h) = centered.segment(h, m).cwiseProduct(centered.head(m));
  }
  return z;
}

Eigen::MatrixXd estimate_sigma(const TimeSeries& series, int d, int bandwidth,
                               bool* eigen_clipped) {
  const Eigen::Index n = series.size();
  if (d < 0 || d >= n) throw std::domain_error("estimate_sigma: need 0 <= d < n");
  const Eigen::Index m = n - d;
  if (bandwidth < 0 || bandwidth >= m) {
    throw std::domain_error("estimate_sigma: bandwidth must lie in [0, n-d)");
  }

  Eigen::MatrixXd z = z_series(series, d);
  const Eigen::RowVectorXd z_mean = z.colwise().mean();
  z.rowwise() -= z_mean;

  Eigen::MatrixXd sigma = z.transpose() * z / static_cast<double>(m);
  for (int j = 1; j <= bandwidth; ++j) {
    const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1);
    const Eigen::MatrixXd cj =
        z.topRows(m - j).transpose() * z.bottomRows(m - j) / static_cast<double>(m);
    sigma.noalias() += w * (cj + cj.transpose());
  }
  sigma = 0.5 * (sigma + sigma.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double scale = std::max(1.0, std::abs(ev[ev.size() - 1]));
  if (eigen_clipped) *eigen_clipped = ev[0] < -1e-10 * scale;
  if (ev[0] < 0.0) {
    sigma = es.eigenvectors() * ev.cwiseMax(0.0).asDiagonal() * es.eigenvectors().transpose();
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
  }
  return sigma;
}

Eigen::MatrixXd rho_jacobian(const Eigen::VectorXd& psi) {
  const Eigen::Index d = psi.size() - 2;
  const double g0 = psi[1];
  if (!(g0 > 0.0)) throw std::domain_error("rho_jacobian: gamma_hat(0) must be positive");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d + 1, d + 2);
  for (Eigen::Index h = 1; h <= d; ++h) {
    jac(h, 1) = -psi[1 + h] / (g0 * g0);
    jac(h, 1 + h) = 1.0 / g0;
  }
  return jac;
}

Eigen::MatrixXd sigma_rho(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& psi) {
  const Eigen::MatrixXd jac = rho_jacobian(psi);
  return jac * sigma * jac.transpose();
}

namespace {

// lambda_hat_2 evaluated on the autocorrelations implied by psi.
LambdaEstimate lambda_from_psi(const Eigen::VectorXd& psi, int d, double delta) {
  AcfEstimate acf;
  acf.d = static_cast<int>(psi.size()) - 2;
  acf.n = 0;
  acf.gamma_hat = psi.tail(psi.size() - 1);
  if (acf.gamma_hat[0] > 0.0) acf.rho_hat = acf.gamma_hat / acf.gamma_hat[0];
  return lambda_hat_2(acf, d, delta);
}

}  // namespace

Eigen::MatrixXd theta_jacobian(const Eigen::VectorXd& psi, int d, double delta) {
  if (psi.size() < d + 2) throw std::domain_error("theta_jacobian: psi too short for d lags");
  if (!(psi[1] > 0.0)) throw std::domain_error("theta_jacobian: gamma_hat(0) must be positive");

  const LambdaEstimate lam = lambda_from_psi(psi, d, delta);
  if (lam.status != LambdaStatus::Ok) {
    throw ClampedEstimatorError(
        "theta_jacobian: lambda_hat_2 clamped at zero; delta method undefined at the boundary");
  }

  const Eigen::VectorXd rho = psi.tail(psi.size() - 1) / psi[1];

  // Implicit differentiation of the first-order condition at the minimizer:
  // dF/drho_h = -(h D e^{-lam h D}) / sum_h (h D)^2 e^{-lam h D} (2 e^{-lam h D} - rho_h).
  double denom = 0.0;
  for (int h = 1; h <= d; ++h) {
    const double hd = h * delta;
    const double e = std::exp(-lam.value * hd);
    denom += hd * hd * e * (2.0 * e - rho[h]);
  }

  Eigen::VectorXd df_drho = Eigen::VectorXd::Zero(psi.size() - 1);
  if (std::abs(denom) > 1e-12) {
    for (int h = 1; h <= d; ++h) {
      const double hd = h * delta;
      df_drho[h] = -hd * std::exp(-lam.value * hd) / denom;
    }
  } else {
    // Degenerate curvature: fall back to central differences of the argmin map.
    for (int h = 1; h <= d; ++h) {
      const double step = 1e-6 * std::max(1.0, std::abs(rho[h]));
      AcfEstimate acf;
      acf.d = static_cast<int>(rho.size()) - 1;
      acf.n = 0;
      acf.rho_hat = rho;
      acf.gamma_hat = rho;  // unused by lambda_hat_2 beyond rho
      acf.rho_hat[h] = rho[h] + step;
      const double up = lambda_hat_2(acf, d, delta, lam.value).value;
      acf.rho_hat[h] = rho[h] - step;
      const double down = lambda_hat_2(acf, d, delta, lam.value).value;
      df_drho[h] = (up - down) / (2.0 * step);
    }
  }

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3, psi.size());
  jac(0, 0) = 1.0;
  jac(1, 1) = 2.0;
  jac.row(2) = df_drho.transpose() * rho_jacobian(psi);
  return jac;
}

Eigen::MatrixXd sigma_theta(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& psi,
                            int d, double delta) {
  const Eigen::MatrixXd jac = theta_jacobian(psi, d, delta);
  Eigen::MatrixXd out = jac * sigma * jac.transpose();
  return 0.5 * (out + out.transpose()).eval();
}

std::array<std::pair<double, double>, 3> confidence_intervals(
    const MomentEstimates& estimates, const Eigen::MatrixXd& sigma_theta_mat,
    double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("confidence_intervals: level must lie in (0, 1)");
  }
  if (estimates.lambda2.status == LambdaStatus::Clamped) {
    throw ClampedEstimatorError("confidence_intervals: lambda_hat_2 clamped at zero");
  }
  if (!estimates.lambda2.defined()) {
    throw std::domain_error("confidence_intervals: lambda_hat_2 undefined");
  }
  const double n = static_cast<double>(estimates.acf.n);
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double theta[3] = {estimates.mu_hat, estimates.sigma2_hat, estimates.lambda2.value};

  std::array<std::pair<double, double>, 3> out;
  for (int i = 0; i < 3; ++i) {
    const double se = std::sqrt(std::max(0.0, sigma_theta_mat(i, i)) / n);
    double lo = theta[i] - z * se;
    double hi = theta[i] + z * se;
    if (i > 0) lo = std::max(0.0, lo);
    out[i] = {lo, hi};
  }
  return out;
}

}  // namespace levyou
