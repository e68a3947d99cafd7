#include "levyou/estimate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyou {

const Eigen::VectorXd& AcfEstimate::rho() const {
  if (!rho_defined()) {
    throw std::domain_error("AcfEstimate: autocorrelations undefined for a zero-variance series");
  }
  return rho_hat;
}

double sample_mean(const TimeSeries& series) { return series.values.mean(); }

AcfEstimate sample_acf(const TimeSeries& series, int d) {
  const Eigen::Index n = series.size();
  if (d < 0) throw std::domain_error("sample_acf: d must be nonnegative");
  if (d >= n) throw std::domain_error("sample_acf: need d < n");

  AcfEstimate acf;
  acf.n = n;
  acf.d = d;
  const Eigen::VectorXd centered = series.values.array() - series.values.mean();
  acf.gamma_hat.resize(d + 1);
  for (int h = 0; h <= d; ++h) {
    acf.gamma_hat[h] = centered.head(n - h).dot(centered.tail(n - h)) / static_cast<double>(n);
  }
  if (acf.gamma_hat[0] > 0.0) {
    acf.rho_hat = acf.gamma_hat / acf.gamma_hat[0];
  }
  return acf;
}

double sigma2_estimate(const AcfEstimate& acf) {
  if (acf.gamma_hat.size() < 1) throw std::domain_error("sigma2_estimate: empty estimate");
  return 2.0 * acf.gamma_hat[0];
}

LambdaEstimate lambda_hat_1(const AcfEstimate& acf, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("lambda_hat_1: delta must be positive");
  if (acf.d < 1) throw std::domain_error("lambda_hat_1: need lag-1 autocorrelation");
  if (!acf.rho_defined()) return {std::numeric_limits<double>::quiet_NaN(), LambdaStatus::Undefined};
  const double r1 = acf.rho_hat[1];
  if (r1 >= 1.0) return {0.0, LambdaStatus::Clamped};
  if (r1 <= 0.0) return {std::numeric_limits<double>::quiet_NaN(), LambdaStatus::Undefined};
  return {-std::log(r1) / delta, LambdaStatus::Ok};
}

double lambda_search_max(double delta) {
  return -std::log(std::numeric_limits<double>::epsilon()) / delta;
}

double acf_fit_objective(const Eigen::VectorXd& rho, int d, double delta, double lambda) {
  double sum = 0.0;
  for (int h = 1; h <= d; ++h) {
    const double diff = rho[h] - std::exp(-lambda * h * delta);
    sum += diff * diff;
  }
  return sum;
}

namespace {

// Half the objective derivative: g(lambda) = sum_h (rho_h - e^{-lambda h D}) h D e^{-lambda h D}.
double acf_fit_foc(const Eigen::VectorXd& rho, int d, double delta, double lambda) {
  double g = 0.0;
  for (int h = 1; h <= d; ++h) {
    const double hd = h * delta;
    const double e = std::exp(-lambda * hd);
    g += (rho[h] - e) * hd * e;
  }
  return g;
}

double acf_fit_foc_deriv(const Eigen::VectorXd& rho, int d, double delta, double lambda) {
  double gp = 0.0;
  for (int h = 1; h <= d; ++h) {
    const double hd = h * delta;
    const double e = std::exp(-lambda * hd);
    gp += hd * hd * e * (2.0 * e - rho[h]);
  }
  return gp;
}

// Brent's bounded scalar minimizer started from x0 in [a, b].
template <typename F>
double brent_minimize(F&& f, double a, double b, double x0, double tol) {
  constexpr double golden = 0.3819660112501051;
  double x = std::clamp(x0, a, b);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double step = 0.0, prev_step = 0.0;

  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    const double tol1 = tol + 1e-14 * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) break;

    bool parabolic_ok = false;
    if (std::abs(prev_step) > tol1) {
      // Parabola through (x, fx), (w, fw), (v, fv).
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      if (std::abs(p) < std::abs(0.5 * q * prev_step) && p > q * (a - x) && p < q * (b - x)) {
        prev_step = step;
        step = p / q;
        const double u = x + step;
        if (u - a < tol2 || b - u < tol2) step = (x < m) ? tol1 : -tol1;
        parabolic_ok = true;
      }
    }
    if (!parabolic_ok) {
      prev_step = (x < m) ? b - x : a - x;
      step = golden * prev_step;
    }

    const double u = (std::abs(step) >= tol1) ? x + step : x + ((step > 0.0) ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x) b = x; else a = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return x;
}

}  // namespace

LambdaEstimate lambda_hat_2(const AcfEstimate& acf, int d, double delta,
                            std::optional<double> init) {
  if (!(delta > 0.0)) throw std::domain_error("lambda_hat_2: delta must be positive");
  if (d < 1 || d > acf.d) throw std::domain_error("lambda_hat_2: need 1 <= d <= acf.d");
  if (!acf.rho_defined()) return {std::numeric_limits<double>::quiet_NaN(), LambdaStatus::Undefined};

  const Eigen::VectorXd& rho = acf.rho_hat;
  const double lam_max = lambda_search_max(delta);
  const auto objective = [&](double lam) { return acf_fit_objective(rho, d, delta, lam); };

  double x0 = 0.5 * lam_max;
  if (init) {
    x0 = *init;
  } else {
    const LambdaEstimate l1 = lambda_hat_1(acf, delta);
    if (l1.status == LambdaStatus::Ok) x0 = l1.value;
  }

  double best = brent_minimize(objective, 0.0, lam_max, x0, 1e-9);
  double f_best = objective(best);
  for (const double cand : {0.0, lam_max}) {
    const double fc = objective(cand);
    if (fc < f_best) {
      best = cand;
      f_best = fc;
    }
  }

  // Newton polish on the first-order condition: sharpens the minimizer to
  // machine precision, which the delta-method Jacobian checks rely on.
  // Accepted whenever the FOC residual shrinks (the objective itself is flat
  // to rounding near the minimum).
  if (best > 0.0 && best < lam_max) {
    double lam = best;
    for (int it = 0; it < 4; ++it) {
      const double gp = acf_fit_foc_deriv(rho, d, delta, lam);
      if (!(gp > 0.0)) break;
      const double next = lam - acf_fit_foc(rho, d, delta, lam) / gp;
      if (!(next > 0.0) || !(next < lam_max) || !std::isfinite(next)) break;
      lam = next;
    }
    if (std::abs(acf_fit_foc(rho, d, delta, lam)) <=
        std::abs(acf_fit_foc(rho, d, delta, best))) {
      best = lam;
    }
  }

  if (best <= 1e-8) return {0.0, LambdaStatus::Clamped};
  return {best, LambdaStatus::Ok};
}

MomentEstimates estimate_all(const TimeSeries& series, int d) {
  if (d < 1) throw std::domain_error("estimate_all: d must be >= 1");
  MomentEstimates est;
  est.delta = series.delta;
  est.acf = sample_acf(series, d);
  est.mu_hat = sample_mean(series);
  est.sigma2_hat = sigma2_estimate(est.acf);
  est.lambda1 = lambda_hat_1(est.acf, series.delta);
  est.lambda2 = lambda_hat_2(est.acf, d, series.delta);
  return est;
}

}  // namespace levyou
