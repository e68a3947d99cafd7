#pragma once

namespace levyou {

/// Principal-branch Lambert W on [0, inf): the w >= 0 with w*exp(w) == x.
/// Residual |w*exp(w) - x| <= 1e-12 * max(1, x). Throws std::domain_error
/// for negative or non-finite input.
double lambert_w0(double x);

/// Upper-tail probability P(chi^2_dof > x), absolute error <= 1e-10.
double chi_square_sf(double x, int dof);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
double regularized_gamma_q(double s, double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal quantile, p in (0, 1).
double normal_quantile(double p);

}  // namespace levyou
