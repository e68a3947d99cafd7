#pragma once

#include <string>

namespace levyou {

enum class Family { Gamma, InverseGaussian };

std::string family_name(Family family);
Family family_from_name(const std::string& name);

/// OU model driven by a subordinator, identified by the stationary family
/// and its (a, b) parameters.
///
///   Gamma family:   stationary law Gamma(a, b), mean a/b, variance a/b^2.
///   IG family:      stationary law IG(a, b),    mean a/b, variance a/b^3.
struct LevyOUModel {
  Family family;
  double a;
  double b;

  LevyOUModel(Family family_, double a_, double b_);

  double stationary_mean() const { return a / b; }
  double stationary_variance() const;

  /// Model whose stationary law has the given mean and variance mu, sigma2/2,
  /// i.e. whose driving Levy process has E L_1 = mu and Var L_1 = sigma2.
  static LevyOUModel from_moments(Family family, double mu, double sigma2);
};

/// Statistical parameter triple (mu, sigma2, lambda) plus sampling step.
/// mu and sigma2 are the first two moments of L_1; lambda is the mean
/// reversion rate; lambda == 0 flags a nonstationary fit.
struct OUParams {
  double mu;
  double sigma2;
  double lambda;
  double delta;

  OUParams(double mu_, double sigma2_, double lambda_, double delta_);
};

/// Gamma-family (a, b) from (mu, sigma2): a = 2 mu^2 / sigma2, b = 2 mu / sigma2.
void gamma_params_from_moments(double mu, double sigma2, double& a, double& b);

/// IG-family (a, b) from (mu, sigma2): b = sqrt(2 mu / sigma2), a = mu * b.
void ig_params_from_moments(double mu, double sigma2, double& a, double& b);

/// Generalized inverse of the BDLP tail mass function.
///
///   Gamma: max{0, -(1/b) log(x/a)}
///   IG:    (1/b^2) W(a^2 b^2 / (2 pi x^2))
///
/// Nonincreasing in x and -> 0 as x -> inf. Throws for x <= 0.
double inverse_tail_mass(const LevyOUModel& model, double x);

}  // namespace levyou
