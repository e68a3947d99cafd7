#include "levyou/model.hpp"

#include <cmath>
#include <stdexcept>

#include "levyou/special_functions.hpp"

namespace levyou {

std::string family_name(Family family) {
  return family == Family::Gamma ? "gamma" : "ig";
}

Family family_from_name(const std::string& name) {
  if (name == "gamma") return Family::Gamma;
  if (name == "ig" || name == "inverse-gaussian") return Family::InverseGaussian;
  throw std::domain_error("unknown family '" + name + "' (expected gamma or ig)");
}

LevyOUModel::LevyOUModel(Family family_, double a_, double b_)
    : family(family_), a(a_), b(b_) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("LevyOUModel: a and b must be positive");
  }
}

double LevyOUModel::stationary_variance() const {
  return family == Family::Gamma ? a / (b * b) : a / (b * b * b);
}

LevyOUModel LevyOUModel::from_moments(Family family, double mu, double sigma2) {
  double a, b;
  if (family == Family::Gamma) {
    gamma_params_from_moments(mu, sigma2, a, b);
  } else {
    ig_params_from_moments(mu, sigma2, a, b);
  }
  return LevyOUModel(family, a, b);
}

OUParams::OUParams(double mu_, double sigma2_, double lambda_, double delta_)
    : mu(mu_), sigma2(sigma2_), lambda(lambda_), delta(delta_) {
  if (!(sigma2 > 0.0)) throw std::domain_error("OUParams: sigma2 must be positive");
  if (!(delta > 0.0)) throw std::domain_error("OUParams: delta must be positive");
  if (!(lambda >= 0.0)) throw std::domain_error("OUParams: lambda must be nonnegative");
}

void gamma_params_from_moments(double mu, double sigma2, double& a, double& b) {
  if (!(mu > 0.0) || !(sigma2 > 0.0)) {
    throw std::domain_error("gamma_params_from_moments: mu and sigma2 must be positive");
  }
  a = 2.0 * mu * mu / sigma2;
  b = 2.0 * mu / sigma2;
}

void ig_params_from_moments(double mu, double sigma2, double& a, double& b) {
  if (!(mu > 0.0) || !(sigma2 > 0.0)) {
    throw std::domain_error("ig_params_from_moments: mu and sigma2 must be positive");
  }
  b = std::sqrt(2.0 * mu / sigma2);
  a = mu * b;
}

double inverse_tail_mass(const LevyOUModel& model, double x) {
  if (!(x > 0.0)) throw std::domain_error("inverse_tail_mass: x must be positive");
  if (model.family == Family::Gamma) {
    return std::max(0.0, -std::log(x / model.a) / model.b);
  }
  const double b2 = model.b * model.b;
  const double arg = model.a * model.a * b2 / (2.0 * M_PI * x * x);
  return lambert_w0(arg) / b2;
}

}  // namespace levyou
