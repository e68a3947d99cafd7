#include "levyou/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace levyou {

std::vector<double> poisson_arrivals(RandomSource& rng, double horizon) {
  if (!(horizon > 0.0)) {
    throw std::domain_error("poisson_arrivals: horizon must be positive");
  }
  std::vector<double> times;
  double t = rng.exponential();
  while (t <= horizon) {
    times.push_back(t);
    t += rng.exponential();
  }
  return times;
}

long poisson_count(RandomSource& rng, double mean) {
  if (!(mean >= 0.0)) {
    throw std::domain_error("poisson_count: mean must be nonnegative");
  }
  long n = 0;
  double sum = rng.exponential();
  while (sum <= mean) {
    ++n;
    sum += rng.exponential();
  }
  return n;
}

double sample_gamma(RandomSource& rng, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("sample_gamma: shape and rate must be positive");
  }
  // Shape below one: draw Gamma(shape + 1) and scale by U^(1/shape).
  if (shape < 1.0) {
    const double u = rng.uniform();
    return sample_gamma(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

double sample_inverse_gaussian(RandomSource& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("sample_inverse_gaussian: parameters must be positive");
  }
  // IG(a, b) has mean mu = a/b and shape parameter lambda = a^2 in the
  // (mean, shape) parameterization.
  const double mu = a / b;
  const double lambda = a * a;
  const double nu = rng.normal();
  const double y = nu * nu;
  const double x = mu + mu * mu * y / (2.0 * lambda) -
                   (mu / (2.0 * lambda)) * std::sqrt(4.0 * mu * lambda * y + mu * mu * y * y);
  const double u = rng.uniform();
  if (u <= mu / (mu + x)) return x;
  return mu * mu / x;
}

}  // namespace levyou
