#include "levyou/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "levyou/samplers.hpp"

namespace levyou {

SeriesTruncation::SeriesTruncation(std::size_t max_terms_, double tail_tol_)
    : max_terms(max_terms_), tail_tol(tail_tol_) {
  if (max_terms < 1) throw std::domain_error("SeriesTruncation: max_terms must be >= 1");
  if (!(tail_tol > 0.0)) throw std::domain_error("SeriesTruncation: tail_tol must be positive");
}

TimeSeries::TimeSeries(Eigen::VectorXd values_, double delta_)
    : values(std::move(values_)), delta(delta_) {
  if (values.size() < 1) throw std::domain_error("TimeSeries: need at least one value");
  if (!(delta > 0.0)) throw std::domain_error("TimeSeries: delta must be positive");
  if (!values.allFinite()) throw std::domain_error("TimeSeries: values must be finite");
}

IncrementDraw sample_increment_integral(const LevyOUModel& model, double lambda,
                                        double delta, RandomSource& rng,
                                        const SeriesTruncation& trunc) {
  if (!(lambda > 0.0) || !(delta > 0.0)) {
    throw std::domain_error("sample_increment_integral: lambda and delta must be positive");
  }
  const double horizon = lambda * delta;
  const double envelope = std::exp(horizon);  // f(u) = e^u <= e^T on [0, T]

  IncrementDraw draw;
  double arrival = 0.0;
  for (std::size_t i = 0; i < trunc.max_terms; ++i) {
    arrival += rng.exponential();
    const double jump = inverse_tail_mass(model, arrival / horizon);
    if (jump * envelope < trunc.tail_tol) return draw;
    const double r = rng.uniform();
    draw.value += jump * std::exp(horizon * r);
  }
  draw.budget_exceeded = true;
  return draw;
}

double sample_cp_gamma_increment(double a, double b, double lambda, double delta,
                                 RandomSource& rng) {
  if (!(a > 0.0) || !(b > 0.0) || lambda < 0.0 || delta < 0.0) {
    throw std::domain_error("sample_cp_gamma_increment: invalid parameters");
  }
  const double horizon = lambda * delta;
  const long n_jumps = poisson_count(rng, a * horizon);
  double sum = 0.0;
  for (long i = 0; i < n_jumps; ++i) {
    const double u = horizon * rng.uniform();
    const double x = rng.exponential() / b;  // Gamma(1, b) jump
    sum += x * std::exp(u);
  }
  return sum;
}

double sample_stationary_initial(const LevyOUModel& model, RandomSource& rng) {
  if (model.family == Family::Gamma) return sample_gamma(rng, model.a, model.b);
  return sample_inverse_gaussian(rng, model.a, model.b);
}

PathResult simulate_path(const LevyOUModel& model, double lambda, std::size_t n,
                         double delta, RandomSource& rng,
                         const SeriesTruncation& trunc) {
  if (n < 1) throw std::domain_error("simulate_path: n must be >= 1");
  if (!(lambda > 0.0) || !(delta > 0.0)) {
    throw std::domain_error("simulate_path: lambda and delta must be positive");
  }
  Eigen::VectorXd values(static_cast<Eigen::Index>(n));
  values[0] = sample_stationary_initial(model, rng);
  const double decay = std::exp(-lambda * delta);
  std::size_t warnings = 0;
  for (std::size_t k = 1; k < n; ++k) {
    const IncrementDraw inc = sample_increment_integral(model, lambda, delta, rng, trunc);
    warnings += inc.budget_exceeded ? 1 : 0;
    values[static_cast<Eigen::Index>(k)] =
        decay * (values[static_cast<Eigen::Index>(k - 1)] + inc.value);
  }
  return PathResult{TimeSeries(std::move(values), delta), warnings};
}

}  // namespace levyou
