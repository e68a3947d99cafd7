#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "levyou/model.hpp"
#include "levyou/random.hpp"

namespace levyou {

/// Truncation policy for the shot-noise series. Terms stop once the bound
/// Gamma_L^{-1}(alpha_i / T) * e^T drops below tail_tol (the inverse tail
/// mass is nonincreasing, so every later term is smaller), or after
/// max_terms terms with the budget flag raised.
struct SeriesTruncation {
  std::size_t max_terms = 10000;
  double tail_tol = 1e-10;

  SeriesTruncation() = default;
  SeriesTruncation(std::size_t max_terms_, double tail_tol_);
};

/// Equally spaced observations with step delta.
struct TimeSeries {
  Eigen::VectorXd values;
  double delta;

  TimeSeries(Eigen::VectorXd values_, double delta_);
  Eigen::Index size() const { return values.size(); }
};

struct IncrementDraw {
  double value = 0.0;
  bool budget_exceeded = false;
};

struct PathResult {
  TimeSeries series;
  std::size_t truncation_warnings = 0;
};

/// Draw from int_0^delta e^{lambda s} dL_{lambda s}, equal in law (after the
/// substitution u = lambda s) to int_0^T e^u dL_u with T = lambda * delta.
/// Uses the series sum_i Gamma_L^{-1}(alpha_i / T) e^{T r_i} with unit-rate
/// Poisson arrivals alpha_i and iid uniform r_i, truncated per `trunc`.
IncrementDraw sample_increment_integral(const LevyOUModel& model, double lambda,
                                        double delta, RandomSource& rng,
                                        const SeriesTruncation& trunc);

/// Exact draw of the same integral for the gamma BDLP, which is compound
/// Poisson: N ~ Poisson(a T) jumps at uniform times with Exp(b) sizes,
/// returning sum_i x_i e^{u_i}. Serves as the distributional oracle for the
/// series sampler.
double sample_cp_gamma_increment(double a, double b, double lambda, double delta,
                                 RandomSource& rng);

/// Exact draw from the stationary law: Gamma(a, b) or IG(a, b). Bypasses the
/// slowly converging infinite-horizon series.
double sample_stationary_initial(const LevyOUModel& model, RandomSource& rng);

/// Path of n observations at step delta: stationary start, then
/// Y_{k+1} = e^{-lambda delta} (Y_k + increment) with a fresh increment draw
/// per step. All values stay positive for a subordinator BDLP.
PathResult simulate_path(const LevyOUModel& model, double lambda, std::size_t n,
                         double delta, RandomSource& rng,
                         const SeriesTruncation& trunc = SeriesTruncation());

}  // namespace levyou
