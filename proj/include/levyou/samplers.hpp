#pragma once

#include <vector>

#include "levyou/random.hpp"

namespace levyou {

/// Arrival times of a unit-rate Poisson process on (0, horizon]: the partial
/// sums of unit exponentials, stopping at the first sum past the horizon
/// (that overshoot excluded). Strictly increasing, possibly empty.
std::vector<double> poisson_arrivals(RandomSource& rng, double horizon);

/// Poisson(mean) count via the exponential-sum construction, mean >= 0.
/// Cost is O(mean) draws.
long poisson_count(RandomSource& rng, double mean);

/// Gamma(shape, rate) draw, density ~ x^(shape-1) exp(-rate x).
/// Marsaglia-Tsang rejection; shape < 1 goes through the shape+1 boost.
double sample_gamma(RandomSource& rng, double shape, double rate);

/// Inverse-Gaussian draw in the (a, b) parameterization with mean a/b and
/// variance a/b^3, by the Michael-Schucany-Haas two-root transformation.
double sample_inverse_gaussian(RandomSource& rng, double a, double b);

}  // namespace levyou
