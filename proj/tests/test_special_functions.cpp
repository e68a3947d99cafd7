#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "levyou/random.hpp"
#include "levyou/samplers.hpp"
#include "levyou/special_functions.hpp"
#include "test_util.hpp"

using namespace levyou;

TEST_CASE("lambert_w0 fixed points") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
  // Independent Newton oracle for W(1).
  const double oracle = testutil::lambert_w_newton(1.0);
  CHECK(oracle == doctest::Approx(0.5671432904097838).epsilon(1e-13));
  CHECK(lambert_w0(1.0) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("lambert_w0 round trip and monotonicity on log grid") {
  double prev = -1.0;
  for (int i = 0; i < 200; ++i) {
    const double x = std::pow(10.0, -8.0 + 16.0 * i / 199.0);
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("lambert_w0 domain errors") {
  CHECK_THROWS_AS(lambert_w0(-1e-12), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(lambert_w0(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("chi_square_sf closed forms and quadrature oracle") {
  CHECK(chi_square_sf(0.0, 1) == 1.0);
  CHECK(chi_square_sf(0.0, 7) == 1.0);
  // dof 2 is exponential with rate 1/2.
  CHECK(chi_square_sf(2.0 * std::log(2.0), 2) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(chi_square_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-13));

  // Numerical integration of the chi^2_10 density as oracle.
  const auto density10 = [](double x) {
    return std::pow(x, 4.0) * std::exp(-0.5 * x) / (32.0 * 24.0);
  };
  const double oracle = testutil::adaptive_simpson(density10, 18.307, 120.0, 1e-13);
  CHECK(oracle == doctest::Approx(0.050).epsilon(2e-3));
  CHECK(chi_square_sf(18.307, 10) == doctest::Approx(oracle).epsilon(1e-9));

  const auto density3 = [](double x) {
    return std::sqrt(x) * std::exp(-0.5 * x) / (std::sqrt(2.0 * M_PI));
  };
  const double oracle3 = testutil::adaptive_simpson(density3, 5.0, 120.0, 1e-13);
  CHECK(std::abs(chi_square_sf(5.0, 3) - oracle3) <= 1e-10);

  CHECK_THROWS_AS(chi_square_sf(-0.5, 3), std::domain_error);
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::domain_error);
}

TEST_CASE("normal quantile against bisection oracle") {
  // Bisection on normal_cdf(z) = p.
  const auto quantile_oracle = [](double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (lo + hi);
      (normal_cdf(m) < p ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
  for (double p : {0.001, 0.025, 0.31, 0.5, 0.77, 0.95, 0.999}) {
    CHECK(normal_quantile(p) == doctest::Approx(quantile_oracle(p)).epsilon(1e-10));
    CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("RandomSource determinism and stream independence") {
  RandomSource a(12345), b(12345);
  for (int i = 0; i < 128; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomSource root(99);
  RandomSource s1 = root.stream(1);
  RandomSource s2 = root.stream(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += (s1.next_u64() == s2.next_u64()) ? 1 : 0;
  CHECK(same == 0);

  RandomSource u(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("RandomSource normal moments") {
  RandomSource rng(31);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("poisson_arrivals are increasing, bounded, deterministic") {
  RandomSource rng(5);
  const auto times = poisson_arrivals(rng, 10.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(times[i] > 0.0);
    CHECK(times[i] <= 10.0);
    if (i > 0) CHECK(times[i] > times[i - 1]);
  }
  RandomSource r1(77), r2(77);
  CHECK(poisson_arrivals(r1, 10.0) == poisson_arrivals(r2, 10.0));
  CHECK_THROWS_AS(poisson_arrivals(rng, 0.0), std::domain_error);

  // A vanishing horizon yields the empty sequence essentially surely.
  RandomSource tiny(78);
  CHECK(poisson_arrivals(tiny, 1e-12).empty());
}

TEST_CASE("poisson_arrivals count is Poisson distributed (chi-square GOF)") {
  const double horizon = 5.0;
  const int reps = 10000;
  RandomSource rng(2024);
  std::vector<int> counts(32, 0);
  for (int r = 0; r < reps; ++r) {
    const auto times = poisson_arrivals(rng, horizon);
    counts[std::min<std::size_t>(times.size(), 31)]++;
  }
  // Bins 0..11 individually, >= 12 pooled; all expected counts >= 5.
  std::vector<double> expected;
  double pmf = std::exp(-horizon);
  double tail = 1.0;
  for (int k = 0; k <= 11; ++k) {
    expected.push_back(reps * pmf);
    tail -= pmf;
    pmf *= horizon / (k + 1);
  }
  expected.push_back(reps * tail);
  std::vector<double> observed(expected.size(), 0.0);
  for (int k = 0; k <= 11; ++k) observed[k] = counts[k];
  for (std::size_t k = 12; k < counts.size(); ++k) observed.back() += counts[k];

  double q = 0.0;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    q += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
  }
  const double p = chi_square_sf(q, static_cast<int>(expected.size()) - 1);
  CHECK(p > 0.001);
}

TEST_CASE("sample_gamma moments") {
  RandomSource rng(11);
  const int n = 100000;

  SUBCASE("shape 1 is exponential") {
    const double b = 4.0;
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_gamma(rng, 1.0, b);
    const double se = (1.0 / b) / std::sqrt(static_cast<double>(n));
    CHECK(std::abs(testutil::mean_of(draws) - 1.0 / b) < 3.0 * se);
  }
  SUBCASE("shape 32 rate 16") {
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_gamma(rng, 32.0, 16.0);
    // mean a/b = 2, variance a/b^2 = 0.125
    const double se_mean = std::sqrt(0.125 / n);
    CHECK(std::abs(testutil::mean_of(draws) - 2.0) < 3.0 * se_mean);
    CHECK(testutil::variance_of(draws) == doctest::Approx(0.125).epsilon(0.05));
  }
  SUBCASE("shape below one via the boost path") {
    std::vector<double> draws(n);
    for (auto& d : draws) d = sample_gamma(rng, 0.5, 2.0);
    const double se_mean = std::sqrt(0.125 / n);
    CHECK(std::abs(testutil::mean_of(draws) - 0.25) < 3.0 * se_mean);
    CHECK(testutil::variance_of(draws) == doctest::Approx(0.125).epsilon(0.05));
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(sample_gamma(rng, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sample_gamma(rng, 1.0, -2.0), std::domain_error);
  }
}

TEST_CASE("sample_inverse_gaussian moments") {
  RandomSource rng(13);
  const int n = 100000;
  std::vector<double> draws(n);
  for (auto& d : draws) d = sample_inverse_gaussian(rng, 8.0, 4.0);
  // mean a/b = 2, variance a/b^3 = 0.125
  const double se_mean = std::sqrt(0.125 / n);
  CHECK(std::abs(testutil::mean_of(draws) - 2.0) < 3.0 * se_mean);
  CHECK(testutil::variance_of(draws) == doctest::Approx(0.125).epsilon(0.05));
  CHECK_THROWS_AS(sample_inverse_gaussian(rng, -1.0, 1.0), std::domain_error);
}

TEST_CASE("sampler determinism under a fixed seed") {
  RandomSource a(55), b(55);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_gamma(a, 3.2, 1.7) == sample_gamma(b, 3.2, 1.7));
  }
  RandomSource c(56), d(56);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_inverse_gaussian(c, 8.0, 4.0) == sample_inverse_gaussian(d, 8.0, 4.0));
  }
}
