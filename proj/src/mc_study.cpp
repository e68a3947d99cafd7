#include "levyou/mc_study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

#include "levyou/special_functions.hpp"

namespace levyou {

int worker_threads() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("LEVY_OU_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) hw = std::min<long>(hw, cap);
  }
  return hw;
}

namespace {

// Runs fn(i) for i in [0, count) across worker threads; each index owns its
// own output slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int threads = std::min<std::size_t>(worker_threads(), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

EstimatorStats summarize(const std::vector<double>& values) {
  EstimatorStats stats;
  stats.n_used = static_cast<int>(values.size());
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / values.size();
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
    stats.std_error = std::sqrt(ss / (values.size() - 1));
  }
  return stats;
}

OUParams validate(const StudyConfig& config) {
  if (config.n_paths < 2) throw std::domain_error("StudyConfig: need n_paths >= 2");
  if (config.n_obs < static_cast<std::size_t>(config.d) + 2) {
    throw std::domain_error("StudyConfig: need n_obs >= d + 2");
  }
  if (!(config.lambda > 0.0)) throw std::domain_error("StudyConfig: lambda must be positive");
  return OUParams(config.mu, config.sigma2, config.lambda, config.delta);
}

}  // namespace

StudyReport run_study(const StudyConfig& config) {
  const OUParams params = validate(config);
  const LevyOUModel model = LevyOUModel::from_moments(config.family, params.mu, params.sigma2);

  std::vector<MomentEstimates> estimates(config.n_paths);
  std::vector<std::size_t> warnings(config.n_paths, 0);
  parallel_for(config.n_paths, [&](std::size_t p) {
    RandomSource rng(config.seed, p + 1);
    PathResult path = simulate_path(model, params.lambda, config.n_obs, params.delta,
                                    rng, config.trunc);
    warnings[p] = path.truncation_warnings;
    estimates[p] = estimate_all(path.series, config.d);
  });

  StudyReport report;
  report.config = config;
  std::vector<double> mu, s2, l1, l2;
  for (const auto& est : estimates) {
    mu.push_back(est.mu_hat);
    s2.push_back(est.sigma2_hat);
    if (est.lambda1.defined()) {
      l1.push_back(est.lambda1.value);
      report.lambda1_clamped += est.lambda1.status == LambdaStatus::Clamped ? 1 : 0;
    } else {
      ++report.lambda1_undefined;
    }
    if (est.lambda2.defined()) {
      l2.push_back(est.lambda2.value);
      report.lambda2_clamped += est.lambda2.status == LambdaStatus::Clamped ? 1 : 0;
    }
  }
  report.mu_hat = summarize(mu);
  report.sigma2_hat = summarize(s2);
  report.lambda1_hat = summarize(l1);
  report.lambda2_hat = summarize(l2);
  for (std::size_t w : warnings) report.truncation_warnings += w;
  return report;
}

namespace {

double sample_skewness(const std::vector<double>& x) {
  const EstimatorStats s = summarize(x);
  if (x.size() < 3 || s.std_error == 0.0) return 0.0;
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= x.size();
  m3 /= x.size();
  return m3 / std::pow(m2, 1.5);
}

double sample_excess_kurtosis(const std::vector<double>& x) {
  const EstimatorStats s = summarize(x);
  if (x.size() < 4 || s.std_error == 0.0) return 0.0;
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - s.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= x.size();
  m4 /= x.size();
  return m4 / (m2 * m2) - 3.0;
}

double ks_against_normal(std::vector<double> z) {
  std::sort(z.begin(), z.end());
  const double n = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double cdf = normal_cdf(z[i]);
    d = std::max(d, std::abs((i + 1.0) / n - cdf));
    d = std::max(d, std::abs(cdf - i / n));
  }
  return d;
}

CoordinateNormality normality_of(const std::string& name, const std::vector<double>& raw,
                                 double truth) {
  CoordinateNormality out;
  out.name = name;
  out.n_used = static_cast<int>(raw.size());
  const EstimatorStats s = summarize(raw);
  out.mean = s.mean;
  out.sd = s.std_error;
  if (s.std_error == 0.0) return out;
  std::vector<double> standardized;
  standardized.reserve(raw.size());
  for (double v : raw) standardized.push_back((v - truth) / s.std_error);
  out.skewness = sample_skewness(standardized);
  out.excess_kurtosis = sample_excess_kurtosis(standardized);
  out.ks_statistic = ks_against_normal(standardized);
  return out;
}

}  // namespace

NormalityReport clt_check(const StudyConfig& config, int n_reps) {
  if (n_reps < 100) throw std::domain_error("clt_check: need n_reps >= 100");
  StudyConfig cfg = config;
  cfg.n_paths = n_reps;
  const OUParams params = validate(cfg);
  const LevyOUModel model = LevyOUModel::from_moments(cfg.family, params.mu, params.sigma2);

  std::vector<MomentEstimates> estimates(static_cast<std::size_t>(n_reps));
  parallel_for(static_cast<std::size_t>(n_reps), [&](std::size_t p) {
    RandomSource rng(cfg.seed, p + 1);
    PathResult path = simulate_path(model, params.lambda, cfg.n_obs, params.delta, rng, cfg.trunc);
    estimates[p] = estimate_all(path.series, cfg.d);
  });

  std::vector<double> mu, s2, l2;
  for (const auto& est : estimates) {
    mu.push_back(est.mu_hat);
    s2.push_back(est.sigma2_hat);
    if (est.lambda2.status == LambdaStatus::Ok) l2.push_back(est.lambda2.value);
  }

  NormalityReport report;
  report.config = cfg;
  report.n_reps = n_reps;
  report.coordinates.push_back(normality_of("mu", mu, cfg.mu));
  report.coordinates.push_back(normality_of("sigma2", s2, cfg.sigma2));
  report.coordinates.push_back(normality_of("lambda2", l2, cfg.lambda));
  return report;
}

}  // namespace levyou
