// levy-ou: simulate, estimate, study and diagnose Levy-driven OU processes.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>

#include "levyou/csv.hpp"
#include "levyou/diagnostics.hpp"
#include "levyou/inference.hpp"
#include "levyou/mc_study.hpp"
#include "levyou/version.hpp"

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void fail(int code, const std::string& error_code, const std::string& message) {
  json err;
  err["schema"] = 1;
  err["error"] = {{"code", error_code}, {"message", message}};
  std::cerr << err.dump() << "\n";
  std::exit(code);
}

json manifest(const std::string& command, const json& params, std::uint64_t seed) {
  json m;
  m["schema"] = 1;
  m["command"] = command;
  m["version"] = levyou::kVersion;
  m["seed"] = seed;
  m["params"] = params;
  m["timestamp"] = iso_timestamp();
  return m;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string lambda_status_name(levyou::LambdaStatus s) {
  switch (s) {
    case levyou::LambdaStatus::Ok: return "ok";
    case levyou::LambdaStatus::Clamped: return "clamped";
    default: return "undefined";
  }
}

json lambda_to_json(const levyou::LambdaEstimate& l) {
  json j;
  j["status"] = lambda_status_name(l.status);
  if (l.defined()) {
    j["value"] = l.value;
  } else {
    j["value"] = nullptr;
  }
  return j;
}

json estimates_to_json(const levyou::MomentEstimates& est) {
  json j;
  j["mu_hat"] = est.mu_hat;
  j["sigma2_hat"] = est.sigma2_hat;
  j["lambda1_hat"] = lambda_to_json(est.lambda1);
  j["lambda2_hat"] = lambda_to_json(est.lambda2);
  j["nonstationary"] = est.nonstationary();
  json acf;
  acf["gamma"] = to_std(est.acf.gamma_hat);
  if (est.acf.rho_defined()) {
    acf["rho"] = to_std(est.acf.rho_hat);
  } else {
    acf["rho"] = nullptr;
  }
  j["acf"] = acf;
  return j;
}

struct SimulateArgs {
  std::string family = "gamma";
  double mu = 0.0, sigma2 = 0.0, lambda = 0.0, delta = 0.0;
  std::uint64_t n = 0, seed = 0;
  double tail_tol = 1e-10;
  std::uint64_t max_terms = 10000;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const levyou::OUParams theta(a.mu, a.sigma2, a.lambda, a.delta);
  const levyou::LevyOUModel model = levyou::LevyOUModel::from_moments(
      levyou::family_from_name(a.family), theta.mu, theta.sigma2);
  levyou::RandomSource rng(a.seed);
  const levyou::SeriesTruncation trunc(a.max_terms, a.tail_tol);
  const levyou::PathResult path =
      levyou::simulate_path(model, theta.lambda, a.n, theta.delta, rng, trunc);
  levyou::write_series_csv(a.out, path.series);

  json params = {{"family", a.family}, {"mu", a.mu},       {"sigma2", a.sigma2},
                 {"lambda", a.lambda}, {"n", a.n},         {"delta", a.delta},
                 {"tail_tol", a.tail_tol}, {"max_terms", a.max_terms}};
  json m = manifest("simulate", params, a.seed);
  m["output"] = a.out;
  m["truncation_warnings"] = path.truncation_warnings;
  std::cout << m.dump(2) << "\n";
  return 0;
}

struct EstimateArgs {
  std::string in;
  std::optional<double> delta;
  int lags = 10;
  std::optional<double> ci_level;
  std::optional<int> bandwidth;
  bool take_log = false;
};

int run_estimate(const EstimateArgs& a) {
  const levyou::TimeSeries series = levyou::read_series_csv(a.in, a.delta, a.take_log);
  const levyou::MomentEstimates est = levyou::estimate_all(series, a.lags);

  json report = estimates_to_json(est);
  report["schema"] = 1;
  report["command"] = "estimate";
  report["n"] = static_cast<long>(series.size());
  report["delta"] = series.delta;
  report["lags"] = a.lags;

  if (a.ci_level) {
    const int bw = a.bandwidth.value_or(levyou::default_bandwidth(series.size()));
    bool clipped = false;
    const Eigen::MatrixXd sigma = levyou::estimate_sigma(series, a.lags, bw, &clipped);
    const Eigen::VectorXd psi = levyou::psi_vector(est);
    const Eigen::MatrixXd st = levyou::sigma_theta(sigma, psi, a.lags, series.delta);
    const auto intervals = levyou::confidence_intervals(est, st, *a.ci_level);
    json ci;
    ci["level"] = *a.ci_level;
    ci["bandwidth"] = bw;
    ci["eigenvalues_clipped"] = clipped;
    ci["sigma_theta"] = matrix_to_json(st);
    ci["intervals"] = {{"mu", {intervals[0].first, intervals[0].second}},
                       {"sigma2", {intervals[1].first, intervals[1].second}},
                       {"lambda", {intervals[2].first, intervals[2].second}}};
    report["ci"] = ci;
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

struct StudyArgs {
  std::string family = "gamma";
  double mu = 2.0, sigma2 = 0.25, lambda = 0.5, delta = 0.1;
  std::uint64_t n_obs = 1000, seed = 1;
  int n_paths = 100, lags = 10;
  double tail_tol = 1e-10;
  std::uint64_t max_terms = 10000;
};

void print_study_table(const levyou::StudyConfig& cfg, const levyou::StudyReport& rep) {
  char line[160];
  std::printf("%-18s %-16s %-20s %s\n", "True Values", "Est. Values", "Sample Std. Error",
              "Comments");
  const auto row = [&](const std::string& truth, const levyou::EstimatorStats& s,
                       const char* comment) {
    std::snprintf(line, sizeof(line), "%-18s %-16.7g %-20.7g %s", truth.c_str(), s.mean,
                  s.std_error, comment);
    std::printf("%s\n", line);
  };
  row("mu=" + std::to_string(cfg.mu), rep.mu_hat, "-");
  row("sigma2=" + std::to_string(cfg.sigma2), rep.sigma2_hat, "-");
  row("lambda=" + std::to_string(cfg.lambda), rep.lambda1_hat, "lambda_hat = lambda_1");
  row("lambda=" + std::to_string(cfg.lambda), rep.lambda2_hat, "lambda_hat = lambda_2");
}

json stats_to_json(const levyou::EstimatorStats& s) {
  return {{"mean", s.mean}, {"std_error", s.std_error}, {"n_used", s.n_used}};
}

int run_mc_study(const StudyArgs& a) {
  levyou::StudyConfig cfg;
  cfg.family = levyou::family_from_name(a.family);
  cfg.mu = a.mu;
  cfg.sigma2 = a.sigma2;
  cfg.lambda = a.lambda;
  cfg.n_obs = a.n_obs;
  cfg.delta = a.delta;
  cfg.n_paths = a.n_paths;
  cfg.d = a.lags;
  cfg.seed = a.seed;
  cfg.trunc = levyou::SeriesTruncation(a.max_terms, a.tail_tol);

  const levyou::StudyReport rep = levyou::run_study(cfg);
  print_study_table(cfg, rep);

  json j;
  j["schema"] = 1;
  j["command"] = "mc-study";
  j["config"] = {{"family", a.family},   {"mu", a.mu},
                 {"sigma2", a.sigma2},   {"lambda", a.lambda},
                 {"n_obs", a.n_obs},     {"delta", a.delta},
                 {"n_paths", a.n_paths}, {"lags", a.lags},
                 {"seed", a.seed},       {"tail_tol", a.tail_tol},
                 {"max_terms", a.max_terms}};
  j["estimators"] = {{"mu", stats_to_json(rep.mu_hat)},
                     {"sigma2", stats_to_json(rep.sigma2_hat)},
                     {"lambda1", stats_to_json(rep.lambda1_hat)},
                     {"lambda2", stats_to_json(rep.lambda2_hat)}};
  j["counts"] = {{"lambda1_undefined", rep.lambda1_undefined},
                 {"lambda1_clamped", rep.lambda1_clamped},
                 {"lambda2_clamped", rep.lambda2_clamped},
                 {"truncation_warnings", rep.truncation_warnings}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct DiagnoseArgs {
  std::string in;
  std::optional<double> delta;
  int lags = 10;
  std::string family = "gamma";
  bool take_log = false;
  std::string plot_prefix;
};

int run_diagnose(const DiagnoseArgs& a) {
  const levyou::TimeSeries series = levyou::read_series_csv(a.in, a.delta, a.take_log);
  const levyou::MomentEstimates est = levyou::estimate_all(series, a.lags);
  if (est.lambda2.status != levyou::LambdaStatus::Ok) {
    fail(kExitDomain, "clamped_estimator",
         "lambda_hat_2 is clamped or undefined; no valid residual model");
  }

  const Eigen::VectorXd theo =
      levyou::theoretical_acf(est.lambda2.value, series.delta, a.lags);
  const Eigen::VectorXd res = levyou::residuals(series, est);
  const levyou::TimeSeries res_series(res, series.delta);
  const levyou::AcfEstimate res_acf = levyou::sample_acf(res_series, a.lags);
  const levyou::LjungBoxResult lb = levyou::ljung_box(res.cwiseProduct(res), a.lags);

  json j;
  j["schema"] = 1;
  j["command"] = "diagnose";
  j["n"] = static_cast<long>(series.size());
  j["delta"] = series.delta;
  j["lags"] = a.lags;
  j["family"] = a.family;
  j["estimates"] = estimates_to_json(est);
  json pairs = json::array();
  for (int h = 1; h <= a.lags; ++h) {
    pairs.push_back({{"lag", h},
                     {"empirical", est.acf.rho_hat[h]},
                     {"theoretical", theo[h - 1]}});
  }
  j["acf_pairs"] = pairs;
  j["residuals"] = to_std(res);
  j["residual_acf"] =
      res_acf.rho_defined() ? json(to_std(res_acf.rho_hat)) : json(nullptr);
  j["ljung_box"] = {{"statistic", lb.statistic}, {"lags", lb.lags}, {"p_value", lb.p_value}};
  std::cout << j.dump(2) << "\n";

  if (!a.plot_prefix.empty()) {
    std::ofstream acf_csv(a.plot_prefix + "_acf.csv");
    acf_csv << "lag,empirical,theoretical\n";
    for (int h = 1; h <= a.lags; ++h) {
      acf_csv << h << ',' << est.acf.rho_hat[h] << ',' << theo[h - 1] << '\n';
    }
    std::ofstream res_csv(a.plot_prefix + "_residuals.csv");
    res_csv << "index,residual\n";
    for (Eigen::Index i = 0; i < res.size(); ++i) res_csv << i + 1 << ',' << res[i] << '\n';
  }
  return 0;
}

struct PredictArgs {
  std::string in;
  std::optional<double> delta;
  std::string family = "gamma";
  int n_paths = 50;
  int lags = 10;
  std::uint64_t seed = 1;
  double tail_tol = 1e-10;
  std::uint64_t max_terms = 10000;
  bool take_log = false;
  std::string out;
};

int run_predict(const PredictArgs& a) {
  const levyou::TimeSeries series = levyou::read_series_csv(a.in, a.delta, a.take_log);
  const levyou::MomentEstimates est = levyou::estimate_all(series, a.lags);
  if (est.lambda2.status != levyou::LambdaStatus::Ok) {
    fail(kExitDomain, "clamped_estimator",
         "fit failed: lambda_hat_2 is clamped or undefined");
  }
  if (!(est.mu_hat > 0.0) || !(est.sigma2_hat > 0.0)) {
    fail(kExitDomain, "invalid_fit", "fitted moments do not define a subordinator model");
  }
  const levyou::LevyOUModel model = levyou::LevyOUModel::from_moments(
      levyou::family_from_name(a.family), est.mu_hat, est.sigma2_hat);
  levyou::RandomSource rng(a.seed);
  const levyou::SeriesTruncation trunc(a.max_terms, a.tail_tol);
  const levyou::PredictionBand band = levyou::predict_one_step(
      model, est.lambda2.value, series.delta, series, a.n_paths, rng, trunc);

  const auto write_band = [&](std::ostream& os) {
    os << "point,lower,upper\n";
    char buf[128];
    for (Eigen::Index i = 0; i < band.point.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", band.point[i], band.lower[i],
                    band.upper[i]);
      os << buf << '\n';
    }
  };

  if (a.out.empty()) {
    write_band(std::cout);
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) fail(kExitDomain, "io_error", "cannot write '" + a.out + "'");
    write_band(out);
    json params = {{"in", a.in},           {"family", a.family},
                   {"n_paths", a.n_paths}, {"lags", a.lags},
                   {"delta", series.delta}, {"tail_tol", a.tail_tol},
                   {"max_terms", a.max_terms}};
    json m = manifest("predict", params, a.seed);
    m["output"] = a.out;
    m["fitted"] = {{"mu_hat", est.mu_hat},
                   {"sigma2_hat", est.sigma2_hat},
                   {"lambda2_hat", est.lambda2.value}};
    m["truncation_warnings"] = band.truncation_warnings;
    std::cout << m.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy-driven Ornstein-Uhlenbeck processes: simulation, method-of-moments "
               "estimation, Monte Carlo studies and diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(levyou::kVersion));

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand("simulate", "Simulate a path to CSV");
  c_sim->add_option("--family", sim.family, "BDLP family: gamma or ig")
      ->check(CLI::IsMember({"gamma", "ig"}));
  c_sim->add_option("--mu", sim.mu, "Mean of L_1")->required();
  c_sim->add_option("--sigma2", sim.sigma2, "Variance of L_1")->required();
  c_sim->add_option("--lambda", sim.lambda, "Mean reversion rate")->required();
  c_sim->add_option("--n", sim.n, "Number of observations")
      ->required()
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--delta", sim.delta, "Sampling step")->required();
  c_sim->add_option("--seed", sim.seed, "RNG seed")->required();
  c_sim->add_option("--tail-tol", sim.tail_tol, "Series tail tolerance");
  c_sim->add_option("--max-terms", sim.max_terms, "Series term budget")
      ->check(CLI::PositiveNumber);
  c_sim->add_option("--out", sim.out, "Output CSV path")->required();

  EstimateArgs est;
  CLI::App* c_est = app.add_subcommand("estimate", "Method-of-moments estimates from CSV");
  c_est->add_option("--in", est.in, "Input CSV")->required();
  c_est->add_option("--delta", est.delta, "Sampling step")->required();
  c_est->add_option("--lags", est.lags, "ACF lags d")->check(CLI::PositiveNumber);
  c_est->add_option("--ci", est.ci_level, "Confidence level in (0,1)");
  c_est->add_option("--bandwidth", est.bandwidth, "HAC bandwidth (default 4(n/100)^(2/9))");
  c_est->add_flag("--log", est.take_log, "Apply natural log to inputs");

  StudyArgs study;
  CLI::App* c_study = app.add_subcommand("mc-study", "Monte Carlo study of the estimators");
  c_study->add_option("--family", study.family)->check(CLI::IsMember({"gamma", "ig"}));
  c_study->add_option("--mu", study.mu);
  c_study->add_option("--sigma2", study.sigma2);
  c_study->add_option("--lambda", study.lambda);
  c_study->add_option("--n-obs", study.n_obs)->check(CLI::PositiveNumber);
  c_study->add_option("--delta", study.delta);
  c_study->add_option("--n-paths", study.n_paths)->check(CLI::Range(2, 1000000));
  c_study->add_option("--lags", study.lags)->check(CLI::PositiveNumber);
  c_study->add_option("--seed", study.seed);
  c_study->add_option("--tail-tol", study.tail_tol);
  c_study->add_option("--max-terms", study.max_terms)->check(CLI::PositiveNumber);

  DiagnoseArgs diag;
  CLI::App* c_diag = app.add_subcommand("diagnose", "ACF comparison, residuals, Ljung-Box");
  c_diag->add_option("--in", diag.in)->required();
  c_diag->add_option("--delta", diag.delta)->required();
  c_diag->add_option("--lags", diag.lags)->check(CLI::PositiveNumber);
  c_diag->add_option("--family", diag.family)->check(CLI::IsMember({"gamma", "ig"}));
  c_diag->add_flag("--log", diag.take_log);
  c_diag->add_option("--plot-csv", diag.plot_prefix, "Prefix for plot-ready CSV files");

  PredictArgs pred;
  CLI::App* c_pred = app.add_subcommand("predict", "One-step-ahead bootstrap bands");
  c_pred->add_option("--in", pred.in)->required();
  c_pred->add_option("--delta", pred.delta)->required();
  c_pred->add_option("--family", pred.family)->check(CLI::IsMember({"gamma", "ig"}));
  c_pred->add_option("--n-paths", pred.n_paths)->check(CLI::Range(2, 1000000));
  c_pred->add_option("--lags", pred.lags)->check(CLI::PositiveNumber);
  c_pred->add_option("--seed", pred.seed);
  c_pred->add_option("--tail-tol", pred.tail_tol);
  c_pred->add_option("--max-terms", pred.max_terms)->check(CLI::PositiveNumber);
  c_pred->add_flag("--log", pred.take_log);
  c_pred->add_option("--out", pred.out, "Output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["schema"] = 1;
    err["error"] = {{"code", "invalid_flags"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (c_sim->parsed()) return run_simulate(sim);
    if (c_est->parsed()) return run_estimate(est);
    if (c_study->parsed()) return run_mc_study(study);
    if (c_diag->parsed()) return run_diagnose(diag);
    if (c_pred->parsed()) return run_predict(pred);
  } catch (const levyou::ClampedEstimatorError& e) {
    fail(kExitDomain, "clamped_estimator", e.what());
  } catch (const std::domain_error& e) {
    fail(kExitDomain, "domain_error", e.what());
  } catch (const std::exception& e) {
    fail(kExitDomain, "error", e.what());
  }
  return 0;
}
