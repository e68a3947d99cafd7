#include "levyou/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace levyou {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t start = 0;
    while (start < field.size() && field[start] == ' ') ++start;
    fields.push_back(field.substr(start));
  }
  return fields;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed CSV: cannot parse " + what + " '" + s + "'");
  }
  if (pos != s.size()) {
    throw std::runtime_error("malformed CSV: trailing characters in " + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

TimeSeries read_series_csv(const std::string& path, std::optional<double> delta,
                           bool take_log) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV file '" + path + "'");
  const std::vector<std::string> header = split_csv_line(line);

  int value_col = -1, time_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "value") value_col = static_cast<int>(i);
    if (header[i] == "time") time_col = static_cast<int>(i);
  }
  if (value_col < 0) throw std::runtime_error("malformed CSV: no 'value' column in '" + path + "'");

  std::vector<double> values;
  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) <= value_col ||
        (time_col >= 0 && static_cast<int>(fields.size()) <= time_col)) {
      throw std::runtime_error("malformed CSV: short row in '" + path + "'");
    }
    values.push_back(parse_double(fields[value_col], "value"));
    if (time_col >= 0) times.push_back(parse_double(fields[time_col], "time"));
  }
  if (values.empty()) throw std::runtime_error("CSV has no observations: '" + path + "'");

  double step = delta.value_or(1.0);
  if (!times.empty() && times.size() >= 2) {
    const double inferred = times[1] - times[0];
    if (!(inferred > 0.0)) throw std::runtime_error("time column must be increasing");
    const double scale = std::max(1.0, std::abs(inferred));
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (std::abs((times[i] - times[i - 1]) - inferred) > 1e-9 * scale) {
        throw std::runtime_error("time column is not equally spaced");
      }
    }
    if (delta && std::abs(*delta - inferred) > 1e-9 * scale) {
      throw std::runtime_error("time column step disagrees with --delta");
    }
    step = inferred;
  }

  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    double x = values[i];
    if (take_log) {
      if (!(x > 0.0)) throw std::runtime_error("--log requires strictly positive values");
      x = std::log(x);
    }
    v[static_cast<Eigen::Index>(i)] = x;
  }
  return TimeSeries(std::move(v), step);
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "value\n";
  char buf[64];
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace levyou
