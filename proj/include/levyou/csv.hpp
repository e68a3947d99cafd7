#pragma once

#include <optional>
#include <string>

#include "levyou/simulate.hpp"

namespace levyou {

/// Reads a series from CSV with a `value` column and optional `time` column.
/// A time column must be equally spaced to 1e-9 relative tolerance; its step
/// is cross-checked against `delta` when both are available. `take_log`
/// applies the natural log to the values, rejecting non-positive entries.
TimeSeries read_series_csv(const std::string& path, std::optional<double> delta,
                           bool take_log = false);

/// Writes the series as a single `value` column with 17 significant digits
/// (round-trip exact) and LF line endings.
void write_series_csv(const std::string& path, const TimeSeries& series);

}  // namespace levyou
