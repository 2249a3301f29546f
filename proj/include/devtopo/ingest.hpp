#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "devtopo/grid.hpp"

namespace devtopo {

enum class Indicator { GDP, LE, IM, GNI };

inline constexpr Indicator kAllIndicators[] = {Indicator::GDP, Indicator::LE,
                                               Indicator::IM, Indicator::GNI};

std::string_view to_string(Indicator ind);
std::optional<Indicator> parse_indicator(std::string_view code);

// +1 when a larger raw value is more favorable, -1 otherwise (infant mortality).
int favorability(Indicator ind);

// Parses a comma-separated indicator list such as "GDP,LE".
std::vector<Indicator> parse_indicator_list(std::string_view list);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct Observation {
  std::string country;  // ISO2
  Indicator indicator;
  int year;
  double value;

  friend bool operator==(const Observation&, const Observation&) = default;
};

struct LatestValue {
  double value;
  int year;
};

using CountryIndicator = std::pair<std::string, Indicator>;
using LatestMap = std::map<CountryIndicator, LatestValue>;

// Reads the long-format table `country,indicator,year,value`. Rows whose value
// cell is empty are skipped.
std::vector<Observation> parse_observations(std::istream& in);

// Keeps the most recent year per (country, indicator); on equal years the
// later row in input order wins.
LatestMap select_latest(std::span<const Observation> observations);

struct ClampBounds {
  double lo;
  double hi;
};

// One row per country (sorted by ISO2), one column per indicator.
//   raw_values        values as read, never modified
//   attenuated_values raw values after outlier clamping (equal to raw until
//                     attenuate() runs)
//   values            normative [-1, 1] values, filled by scale_normative()
struct IndicatorDataset {
  std::vector<std::string> countries;
  std::vector<Indicator> indicators;
  Grid<double> values;
  Grid<double> raw_values;
  Grid<double> attenuated_values;
  Grid<int> years;
  std::vector<std::optional<ClampBounds>> clamp;  // per column
  bool scaled = false;

  std::size_t size() const noexcept { return countries.size(); }
  std::size_t dims() const noexcept { return indicators.size(); }
  std::optional<std::size_t> index_of(std::string_view iso2) const;
  std::optional<std::size_t> column_of(Indicator ind) const;
};

IndicatorDataset build_dataset(const LatestMap& latest,
                               std::span<const Indicator> indicators);

// Clamps each selected column to mean +/- k * stddev, where mean and sample
// stddev come from the column's raw values. Bounds are computed from the raw
// column every time, so repeated calls leave the data unchanged.
IndicatorDataset attenuate(IndicatorDataset ds, double k,
                           std::span<const Indicator> columns);

// Min-max rescale of the attenuated columns to [-1, 1] with the favorable end
// at +1. Constant columns map to 0 and add a message to `warnings`.
IndicatorDataset scale_normative(IndicatorDataset ds,
                                 std::vector<std::string>* warnings = nullptr);

struct IndicatorStats {
  Indicator indicator;
  double max;
  double min;
  double median;
  double mean;
  double stddev;
  double scaled_mean;
};

struct SummaryStats {
  std::vector<IndicatorStats> columns;
};

SummaryStats summary(const IndicatorDataset& ds);

// Sample (n - 1) standard deviation; 0 for fewer than two values.
double sample_stddev(std::span<const double> xs);
double mean(std::span<const double> xs);
double median(std::vector<double> xs);

using BorderEdge = std::pair<std::string, std::string>;

// Reads `country_a,country_b` rows.
std::vector<BorderEdge> parse_borders(std::istream& in);

// `country,<indicator>...` with scaled values at 6 decimals.
void write_dataset_csv(std::ostream& out, const IndicatorDataset& ds);

}  // namespace devtopo
