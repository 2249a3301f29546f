#include "devtopo/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "devtopo/text.hpp"

namespace devtopo {

std::string_view to_string(Indicator ind) {
  switch (ind) {
    case Indicator::GDP: return "GDP";
    case Indicator::LE: return "LE";
    case Indicator::IM: return "IM";
    case Indicator::GNI: return "GNI";
  }
  return "?";
}

std::optional<Indicator> parse_indicator(std::string_view code) {
  for (auto ind : kAllIndicators)
    if (to_string(ind) == code) return ind;
  return std::nullopt;
}

int favorability(Indicator ind) { return ind == Indicator::IM ? -1 : +1; }

std::vector<Indicator> parse_indicator_list(std::string_view list) {
  std::vector<Indicator> out;
  for (auto tok : text::split(list, ',')) {
    auto ind = parse_indicator(tok);
    if (!ind) throw std::invalid_argument("unknown indicator '" + std::string(tok) + "'");
    if (std::find(out.begin(), out.end(), *ind) != out.end())
      throw std::invalid_argument("duplicate indicator '" + std::string(tok) + "'");
    out.push_back(*ind);
  }
  if (out.empty()) throw std::invalid_argument("empty indicator list");
  return out;
}

namespace {

int current_year() {
  using namespace std::chrono;
  return static_cast<int>(year_month_day{floor<days>(system_clock::now())}.year());
}

bool is_iso2(std::string_view s) {
  return s.size() == 2 && std::all_of(s.begin(), s.end(), [](char c) {
           return c >= 'A' && c <= 'Z';
         });
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

// False for an input with no non-blank line.
bool expect_header(std::istream& in, std::size_t& line_no,
                   std::initializer_list<std::string_view> names) {
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = text::trim(text::strip_bom(line));
    if (body.empty()) continue;
    auto cols = text::split(body);
    if (!std::equal(cols.begin(), cols.end(), names.begin(), names.end())) {
      std::string want;
      for (auto n : names) want += (want.empty() ? "" : ",") + std::string(n);
      throw ParseError(line_no, "malformed header, expected '" + want + "'");
    }
    return true;
  }
  return false;
}

}  // namespace

std::vector<Observation> parse_observations(std::istream& in) {
  std::size_t line_no = 0;
  if (!expect_header(in, line_no, {"country", "indicator", "year", "value"})) return {};

  const int max_year = current_year();
  std::vector<Observation> out;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = text::trim(line);
    if (body.empty()) continue;
    auto cols = text::split(body);
    if (cols.size() != 4) throw ParseError(line_no, "expected 4 fields");

    if (!is_iso2(cols[0]))
      throw ParseError(line_no, "invalid ISO2 country code '" + std::string(cols[0]) + "'");
    auto ind = parse_indicator(cols[1]);
    if (!ind) throw ParseError(line_no, "unknown indicator '" + std::string(cols[1]) + "'");
    int year = 0;
    if (!parse_number(cols[2], year))
      throw ParseError(line_no, "non-integer year '" + std::string(cols[2]) + "'");
    if (year < 1900 || year > max_year)
      throw ParseError(line_no, "year out of range: " + std::to_string(year));
    if (cols[3].empty()) continue;
    double value = 0;
    if (!parse_number(cols[3], value))
      throw ParseError(line_no, "non-numeric value '" + std::string(cols[3]) + "'");
    if (!std::isfinite(value)) throw ParseError(line_no, "non-finite value");
    out.push_back({std::string(cols[0]), *ind, year, value});
  }
  return out;
}

LatestMap select_latest(std::span<const Observation> observations) {
  LatestMap latest;
  for (const auto& obs : observations) {
    auto [it, inserted] =
        latest.try_emplace({obs.country, obs.indicator}, LatestValue{obs.value, obs.year});
    if (!inserted && obs.year >= it->second.year) it->second = {obs.value, obs.year};
  }
  return latest;
}

std::optional<std::size_t> IndicatorDataset::index_of(std::string_view iso2) const {
  auto it = std::lower_bound(countries.begin(), countries.end(), iso2);
  if (it == countries.end() || *it != iso2) return std::nullopt;
  return static_cast<std::size_t>(it - countries.begin());
}

std::optional<std::size_t> IndicatorDataset::column_of(Indicator ind) const {
  auto it = std::find(indicators.begin(), indicators.end(), ind);
  if (it == indicators.end()) return std::nullopt;
  return static_cast<std::size_t>(it - indicators.begin());
}

IndicatorDataset build_dataset(const LatestMap& latest,
                               std::span<const Indicator> indicators) {
  if (indicators.empty()) throw std::invalid_argument("indicator set is empty");

  std::set<std::string> candidates;
  for (const auto& [key, _] : latest) candidates.insert(key.first);

  IndicatorDataset ds;
  ds.indicators.assign(indicators.begin(), indicators.end());
  for (const auto& c : candidates) {
    bool complete = std::all_of(indicators.begin(), indicators.end(), [&](Indicator ind) {
      return latest.contains({c, ind});
    });
    if (complete) ds.countries.push_back(c);
  }
  if (ds.countries.empty()) throw std::runtime_error("empty dataset");

  const std::size_t n = ds.countries.size(), m = indicators.size();
  ds.raw_values = Grid<double>(n, m);
  ds.years = Grid<int>(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& lv = latest.at({ds.countries[i], indicators[j]});
      ds.raw_values(i, j) = lv.value;
      ds.years(i, j) = lv.year;
    }
  }
  ds.attenuated_values = ds.raw_values;
  ds.values = Grid<double>(n, m);
  ds.clamp.assign(m, std::nullopt);
  return ds;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

IndicatorDataset attenuate(IndicatorDataset ds, double k,
                           std::span<const Indicator> columns) {
  if (!(k > 0)) throw std::invalid_argument("attenuation multiplier must be positive");
  for (auto ind : columns) {
    auto col = ds.column_of(ind);
    if (!col)
      throw std::invalid_argument("attenuation column " + std::string(to_string(ind)) +
                                  " is not in the indicator set");
    const auto raw = ds.raw_values.column(*col);
    const double mu = mean(raw);
    const double sd = sample_stddev(raw);
    if (sd == 0.0) continue;
    const ClampBounds b{mu - k * sd, mu + k * sd};
    ds.clamp[*col] = b;
    for (std::size_t i = 0; i < ds.size(); ++i)
      ds.attenuated_values(i, *col) = std::clamp(raw[i], b.lo, b.hi);
  }
  ds.scaled = false;
  return ds;
}

IndicatorDataset scale_normative(IndicatorDataset ds, std::vector<std::string>* warnings) {
  const std::size_t n = ds.size();
  for (std::size_t j = 0; j < ds.dims(); ++j) {
    const auto col = ds.attenuated_values.column(j);
    const auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi == lo) {
      for (std::size_t i = 0; i < n; ++i) ds.values(i, j) = 0.0;
      if (warnings)
        warnings->push_back("indicator " + std::string(to_string(ds.indicators[j])) +
                            " is constant; scaled to 0");
      continue;
    }
    const bool favorable_high = favorability(ds.indicators[j]) > 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = (col[i] - lo) / (hi - lo);
      // Exact endpoints regardless of round-off in t.
      double v = favorable_high ? 2.0 * t - 1.0 : 1.0 - 2.0 * t;
      if (col[i] == lo) v = favorable_high ? -1.0 : 1.0;
      if (col[i] == hi) v = favorable_high ? 1.0 : -1.0;
      ds.values(i, j) = std::clamp(v, -1.0, 1.0);
    }
  }
  ds.scaled = true;
  return ds;
}

SummaryStats summary(const IndicatorDataset& ds) {
  SummaryStats s;
  for (std::size_t j = 0; j < ds.dims(); ++j) {
    const auto raw = ds.raw_values.column(j);
    const auto scaled = ds.values.column(j);
    const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
    s.columns.push_back({ds.indicators[j], *hi, *lo, median(raw), mean(raw),
                         sample_stddev(raw), mean(scaled)});
  }
  return s;
}

std::vector<BorderEdge> parse_borders(std::istream& in) {
  std::size_t line_no = 0;
  if (!expect_header(in, line_no, {"country_a", "country_b"})) return {};
  std::vector<BorderEdge> out;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = text::trim(line);
    if (body.empty()) continue;
    auto cols = text::split(body);
    if (cols.size() != 2) throw ParseError(line_no, "expected 2 fields");
    for (auto c : cols)
      if (!is_iso2(c))
        throw ParseError(line_no, "invalid ISO2 country code '" + std::string(c) + "'");
    out.emplace_back(std::string(cols[0]), std::string(cols[1]));
  }
  return out;
}

void write_dataset_csv(std::ostream& out, const IndicatorDataset& ds) {
  out << "country";
  for (auto ind : ds.indicators) out << ',' << to_string(ind);
  out << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out << ds.countries[i];
    for (std::size_t j = 0; j < ds.dims(); ++j) out << ',' << text::fixed6(ds.values(i, j));
    out << '\n';
  }
}

}  // namespace devtopo
