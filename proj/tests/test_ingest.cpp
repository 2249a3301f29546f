#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "devtopo/ingest.hpp"

using namespace devtopo;

namespace {

std::vector<Observation> parse(const std::string& body) {
  std::istringstream in("country,indicator,year,value\n" + body);
  return parse_observations(in);
}

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_observations(in);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

// Dataset with one column per (indicator, values) pair; countries AA, AB, ...
IndicatorDataset make_dataset(const std::vector<std::pair<Indicator, std::vector<double>>>& cols) {
  std::vector<Observation> obs;
  for (const auto& [ind, vals] : cols)
    for (std::size_t i = 0; i < vals.size(); ++i) {
      std::string iso{char('A' + i / 26), char('A' + i % 26)};
      obs.push_back({iso, ind, 2015, vals[i]});
    }
  std::vector<Indicator> inds;
  for (const auto& c : cols) inds.push_back(c.first);
  return build_dataset(select_latest(obs), inds);
}

}  // namespace

TEST_SUITE("indicators") {
  TEST_CASE("favorability signs") {
    CHECK(favorability(Indicator::GDP) == 1);
    CHECK(favorability(Indicator::LE) == 1);
    CHECK(favorability(Indicator::GNI) == 1);
    CHECK(favorability(Indicator::IM) == -1);
  }

  TEST_CASE("indicator list parsing") {
    CHECK(parse_indicator_list("GDP,LE") == std::vector{Indicator::GDP, Indicator::LE});
    CHECK(parse_indicator_list("GDP, LE ,IM,GNI").size() == 4);
    CHECK_THROWS(parse_indicator_list("GDP,XX"));
    CHECK_THROWS(parse_indicator_list("GDP,GDP"));
    CHECK_THROWS(parse_indicator_list(""));
    for (auto ind : kAllIndicators) CHECK(parse_indicator(to_string(ind)) == ind);
  }
}

TEST_SUITE("parse_observations") {
  TEST_CASE("row maps to an observation") {
    const auto obs = parse("AF,GDP,2015,1928.0\n");
    REQUIRE(obs.size() == 1);
    CHECK(obs[0] == Observation{"AF", Indicator::GDP, 2015, 1928.0});
  }

  TEST_CASE("empty value cell is skipped") {
    const auto obs = parse("AF,GNI,2011,\nAF,GDP,2015,1928.0\n");
    REQUIRE(obs.size() == 1);
    CHECK(obs[0].indicator == Indicator::GDP);
  }

  TEST_CASE("unknown indicator names the line") {
    const auto msg = error_of("country,indicator,year,value\nAF,GDP,2015,1\nAF,XX,2015,5\n");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("unknown indicator") != std::string::npos);
  }

  TEST_CASE("malformed header") {
    CHECK(error_of("country,indicator,value\nAF,GDP,2015,1\n").find("malformed header") !=
          std::string::npos);
  }

  TEST_CASE("non-numeric value names the line") {
    const auto msg = error_of("country,indicator,year,value\nAF,GDP,2015,abc\n");
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("non-numeric value") != std::string::npos);
  }

  TEST_CASE("invalid rows") {
    CHECK_FALSE(error_of("country,indicator,year,value\nAFG,GDP,2015,1\n").empty());
    CHECK_FALSE(error_of("country,indicator,year,value\nAF,GDP,1850,1\n").empty());
    CHECK_FALSE(error_of("country,indicator,year,value\nAF,GDP,20x5,1\n").empty());
    CHECK_FALSE(error_of("country,indicator,year,value\nAF,GDP,2015\n").empty());
    CHECK_FALSE(error_of("country,indicator,year,value\nAF,GDP,2015,inf\n").empty());
  }

  TEST_CASE("tolerates BOM, CRLF and blank lines") {
    std::istringstream in("\xEF\xBB\xBF" "country,indicator,year,value\r\n\r\nAF,LE,2014,60.4\r\n");
    const auto obs = parse_observations(in);
    REQUIRE(obs.size() == 1);
    CHECK(obs[0].value == 60.4);
  }

  TEST_CASE("empty input yields no observations") {
    std::istringstream in("");
    CHECK(parse_observations(in).empty());
  }
}

TEST_SUITE("select_latest") {
  TEST_CASE("most recent year wins") {
    std::vector<Observation> obs{{"AF", Indicator::GNI, 2010, 1.0},
                                 {"AF", Indicator::GNI, 2005, 2.0}};
    const auto m = select_latest(obs);
    REQUIRE(m.size() == 1);
    CHECK(m.at({"AF", Indicator::GNI}).value == 1.0);
    CHECK(m.at({"AF", Indicator::GNI}).year == 2010);
  }

  TEST_CASE("singleton") {
    std::vector<Observation> obs{{"AF", Indicator::LE, 2015, 60.0}};
    CHECK(select_latest(obs).at({"AF", Indicator::LE}).value == 60.0);
  }

  TEST_CASE("same year: the later row wins") {
    std::vector<Observation> obs{{"AF", Indicator::LE, 2015, 60.0},
                                 {"AF", Indicator::LE, 2015, 61.0}};
    CHECK(select_latest(obs).at({"AF", Indicator::LE}).value == 61.0);
  }

  TEST_CASE("retained year is the maximum (property)") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> year(1990, 2020), pick(0, 3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Observation> obs;
      for (int i = 0; i < 40; ++i)
        obs.push_back({std::string{"A"} + char('A' + pick(rng)), kAllIndicators[pick(rng)],
                       year(rng), double(i)});
      const auto m = select_latest(obs);
      for (const auto& [key, lv] : m) {
        int best = 0;
        double last = 0;
        for (const auto& o : obs)
          if (o.country == key.first && o.indicator == key.second && o.year >= best) {
            best = o.year;
            last = o.value;
          }
        CHECK(lv.year == best);
        CHECK(lv.value == last);
      }
    }
  }
}

TEST_SUITE("build_dataset") {
  TEST_CASE("incomplete country excluded") {
    std::vector<Observation> obs{{"FR", Indicator::GDP, 2015, 40000},
                                 {"FR", Indicator::LE, 2015, 82},
                                 {"FR", Indicator::IM, 2015, 3.5},
                                 {"DE", Indicator::GDP, 2015, 45000},
                                 {"DE", Indicator::LE, 2015, 81}};
    const auto latest = select_latest(obs);
    const auto two = build_dataset(latest, std::vector{Indicator::GDP, Indicator::LE});
    CHECK(two.countries == std::vector<std::string>{"DE", "FR"});
    const auto three =
        build_dataset(latest, std::vector{Indicator::GDP, Indicator::LE, Indicator::IM});
    CHECK(three.countries == std::vector<std::string>{"FR"});
    CHECK(three.raw_values(0, 2) == 3.5);
    CHECK(three.years(0, 0) == 2015);
    CHECK(three.index_of("FR") == 0u);
    CHECK_FALSE(three.index_of("DE"));
  }

  TEST_CASE("empty result is an error") {
    std::vector<Observation> obs{{"FR", Indicator::GDP, 2015, 40000}};
    CHECK_THROWS_WITH(build_dataset(select_latest(obs), std::vector{Indicator::LE}),
                      "empty dataset");
  }

  TEST_CASE("adding indicators never adds countries (property)") {
    std::mt19937_64 rng(5);
    std::bernoulli_distribution keep(0.8);
    std::vector<Observation> obs;
    for (int c = 0; c < 60; ++c)
      for (auto ind : kAllIndicators)
        if (keep(rng)) obs.push_back({std::string{char('A' + c / 26), char('A' + c % 26)}, ind, 2015, 1.0 + c});
    const auto latest = select_latest(obs);
    const auto small = build_dataset(latest, std::vector{Indicator::GDP, Indicator::LE});
    const auto big = build_dataset(latest, std::vector(std::begin(kAllIndicators), std::end(kAllIndicators)));
    CHECK(big.size() <= small.size());
    for (const auto& c : big.countries) CHECK(small.index_of(c));
    CHECK(std::is_sorted(small.countries.begin(), small.countries.end()));
  }
}

TEST_SUITE("attenuate") {
  TEST_CASE("hand-computed column stays unchanged") {
    auto ds = make_dataset({{Indicator::GDP, {0, 0, 0, 100}}});
    CHECK(mean(ds.raw_values.column(0)) == doctest::Approx(25));
    CHECK(sample_stddev(ds.raw_values.column(0)) == doctest::Approx(50));
    const auto out = attenuate(ds, 2.0, std::vector{Indicator::GDP});
    CHECK(out.attenuated_values.column(0) == std::vector<double>{0, 0, 0, 100});
    REQUIRE(out.clamp[0]);
    CHECK(out.clamp[0]->hi == doctest::Approx(125));
    CHECK(out.clamp[0]->lo == doctest::Approx(-75));
  }

  TEST_CASE("outlier clamped to mean + k sd") {
    std::vector<double> col(20, 1.0);
    col.back() = 1000.0;
    auto out = attenuate(make_dataset({{Indicator::GDP, col}}), 2.0, std::vector{Indicator::GDP});
    const double mu = mean(col), sd = sample_stddev(col);
    CHECK(out.attenuated_values(19, 0) == mu + 2 * sd);
    CHECK(out.raw_values(19, 0) == 1000.0);
    CHECK(out.attenuated_values(0, 0) == 1.0);
  }

  TEST_CASE("constant column is a no-op") {
    auto out = attenuate(make_dataset({{Indicator::GDP, {3, 3, 3}}}), 2.0, std::vector{Indicator::GDP});
    CHECK(out.attenuated_values.column(0) == std::vector<double>{3, 3, 3});
    CHECK_FALSE(out.clamp[0]);
  }

  TEST_CASE("value exactly at the bound is kept") {
    // mean 25, sd 50, k = 1.5: upper bound 100 exactly.
    auto out = attenuate(make_dataset({{Indicator::GDP, {0, 0, 0, 100}}}), 1.5,
                         std::vector{Indicator::GDP});
    CHECK(out.clamp[0]->hi == 100.0);
    CHECK(out.attenuated_values(3, 0) == 100.0);
  }

  TEST_CASE("only selected columns change") {
    std::vector<double> col(10, 1.0);
    col.back() = 500.0;
    auto out = attenuate(make_dataset({{Indicator::GDP, col}, {Indicator::LE, col}}), 2.0,
                         std::vector{Indicator::GDP});
    CHECK(out.attenuated_values(9, 0) < 500.0);
    CHECK(out.attenuated_values(9, 1) == 500.0);
  }

  TEST_CASE("column outside the set is rejected") {
    auto ds = make_dataset({{Indicator::GDP, {1, 2, 3}}});
    CHECK_THROWS(attenuate(ds, 2.0, std::vector{Indicator::GNI}));
    CHECK_THROWS(attenuate(ds, 0.0, std::vector{Indicator::GDP}));
  }

  TEST_CASE("idempotent (property)") {
    std::mt19937_64 rng(3);
    std::lognormal_distribution<double> v(8.0, 1.5);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> col(30);
      for (auto& x : col) x = v(rng);
      const auto once = attenuate(make_dataset({{Indicator::GDP, col}}), 2.0, std::vector{Indicator::GDP});
      const auto twice = attenuate(once, 2.0, std::vector{Indicator::GDP});
      CHECK(once.attenuated_values == twice.attenuated_values);
      for (double x : once.attenuated_values.column(0)) {
        CHECK(x >= once.clamp[0]->lo);
        CHECK(x <= once.clamp[0]->hi);
      }
    }
  }
}

TEST_SUITE("scale_normative") {
  TEST_CASE("endpoints map to -1 and +1") {
    auto ds = scale_normative(make_dataset({{Indicator::LE, {48.86, 70.0, 84.8}}}));
    CHECK(ds.values(0, 0) == -1.0);
    CHECK(ds.values(2, 0) == 1.0);
    CHECK(ds.values(1, 0) == doctest::Approx(2 * (70.0 - 48.86) / (84.8 - 48.86) - 1));
  }

  TEST_CASE("infant mortality is reversed") {
    auto ds = scale_normative(make_dataset({{Indicator::IM, {1.5, 50.0, 96.0}}}));
    CHECK(ds.values(0, 0) == 1.0);
    CHECK(ds.values(2, 0) == -1.0);
  }

  TEST_CASE("constant column scales to zero with a warning") {
    std::vector<std::string> warnings;
    auto ds = scale_normative(make_dataset({{Indicator::GDP, {7, 7}}}), &warnings);
    CHECK(ds.values(0, 0) == 0.0);
    CHECK(ds.values(1, 0) == 0.0);
    CHECK(warnings.size() == 1);
  }

  TEST_CASE("uses attenuated values") {
    std::vector<double> col(20, 1.0);
    col[0] = 0.0;
    col.back() = 1000.0;
    auto ds = attenuate(make_dataset({{Indicator::GDP, col}}), 2.0, std::vector{Indicator::GDP});
    ds = scale_normative(std::move(ds));
    CHECK(ds.values(19, 0) == 1.0);
    CHECK(ds.values(0, 0) == -1.0);
  }

  TEST_CASE("range, tightness and order (property)") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 100);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> a(25), b(25);
      for (auto& x : a) x = u(rng);
      for (auto& x : b) x = u(rng);
      const auto ds = scale_normative(make_dataset({{Indicator::GDP, a}, {Indicator::IM, b}}));
      for (std::size_t j = 0; j < 2; ++j) {
        const auto col = ds.values.column(j);
        CHECK(*std::min_element(col.begin(), col.end()) == -1.0);
        CHECK(*std::max_element(col.begin(), col.end()) == 1.0);
        const int sign = favorability(ds.indicators[j]);
        for (std::size_t p = 0; p < col.size(); ++p)
          for (std::size_t q = 0; q < col.size(); ++q)
            if (ds.raw_values(p, j) < ds.raw_values(q, j)) CHECK(sign * (col[q] - col[p]) > 0);
      }
    }
  }
}

TEST_SUITE("summary") {
  TEST_CASE("single country") {
    auto ds = scale_normative(make_dataset({{Indicator::GDP, {42}}}));
    const auto s = summary(ds).columns.at(0);
    CHECK(s.max == 42);
    CHECK(s.min == 42);
    CHECK(s.median == 42);
    CHECK(s.mean == 42);
    CHECK(s.stddev == 0);
  }

  TEST_CASE("two-value column") {
    auto ds = scale_normative(make_dataset({{Indicator::GDP, {0, 10}}}));
    const auto s = summary(ds).columns.at(0);
    CHECK(s.mean == 5);
    CHECK(s.median == 5);
    CHECK(s.stddev == doctest::Approx(std::sqrt(50.0)));
    CHECK(s.scaled_mean == 0.0);
  }

  TEST_CASE("order relations (property)") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> col(1 + trial % 9);
      for (auto& x : col) x = u(rng);
      const auto s = summary(scale_normative(make_dataset({{Indicator::LE, col}}))).columns[0];
      CHECK(s.min <= s.median);
      CHECK(s.median <= s.max);
      CHECK(s.stddev >= 0);
    }
  }
}

TEST_SUITE("borders") {
  TEST_CASE("parse border rows") {
    std::istringstream in("country_a,country_b\nFR,DE\nFR,ES\n");
    const auto e = parse_borders(in);
    REQUIRE(e.size() == 2);
    CHECK(e[1] == BorderEdge{"FR", "ES"});
  }

  TEST_CASE("bad border rows") {
    std::istringstream a("a,b\nFR,DE\n");
    CHECK_THROWS_AS(parse_borders(a), ParseError);
    std::istringstream b("country_a,country_b\nFR\n");
    CHECK_THROWS_AS(parse_borders(b), ParseError);
  }
}

TEST_CASE("dataset CSV uses six decimals") {
  auto ds = scale_normative(make_dataset({{Indicator::GDP, {1, 2, 4}}}));
  std::ostringstream out;
  write_dataset_csv(out, ds);
  CHECK(out.str() == "country,GDP\nAA,-1.000000\nAB,-0.333333\nAC,1.000000\n");
}
