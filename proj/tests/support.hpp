#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "devtopo/grid.hpp"
#include "devtopo/metric.hpp"

namespace support {

inline devtopo::Grid<double> grid(const std::vector<std::vector<double>>& rows) {
  devtopo::Grid<double> g(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) g(i, j) = rows[i][j];
  return g;
}

inline devtopo::Grid<double> unit_square() {
  return grid({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

// Uniform points in [-1, 1]^dims; with `lattice` the coordinates are small
// multiples of 0.25 so distance ties are frequent.
inline devtopo::Grid<double> random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dims,
                                          bool lattice = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> q(-4, 4);
  devtopo::Grid<double> g(n, dims);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dims; ++j) g(i, j) = lattice ? 0.25 * q(rng) : u(rng);
  return g;
}

// Symmetric matrix with random entries; a fraction of pairs masked.
inline devtopo::DistanceMatrix random_matrix(std::mt19937_64& rng, std::size_t n,
                                             double mask_prob, bool ties = false) {
  devtopo::DistanceMatrix d(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> q(1, 8);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mask_prob > 0 && u(rng) < mask_prob) d.mask(i, j, 10.0);
      else d.set(i, j, ties ? 0.125 * q(rng) : u(rng));
    }
  return d;
}

// Graph metric: listed edges get the given weight, all other pairs masked.
inline devtopo::DistanceMatrix graph_matrix(std::size_t n,
                                            const std::vector<std::pair<std::size_t, std::size_t>>& es,
                                            double w = 0.5, double sentinel = 20.0) {
  devtopo::DistanceMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.mask(i, j, sentinel);
  for (auto [a, b] : es) d.set(a, b, w);
  return d;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("devtopo_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace support

namespace support {

// Synthetic indicator and border tables: n countries with a random
// geography (each borders its three nearest neighbors), several years per
// indicator and a few gaps.
struct SyntheticFiles {
  std::filesystem::path indicators;
  std::filesystem::path borders;
};

inline SyntheticFiles write_synthetic_inputs(const std::filesystem::path& dir, std::size_t n,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<std::string> iso;
  for (std::size_t i = 0; i < n; ++i) iso.push_back({char('A' + i / 26), char('A' + i % 26)});

  std::ostringstream ind;
  ind << "country,indicator,year,value\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double wealth = nd(rng);
    for (int year = 2012; year <= 2015; ++year) {
      const bool gap = u(rng) < 0.1;
      ind << iso[i] << ",GDP," << year << ',' << (gap ? "" : std::to_string(std::exp(9 + wealth + 0.1 * nd(rng)))) << '\n';
      ind << iso[i] << ",LE," << year << ',' << 70 + 6 * wealth + 2 * nd(rng) << '\n';
      ind << iso[i] << ",IM," << year << ',' << std::max(1.0, 30 - 12 * wealth + 3 * nd(rng)) << '\n';
      if (i % 11 != 5) ind << iso[i] << ",GNI," << year << ',' << std::exp(9 + wealth + 0.2 * nd(rng)) << '\n';
    }
  }

  std::vector<std::pair<double, double>> pos(n);
  for (auto& p : pos) p = {u(rng), u(rng)};
  std::ostringstream bor;
  bor << "country_a,country_b\n";
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 13 == 7) continue;  // an island
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && j % 13 != 7)
        near.emplace_back(std::hypot(pos[i].first - pos[j].first, pos[i].second - pos[j].second), j);
    std::sort(near.begin(), near.end());
    for (std::size_t k = 0; k < std::min<std::size_t>(3, near.size()); ++k)
      if (i < near[k].second) bor << iso[i] << ',' << iso[near[k].second] << '\n';
      else bor << iso[near[k].second] << ',' << iso[i] << '\n';
  }

  SyntheticFiles out{dir / "indicators.csv", dir / "borders.csv"};
  write_file(out.indicators, ind.str());
  write_file(out.borders, bor.str());
  return out;
}

}  // namespace support
