#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "devtopo/clustering.hpp"
#include "devtopo/grid.hpp"

namespace devtopo {

struct KMeansOptions {
  std::size_t k = 2;
  std::size_t restarts = 100;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 300;
};

// One Lloyd run. objective_trace[0] is the cost after the initial assignment
// and each further entry the cost after one update + reassignment step.
struct LloydRun {
  std::vector<std::size_t> labels;
  Grid<double> centers;
  double objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
};

struct KMeansResult {
  Partition partition;
  Grid<double> centers;  // indexed by the raw labels of the winning run
  double objective = 0.0;
  std::size_t best_restart = 0;
};

// Random stream for one restart, derived from (seed, restart).
std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart);

// Lloyd iterations from K distinct random data points. Empty clusters get
// their center moved to the point farthest from its assigned center.
LloydRun lloyd(const Grid<double>& points, std::size_t k, std::mt19937_64& rng,
               std::size_t max_iterations = 300);

// Best of `restarts` Lloyd runs by within-cluster sum of squares; ties go to
// the lowest restart index. Restarts run in parallel.
KMeansResult kmeans(const Grid<double>& points, const KMeansOptions& opts);
KMeansResult kmeans_serial(const Grid<double>& points, const KMeansOptions& opts);

KMeansResult kmeans(const IndicatorDataset& ds, const KMeansOptions& opts);

// Sum of squared distances from each point to its center.
double within_cluster_ss(const Grid<double>& points, const std::vector<std::size_t>& labels,
                         const Grid<double>& centers);

}  // namespace devtopo
