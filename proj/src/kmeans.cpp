#include "devtopo/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace devtopo {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Nearest center; keeps the current label on ties so runs cannot cycle.
bool assign(const Grid<double>& points, const Grid<double>& centers,
            std::vector<std::size_t>& labels) {
  bool changed = false;
  const std::size_t k = centers.rows();
  for (std::size_t i = 0; i < points.rows(); ++i) {
    std::size_t best = labels[i] < k ? labels[i] : 0;
    double best_d = sq_dist(points.row(i), centers.row(best));
    for (std::size_t c = 0; c < k; ++c) {
      const double d = sq_dist(points.row(i), centers.row(c));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    if (best != labels[i]) {
      labels[i] = best;
      changed = true;
    }
  }
  return changed;
}

void update_centers(const Grid<double>& points, const std::vector<std::size_t>& labels,
                    Grid<double>& centers) {
  const std::size_t k = centers.rows(), dims = points.cols();
  Grid<double> sums(k, dims, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < points.rows(); ++i) {
    ++counts[labels[i]];
    for (std::size_t j = 0; j < dims; ++j) sums(labels[i], j) += points(i, j);
  }

  std::vector<std::size_t> empty;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) {
      empty.push_back(c);
      continue;
    }
    for (std::size_t j = 0; j < dims; ++j)
      centers(c, j) = sums(c, j) / static_cast<double>(counts[c]);
  }
  if (empty.empty()) return;

  // Repair: farthest points from their (updated) centers, distinct, ties by index.
  std::vector<std::size_t> order(points.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> cost(points.rows());
  for (std::size_t i = 0; i < points.rows(); ++i)
    cost[i] = sq_dist(points.row(i), centers.row(labels[i]));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return cost[a] > cost[b]; });
  for (std::size_t e = 0; e < empty.size() && e < order.size(); ++e)
    for (std::size_t j = 0; j < dims; ++j) centers(empty[e], j) = points(order[e], j);
}

}  // namespace

double within_cluster_ss(const Grid<double>& points, const std::vector<std::size_t>& labels,
                         const Grid<double>& centers) {
  double s = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i)
    s += sq_dist(points.row(i), centers.row(labels[i]));
  return s;
}

std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(restart),
                    std::uint32_t(std::uint64_t(restart) >> 32)};
  return std::mt19937_64(seq);
}

LloydRun lloyd(const Grid<double>& points, std::size_t k, std::mt19937_64& rng,
               std::size_t max_iterations) {
  const std::size_t n = points.rows();
  if (k == 0) throw std::invalid_argument("kmeans: K must be >= 1");
  if (k > n) throw std::invalid_argument("kmeans: K exceeds the number of points");

  // K distinct indices by a partial Fisher-Yates shuffle.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t c = 0; c < k; ++c) {
    std::uniform_int_distribution<std::size_t> pick(c, n - 1);
    std::swap(idx[c], idx[pick(rng)]);
  }

  LloydRun run;
  run.centers = Grid<double>(k, points.cols());
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < points.cols(); ++j) run.centers(c, j) = points(idx[c], j);

  run.labels.assign(n, k);  // k = unassigned
  assign(points, run.centers, run.labels);
  run.objective_trace.push_back(within_cluster_ss(points, run.labels, run.centers));

  while (run.iterations < max_iterations) {
    ++run.iterations;
    update_centers(points, run.labels, run.centers);
    const bool changed = assign(points, run.centers, run.labels);
    run.objective_trace.push_back(within_cluster_ss(points, run.labels, run.centers));
    if (!changed) {
      run.converged = true;
      break;
    }
  }
  run.objective = run.objective_trace.back();
  return run;
}

namespace {

KMeansResult pick_best(std::vector<LloydRun>& runs, const KMeansOptions& opts) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r)
    if (runs[r].objective < runs[best].objective) best = r;
  KMeansResult out;
  out.partition = make_partition(runs[best].labels, static_cast<double>(opts.k),
                                 ClusterMethod::KMeans);
  out.centers = std::move(runs[best].centers);
  out.objective = runs[best].objective;
  out.best_restart = best;
  return out;
}

void check(const Grid<double>& points, const KMeansOptions& opts) {
  if (opts.restarts == 0) throw std::invalid_argument("kmeans: restarts must be >= 1");
  if (opts.k == 0) throw std::invalid_argument("kmeans: K must be >= 1");
  if (opts.k > points.rows())
    throw std::invalid_argument("kmeans: K (" + std::to_string(opts.k) +
                                ") exceeds the number of points (" +
                                std::to_string(points.rows()) + ")");
}

}  // namespace

KMeansResult kmeans_serial(const Grid<double>& points, const KMeansOptions& opts) {
  check(points, opts);
  std::vector<LloydRun> runs(opts.restarts);
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    auto rng = restart_rng(opts.seed, r);
    runs[r] = lloyd(points, opts.k, rng, opts.max_iterations);
  }
  return pick_best(runs, opts);
}

KMeansResult kmeans(const Grid<double>& points, const KMeansOptions& opts) {
  check(points, opts);
  std::vector<LloydRun> runs(opts.restarts);
  const auto restarts = static_cast<std::ptrdiff_t>(opts.restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < restarts; ++r) {
    auto rng = restart_rng(opts.seed, std::size_t(r));
    runs[std::size_t(r)] = lloyd(points, opts.k, rng, opts.max_iterations);
  }
  return pick_best(runs, opts);
}

KMeansResult kmeans(const IndicatorDataset& ds, const KMeansOptions& opts) {
  return kmeans(ds.values, opts);
}

}  // namespace devtopo
