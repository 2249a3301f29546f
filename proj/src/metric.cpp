#include "devtopo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "devtopo/text.hpp"

namespace devtopo {

double distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("distance: length mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    ss += d * d;
  }
  return std::sqrt(ss);
}

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<std::string> labels)
    : n_(n), entries_(n, n, 0.0), labels_(std::move(labels)) {
  if (labels_.empty()) labels_ = default_labels(n);
  if (labels_.size() != n) throw std::invalid_argument("label count does not match size");
}

void DistanceMatrix::set(std::size_t i, std::size_t j, double d) {
  if (i == j) return;
  entries_(i, j) = d;
  entries_(j, i) = d;
  if (!masked_.empty()) masked_[i * n_ + j] = masked_[j * n_ + i] = 0;
}

void DistanceMatrix::mask(std::size_t i, std::size_t j, double sentinel) {
  if (i == j) return;
  if (unreachable_ && *unreachable_ != sentinel)
    throw std::invalid_argument("conflicting unreachable sentinels");
  unreachable_ = sentinel;
  if (masked_.empty()) masked_.assign(n_ * n_, 0);
  entries_(i, j) = entries_(j, i) = sentinel;
  masked_[i * n_ + j] = masked_[j * n_ + i] = 1;
}

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::string> labels)
    : entries_(labels.size(), labels.size(), 0), labels_(std::move(labels)) {}

void AdjacencyMatrix::connect(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("a country cannot border itself");
  entries_(i, j) = entries_(j, i) = 1;
}

std::size_t AdjacencyMatrix::edge_count() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) c += entries_(i, j);
  return c;
}

DistanceMatrix pairwise_serial(const Grid<double>& points, std::vector<std::string> labels) {
  const std::size_t n = points.rows();
  DistanceMatrix d(n, std::move(labels));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, distance(points.row(i), points.row(j)));
  return d;
}

DistanceMatrix pairwise(const Grid<double>& points, std::vector<std::string> labels) {
  const std::size_t n = points.rows();
  DistanceMatrix d(n, std::move(labels));
  const auto rows = static_cast<std::ptrdiff_t>(n);
  // Each (i, j > i) pair is written by exactly one iteration.
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = ui + 1; j < n; ++j)
      d.set(ui, j, distance(points.row(ui), points.row(j)));
  }
  return d;
}

DistanceMatrix pairwise(const IndicatorDataset& ds) {
  if (ds.size() == 0) throw std::invalid_argument("pairwise: empty dataset");
  return pairwise(ds.values, ds.countries);
}

AdjacencyMatrix border_adjacency(std::span<const BorderEdge> edges,
                                 std::span<const std::string> labels) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);

  AdjacencyMatrix adj({labels.begin(), labels.end()});
  for (const auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("border self-loop for country " + a);
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end()) continue;
    adj.connect(ia->second, ib->second);
  }
  return adj;
}

DistanceMatrix border_distances(const AdjacencyMatrix& adj, const IndicatorDataset& ds,
                                double max_filtration) {
  if (adj.labels() != ds.countries)
    throw std::invalid_argument("border_distances: adjacency and dataset labels differ");
  if (!(max_filtration > 0)) throw std::invalid_argument("max_filtration must be positive");
  const std::size_t n = ds.size();
  const double sentinel = kSentinelFactor * max_filtration;
  DistanceMatrix d(n, ds.countries);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adj(i, j))
        d.set(i, j, distance(ds.values.row(i), ds.values.row(j)));
      else
        d.mask(i, j, sentinel);
    }
  }
  return d;
}

void write_distance_csv(std::ostream& out, const DistanceMatrix& d) {
  out << "country";
  for (const auto& l : d.labels()) out << ',' << l;
  out << '\n';
  for (std::size_t i = 0; i < d.size(); ++i) {
    out << d.labels()[i];
    for (std::size_t j = 0; j < d.size(); ++j)
      out << ',' << (d.reachable(i, j) ? text::fixed6(d(i, j)) : std::string("inf"));
    out << '\n';
  }
}

}  // namespace devtopo
