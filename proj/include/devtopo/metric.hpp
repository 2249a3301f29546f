#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "devtopo/grid.hpp"
#include "devtopo/ingest.hpp"

namespace devtopo {

// Euclidean distance between two equally sized coordinate vectors.
double distance(std::span<const double> x, std::span<const double> y);

// Symmetric n x n dissimilarities. Pairs that are not connected (no shared
// border) hold the `unreachable` sentinel and are flagged in the mask.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n, std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  bool reachable(std::size_t i, std::size_t j) const {
    return masked_.empty() || !masked_[i * n_ + j];
  }
  std::optional<double> unreachable() const noexcept { return unreachable_; }
  bool has_mask() const noexcept { return !masked_.empty(); }

  // Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double d);
  // Masks (i, j) and (j, i) with the sentinel value.
  void mask(std::size_t i, std::size_t j, double sentinel);

 private:
  std::size_t n_ = 0;
  Grid<double> entries_;
  std::vector<std::uint8_t> masked_;
  std::optional<double> unreachable_;
  std::vector<std::string> labels_;
};

// Symmetric 0/1 border matrix over the dataset's countries.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::vector<std::string> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool operator()(std::size_t i, std::size_t j) const { return entries_(i, j) != 0; }
  void connect(std::size_t i, std::size_t j);
  std::size_t edge_count() const;

 private:
  Grid<std::uint8_t> entries_;
  std::vector<std::string> labels_;
};

// All-pairs Euclidean distances between the rows of `points`. Rows are
// distributed across OpenMP threads; each entry is computed exactly as
// distance(row i, row j), so the result is bit-identical to pairwise_serial.
DistanceMatrix pairwise(const Grid<double>& points, std::vector<std::string> labels = {});
DistanceMatrix pairwise_serial(const Grid<double>& points,
                               std::vector<std::string> labels = {});
DistanceMatrix pairwise(const IndicatorDataset& ds);

AdjacencyMatrix border_adjacency(std::span<const BorderEdge> edges,
                                 std::span<const std::string> labels);

inline constexpr double kSentinelFactor = 10.0;
inline constexpr double kPointCloudMaxFiltration = 1.0;
inline constexpr double kBorderGraphMaxFiltration = 2.0;

// d_I on bordering pairs, sentinel (kSentinelFactor * max_filtration) elsewhere.
DistanceMatrix border_distances(const AdjacencyMatrix& adj, const IndicatorDataset& ds,
                                double max_filtration);

// CSV with ISO2 row and column headers; masked entries written as `inf`.
void write_distance_csv(std::ostream& out, const DistanceMatrix& d);

}  // namespace devtopo
