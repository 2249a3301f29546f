#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "devtopo/ingest.hpp"
#include "devtopo/metric.hpp"
#include "devtopo/persistence.hpp"

namespace devtopo {

enum class ClusterMethod { H0Slice, KMeans };

// Blocks sorted by descending size, ties by smallest member; cluster ids are
// positions in that order. Members within a block are ascending.
struct Partition {
  std::vector<std::size_t> assignment;
  std::vector<std::vector<std::size_t>> clusters;
  double parameter = 0.0;  // slice eps or K
  ClusterMethod method = ClusterMethod::H0Slice;

  std::size_t block_count() const noexcept { return clusters.size(); }
  std::vector<std::size_t> sizes() const;
};

// Builds the canonical Partition from any labeling of 0..n-1.
Partition make_partition(const std::vector<std::size_t>& labels, double parameter,
                         ClusterMethod method);

struct ClusterSummary {
  std::size_t cluster_id = 0;
  std::size_t size = 0;
  std::vector<std::string> members;
  std::vector<double> means;  // per indicator, scaled values
};

// Connected components of the graph with edges {i, j} where D[i][j] is
// reachable and <= eps.
Partition components_at(const DistanceMatrix& d, double eps);

// The n largest blocks with per-indicator means of the scaled values.
std::vector<ClusterSummary> largest(const Partition& p, std::size_t n,
                                    const IndicatorDataset& ds);

// Whether the degree-0 Betti number at eps equals the block count at eps.
bool h0_consistency(const Barcode& b, const DistanceMatrix& d, double eps);

// `country,cluster_id,cluster_size`.
void write_partition_csv(std::ostream& out, const Partition& p,
                         const std::vector<std::string>& labels);
// `cluster_id,size,<indicator>_mean...`.
void write_summary_csv(std::ostream& out, const std::vector<ClusterSummary>& s,
                       const std::vector<Indicator>& indicators);

}  // namespace devtopo
