#include "devtopo/clustering.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "devtopo/text.hpp"
#include "devtopo/union_find.hpp"

namespace devtopo {

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(c.size());
  return out;
}

Partition make_partition(const std::vector<std::size_t>& labels, double parameter,
                         ClusterMethod method) {
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);

  Partition p;
  p.parameter = parameter;
  p.method = method;
  for (auto& [_, members] : groups) p.clusters.push_back(std::move(members));
  std::sort(p.clusters.begin(), p.clusters.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  p.assignment.assign(labels.size(), 0);
  for (std::size_t c = 0; c < p.clusters.size(); ++c)
    for (auto i : p.clusters[c]) p.assignment[i] = c;
  return p;
}

Partition components_at(const DistanceMatrix& d, double eps) {
  if (!(eps >= 0)) throw std::invalid_argument("components_at: eps must be >= 0");
  const std::size_t n = d.size();
  UnionFind uf(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.reachable(i, j) && d(i, j) <= eps) uf.unite(i, j);
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = uf.find(i);
  return make_partition(labels, eps, ClusterMethod::H0Slice);
}

std::vector<ClusterSummary> largest(const Partition& p, std::size_t n,
                                    const IndicatorDataset& ds) {
  if (n == 0) throw std::invalid_argument("largest: n must be >= 1");
  if (p.assignment.size() != ds.size())
    throw std::invalid_argument("largest: partition and dataset sizes differ");
  std::vector<ClusterSummary> out;
  for (std::size_t c = 0; c < std::min(n, p.clusters.size()); ++c) {
    ClusterSummary s;
    s.cluster_id = c;
    s.size = p.clusters[c].size();
    s.means.assign(ds.dims(), 0.0);
    for (auto i : p.clusters[c]) {
      s.members.push_back(ds.countries[i]);
      for (std::size_t j = 0; j < ds.dims(); ++j) s.means[j] += ds.values(i, j);
    }
    for (auto& m : s.means) m /= static_cast<double>(s.size);
    out.push_back(std::move(s));
  }
  return out;
}

bool h0_consistency(const Barcode& b, const DistanceMatrix& d, double eps) {
  return betti_at(b, 0, eps) == components_at(d, eps).block_count();
}

void write_partition_csv(std::ostream& out, const Partition& p,
                         const std::vector<std::string>& labels) {
  out << "country,cluster_id,cluster_size\n";
  for (std::size_t i = 0; i < p.assignment.size(); ++i) {
    const auto c = p.assignment[i];
    out << (i < labels.size() ? labels[i] : std::to_string(i)) << ',' << c << ','
        << p.clusters[c].size() << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ClusterSummary>& s,
                       const std::vector<Indicator>& indicators) {
  out << "cluster_id,size";
  for (auto ind : indicators) out << ',' << to_string(ind) << "_mean";
  out << '\n';
  for (const auto& c : s) {
    out << c.cluster_id << ',' << c.size;
    for (double m : c.means) out << ',' << text::fixed6(m);
    out << '\n';
  }
}

}  // namespace devtopo
