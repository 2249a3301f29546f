#pragma once

// Single-linkage clusters by cutting a minimum spanning forest (Prim) at a
// height. Independent of the library's union-find.

#include <algorithm>
#include <limits>
#include <vector>

#include "devtopo/metric.hpp"

namespace oracle {

struct MstEdge {
  std::size_t a, b;
  double w;
};

inline std::vector<MstEdge> spanning_forest(const devtopo::DistanceMatrix& d) {
  const std::size_t n = d.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> in(n, false);
  std::vector<double> best(n, inf);
  std::vector<std::size_t> parent(n, n);
  std::vector<MstEdge> out;
  for (std::size_t added = 0; added < n; ++added) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (u == n || best[v] < best[u])) u = v;
    in[u] = true;
    if (parent[u] != n) out.push_back({parent[u], u, best[u]});
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && v != u && d.reachable(u, v) && d(u, v) < best[v]) {
        best[v] = d(u, v);
        parent[v] = u;
      }
  }
  return out;
}

// Blocks as ascending member lists, the list sorted lexicographically.
inline std::vector<std::vector<std::size_t>> single_linkage(const devtopo::DistanceMatrix& d,
                                                            double eps) {
  const std::size_t n = d.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : spanning_forest(d))
    if (e.w <= eps) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
  std::vector<int> seen(n, 0);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> block, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      block.push_back(u);
      for (auto v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

}  // namespace oracle
