#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "devtopo/metric.hpp"

namespace devtopo {

using Vertex = std::uint32_t;

// Highest simplex dimension the filtration can hold (tetrahedra).
inline constexpr int kMaxSimplexDim = 3;

struct Simplex {
  std::array<Vertex, kMaxSimplexDim + 1> v{};  // strictly increasing in [0, dim]
  int dim = 0;
  double birth = 0.0;

  std::span<const Vertex> vertices() const { return {v.data(), std::size_t(dim) + 1}; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

// Canonical order: birth, then dimension, then vertex list.
bool filtration_less(const Simplex& a, const Simplex& b);

// Vietoris-Rips (weighted rank clique) filtration of a distance matrix, in
// canonical order. Every face precedes its cofaces, so complex_at() is a prefix.
class Filtration {
 public:
  Filtration() = default;
  Filtration(std::vector<Simplex> sorted, std::size_t vertex_count, int max_dim,
             double max_filtration);

  std::size_t size() const noexcept { return simplices_.size(); }
  const Simplex& operator[](std::size_t i) const { return simplices_[i]; }
  auto begin() const { return simplices_.begin(); }
  auto end() const { return simplices_.end(); }
  std::span<const Simplex> simplices() const { return simplices_; }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  int max_dim() const noexcept { return max_dim_; }
  double max_filtration() const noexcept { return max_filtration_; }

  std::optional<std::size_t> index_of(std::span<const Vertex> vertices) const;
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;

  // Filtration indices of the codimension-1 faces, ascending.
  std::vector<std::size_t> boundary(std::size_t index) const;

  // Number of simplices with birth <= eps.
  std::size_t prefix_end(double eps) const;
  std::span<const Simplex> complex_at(double eps) const {
    return std::span<const Simplex>(simplices_).first(prefix_end(eps));
  }

  std::size_t count(int dim) const;

 private:
  std::uint64_t key(std::span<const Vertex> vertices) const;

  std::vector<Simplex> simplices_;
  std::size_t vertex_count_ = 0;
  int max_dim_ = 0;
  double max_filtration_ = 0.0;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

// Enumerates cliques by intersecting sorted forward-neighbor lists; vertices
// are processed in parallel and the result is canonically sorted.
// max_dim above vertex_count - 1 is clamped with a message in `warnings`.
Filtration build_filtration(const DistanceMatrix& d, int max_dim, double max_filtration,
                            std::vector<std::string>* warnings = nullptr);

// Reference enumeration by scanning every vertex subset; same output.
Filtration build_filtration_serial(const DistanceMatrix& d, int max_dim,
                                   double max_filtration,
                                   std::vector<std::string>* warnings = nullptr);

// One line per simplex: `dim birth v0 v1 ...`.
void write_filtration_text(std::ostream& out, const Filtration& f);

}  // namespace devtopo
