#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "devtopo/filtration.hpp"

namespace devtopo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A bar [birth, death) of degree `dim`. Infinite bars have death == kInfinity
// and no death simplex. Simplex references are filtration indices.
struct PersistenceInterval {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;
  std::size_t birth_simplex = 0;
  std::optional<std::size_t> death_simplex;
  // Z/2 cycle (filtration indices of dim-simplices) for dim >= 1. Finite bars
  // carry the reduced boundary column of the death simplex, infinite bars the
  // chain that reduced the birth simplex's column to zero.
  std::vector<std::size_t> representative;

  bool infinite() const noexcept { return !death_simplex.has_value(); }
  double persistence() const noexcept { return death - birth; }
};

class Barcode {
 public:
  Barcode() = default;
  Barcode(std::vector<PersistenceInterval> intervals, int max_dim, double max_filtration,
          std::size_t unpaired_top);

  // All intervals, including zero-length ones, sorted by (dim, birth, death,
  // birth simplex).
  const std::vector<PersistenceInterval>& intervals() const noexcept { return intervals_; }
  // Intervals of one degree with positive length (what users see).
  std::vector<PersistenceInterval> visible(int dim) const;
  // Intervals of one degree including zero-length ones.
  std::vector<PersistenceInterval> all(int dim) const;

  // Homology degrees present: 0 .. max_dim - 1 (or 0 when max_dim is 0).
  int max_degree() const noexcept { return max_dim_ > 0 ? max_dim_ - 1 : 0; }
  int max_dim() const noexcept { return max_dim_; }
  double max_filtration() const noexcept { return max_filtration_; }
  // Top-dimensional simplices whose columns reduced to zero; their classes
  // are outside the computed degrees.
  std::size_t unpaired_top() const noexcept { return unpaired_top_; }

 private:
  std::vector<PersistenceInterval> intervals_;
  int max_dim_ = 0;
  double max_filtration_ = 0.0;
  std::size_t unpaired_top_ = 0;
};

// Z/2 boundary-matrix reduction with clearing: dimensions are processed from
// the top down and the pivot rows found in dimension d are skipped in d - 1.
Barcode reduce(const Filtration& f);

// Bars of degree k alive at eps (birth <= eps < death).
std::size_t betti_at(const Barcode& b, int k, double eps);

std::vector<PersistenceInterval> infinite_intervals(const Barcode& b, int k);

// Representative chain as filtration indices: the birth vertex for degree 0,
// the stored cycle otherwise.
std::vector<std::size_t> representative(const Barcode& b, const PersistenceInterval& iv);

// Vertex pairs of the edges in a 1-chain.
std::vector<std::pair<Vertex, Vertex>> chain_edges(const Filtration& f,
                                                   std::span<const std::size_t> chain);

// True when the Z/2 boundary of the chain is empty.
bool is_cycle(const Filtration& f, std::span<const std::size_t> chain);

// `dim,birth,death,representative` with death `inf` for infinite bars and
// edges rendered as `a-b` using the given vertex labels. Zero-length bars
// are omitted.
void write_barcode_csv(std::ostream& out, const Barcode& b, const Filtration& f,
                       std::span<const std::string> labels);

}  // namespace devtopo
