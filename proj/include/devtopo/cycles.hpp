#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "devtopo/filtration.hpp"
#include "devtopo/ingest.hpp"
#include "devtopo/metric.hpp"
#include "devtopo/persistence.hpp"

namespace devtopo {

struct ClosingEdge {
  Vertex a = 0;
  Vertex b = 0;
  double weight = 0.0;
};

struct Extremes {
  Vertex max = 0;
  Vertex min = 0;
};

// A degree-1 bar of the border pipeline read as a loop of countries.
struct CycleReport {
  double birth = 0.0;
  double death = kInfinity;
  std::size_t birth_simplex = 0;
  std::optional<std::size_t> death_simplex;
  std::vector<Vertex> loop;  // closed: back() borders front()
  std::vector<std::vector<Vertex>> auxiliary_loops;
  std::optional<ClosingEdge> closing_edge;
  Grid<double> indicator_table;  // one row per loop entry, scaled values
  Extremes extremes;             // by mean over indicators
  std::vector<Extremes> per_indicator;
  bool tightened = false;

  bool infinite() const noexcept { return !death_simplex.has_value(); }
};

// Splits an edge set with even vertex degrees into simple loops. Each loop
// starts at its smallest vertex and heads to the smaller of its two
// neighbors. Throws std::logic_error when some vertex has odd degree.
std::vector<std::vector<Vertex>> decompose_loops(
    std::span<const std::pair<Vertex, Vertex>> edges);

// Rotates/reflects a loop into the canonical form described above.
std::vector<Vertex> canonical_loop(std::vector<Vertex> loop);

// Longest edge of the death triangle; its weight is the bar's death.
// Throws std::invalid_argument for infinite or non-degree-1 bars.
ClosingEdge closing_edge(const PersistenceInterval& iv, const Filtration& f);

// Argmax / argmin of the per-row mean; ties go to the smaller vertex.
Extremes extremes(std::span<const Vertex> loop, const Grid<double>& table);

class CycleAnalyzer {
 public:
  CycleAnalyzer(const Filtration& f, const Barcode& b, const IndicatorDataset& ds,
                const AdjacencyMatrix& adj, const DistanceMatrix& d);

  // One report per visible degree-1 bar with persistence >= min_persistence
  // (infinite bars always included), sorted by birth.
  std::vector<CycleReport> report_cycles(double min_persistence = 0.0) const;

  CycleReport report(const PersistenceInterval& iv) const;

  // Repeatedly splits the loop along its lightest chord lighter than the
  // death value, keeping the side whose complement is a boundary at the
  // chord's weight. Chords where neither side bounds are left in place.
  CycleReport tighten(const CycleReport& c) const;

  // Whether a 1-chain (filtration indices) is a boundary in the complex at
  // filtration prefix [0, prefix_end).
  bool is_boundary(std::vector<std::size_t> chain, std::size_t prefix_end) const;

  const std::vector<std::string>& labels() const { return ds_.countries; }
  const IndicatorDataset& dataset() const { return ds_; }

 private:
  void fill_table(CycleReport& r) const;
  std::vector<std::size_t> loop_chain(std::span<const Vertex> loop) const;

  const Filtration& f_;
  const Barcode& b_;
  const IndicatorDataset& ds_;
  const AdjacencyMatrix& adj_;
  const DistanceMatrix& d_;
  std::map<std::size_t, const PersistenceInterval*> by_birth_edge_;
};

// JSON array of reports (birth, death, countries, tightened countries,
// closing edge, per-country indicator rows, extremes).
void write_cycles_json(std::ostream& out, const std::vector<CycleReport>& reports,
                       const std::vector<CycleReport>& tightened, const CycleAnalyzer& a);

// Plain text table: birth, death, generating countries; infinite bars after.
void write_cycles_text(std::ostream& out, const std::vector<CycleReport>& reports,
                       const CycleAnalyzer& a);

}  // namespace devtopo
