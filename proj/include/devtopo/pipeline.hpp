#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "devtopo/clustering.hpp"
#include "devtopo/filtration.hpp"
#include "devtopo/ingest.hpp"
#include "devtopo/metric.hpp"
#include "devtopo/persistence.hpp"

namespace devtopo {

enum class Mode { PointCloud, BorderGraph };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

struct RunConfig {
  std::vector<Indicator> indicators{Indicator::GDP, Indicator::LE};
  std::filesystem::path data;
  std::filesystem::path borders;
  Mode mode = Mode::PointCloud;
  std::optional<double> max_filtration;  // defaults per mode
  int max_dim = 2;
  double attenuate_k = 2.0;
  std::vector<Indicator> attenuate_cols{Indicator::GDP, Indicator::GNI};
  std::size_t k = 2;
  std::size_t restarts = 100;
  std::uint64_t seed = 0;
  std::vector<double> eps;
  std::filesystem::path out_dir = ".";
  double min_persistence = 0.0;
  std::size_t top_clusters = 6;
  bool dump_filtration = false;
  bool dump_distances = false;

  double effective_max_filtration() const;
  // Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct CommandResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> messages;
};

// Parse, select latest, build, attenuate and scale.
IndicatorDataset load_dataset(const RunConfig& cfg, std::vector<std::string>* warnings = nullptr);

struct PipelineRun {
  IndicatorDataset dataset;
  std::optional<AdjacencyMatrix> adjacency;
  DistanceMatrix distances;
  Filtration filtration;
  Barcode barcode;
  std::vector<std::string> warnings;
};

// Dataset -> distance matrix (point cloud or border graph) -> filtration -> barcode.
PipelineRun run_pipeline(const RunConfig& cfg);

CommandResult cmd_barcode(const RunConfig& cfg);
CommandResult cmd_clusters(const RunConfig& cfg);
CommandResult cmd_cycles(const RunConfig& cfg);
CommandResult cmd_kmeans(const RunConfig& cfg);
CommandResult cmd_stats(const RunConfig& cfg);

}  // namespace devtopo
