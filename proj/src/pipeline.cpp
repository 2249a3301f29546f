#include "devtopo/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "devtopo/cycles.hpp"
#include "devtopo/export.hpp"
#include "devtopo/kmeans.hpp"
#include "devtopo/text.hpp"

namespace devtopo {

std::string_view to_string(Mode m) {
  return m == Mode::PointCloud ? "point-cloud" : "border-graph";
}

Mode parse_mode(std::string_view s) {
  if (s == "point-cloud") return Mode::PointCloud;
  if (s == "border-graph") return Mode::BorderGraph;
  throw std::invalid_argument("unknown mode '" + std::string(s) +
                              "' (expected point-cloud or border-graph)");
}

double RunConfig::effective_max_filtration() const {
  if (max_filtration) return *max_filtration;
  return mode == Mode::PointCloud ? kPointCloudMaxFiltration : kBorderGraphMaxFiltration;
}

void RunConfig::validate() const {
  if (indicators.empty()) throw std::invalid_argument("no indicators selected");
  if (data.empty()) throw std::invalid_argument("an indicator CSV (--data) is required");
  if (mode == Mode::BorderGraph && borders.empty())
    throw std::invalid_argument("border-graph mode requires --borders");
  const double mf = effective_max_filtration();
  if (!(mf > 0)) throw std::invalid_argument("max filtration must be positive");
  for (double e : eps) {
    if (!(e >= 0)) throw std::invalid_argument("eps values must be >= 0");
    if (e > mf)
      throw std::invalid_argument("eps " + text::compact(e) + " exceeds max filtration " +
                                  text::compact(mf));
  }
  if (!(attenuate_k > 0)) throw std::invalid_argument("attenuation multiplier must be positive");
}

namespace {

std::ifstream open_input(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  return in;
}

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
}

std::string sizes_text(const std::vector<std::size_t>& sizes, std::size_t limit) {
  std::string s;
  for (std::size_t i = 0; i < std::min(limit, sizes.size()); ++i)
    s += (i ? ", " : "") + std::to_string(sizes[i]);
  return s;
}

}  // namespace

IndicatorDataset load_dataset(const RunConfig& cfg, std::vector<std::string>* warnings) {
  auto in = open_input(cfg.data);
  const auto obs = parse_observations(in);
  if (obs.empty()) throw std::runtime_error("empty dataset");
  auto ds = build_dataset(select_latest(obs), cfg.indicators);

  std::vector<Indicator> cols;
  for (auto c : cfg.attenuate_cols)
    if (ds.column_of(c)) cols.push_back(c);
  ds = attenuate(std::move(ds), cfg.attenuate_k, cols);
  return scale_normative(std::move(ds), warnings);
}

PipelineRun run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  PipelineRun run;
  run.dataset = load_dataset(cfg, &run.warnings);
  const double mf = cfg.effective_max_filtration();
  if (cfg.mode == Mode::BorderGraph) {
    auto in = open_input(cfg.borders);
    const auto edges = parse_borders(in);
    run.adjacency = border_adjacency(edges, run.dataset.countries);
    run.distances = border_distances(*run.adjacency, run.dataset, mf);
  } else {
    run.distances = pairwise(run.dataset);
  }
  run.filtration = build_filtration(run.distances, cfg.max_dim, mf, &run.warnings);
  run.barcode = reduce(run.filtration);
  return run;
}

CommandResult cmd_barcode(const RunConfig& cfg) {
  auto run = run_pipeline(cfg);
  ensure_out_dir(cfg.out_dir);
  CommandResult res;
  res.messages = run.warnings;

  const auto csv = cfg.out_dir / "barcode.csv";
  text::atomic_write(csv, [&](std::ostream& o) {
    write_barcode_csv(o, run.barcode, run.filtration, run.dataset.countries);
  });
  res.files.push_back(csv);

  SvgOptions svg;
  svg.title = std::string(to_string(cfg.mode)) + " barcode, I = {";
  for (std::size_t i = 0; i < cfg.indicators.size(); ++i)
    svg.title += (i ? "," : "") + std::string(to_string(cfg.indicators[i]));
  svg.title += "}";
  const auto svg_path = cfg.out_dir / "barcode.svg";
  text::atomic_write(svg_path, [&](std::ostream& o) { write_barcode_svg(o, run.barcode, svg); });
  res.files.push_back(svg_path);

  if (cfg.dump_filtration) {
    const auto p = cfg.out_dir / "filtration.txt";
    text::atomic_write(p, [&](std::ostream& o) { write_filtration_text(o, run.filtration); });
    res.files.push_back(p);
  }
  if (cfg.dump_distances) {
    const auto p = cfg.out_dir / "distances.csv";
    text::atomic_write(p, [&](std::ostream& o) { write_distance_csv(o, run.distances); });
    res.files.push_back(p);
  }

  res.messages.push_back(std::to_string(run.dataset.size()) + " countries, " +
                         std::to_string(run.filtration.size()) + " simplices");
  for (int d = 0; d <= run.barcode.max_degree(); ++d) {
    const auto bars = run.barcode.visible(d);
    const auto inf = std::count_if(bars.begin(), bars.end(),
                                   [](const auto& iv) { return iv.infinite(); });
    res.messages.push_back("H" + std::to_string(d) + ": " + std::to_string(bars.size()) +
                           " intervals (" + std::to_string(inf) + " infinite)");
  }
  return res;
}

CommandResult cmd_clusters(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.mode != Mode::PointCloud)
    throw std::invalid_argument("clusters requires point-cloud mode");
  if (cfg.eps.empty()) throw std::invalid_argument("clusters requires at least one --eps");
  CommandResult res;
  const auto ds = load_dataset(cfg, &res.messages);
  const auto d = pairwise(ds);
  ensure_out_dir(cfg.out_dir);

  for (double e : cfg.eps) {
    const auto p = components_at(d, e);
    const auto tag = text::compact(e);
    const auto part_path = cfg.out_dir / ("clusters_" + tag + ".csv");
    text::atomic_write(part_path, [&](std::ostream& o) { write_partition_csv(o, p, ds.countries); });
    const auto sum_path = cfg.out_dir / ("summary_" + tag + ".csv");
    const auto top = largest(p, cfg.top_clusters, ds);
    text::atomic_write(sum_path, [&](std::ostream& o) { write_summary_csv(o, top, ds.indicators); });
    res.files.push_back(part_path);
    res.files.push_back(sum_path);
    res.messages.push_back("eps=" + tag + ": " + std::to_string(p.block_count()) +
                           " clusters; largest " + sizes_text(p.sizes(), cfg.top_clusters));
  }
  return res;
}

CommandResult cmd_cycles(const RunConfig& cfg) {
  if (cfg.mode != Mode::BorderGraph)
    throw std::invalid_argument("cycles requires border-graph mode");
  auto run = run_pipeline(cfg);
  ensure_out_dir(cfg.out_dir);
  CommandResult res;
  res.messages = run.warnings;

  CycleAnalyzer analyzer(run.filtration, run.barcode, run.dataset, *run.adjacency,
                         run.distances);
  const auto reports = analyzer.report_cycles(cfg.min_persistence);
  std::vector<CycleReport> tight;
  tight.reserve(reports.size());
  for (const auto& r : reports) tight.push_back(analyzer.tighten(r));

  const auto json_path = cfg.out_dir / "cycles.json";
  text::atomic_write(json_path,
                     [&](std::ostream& o) { write_cycles_json(o, reports, tight, analyzer); });
  const auto txt_path = cfg.out_dir / "cycles.txt";
  text::atomic_write(txt_path, [&](std::ostream& o) { write_cycles_text(o, reports, analyzer); });
  res.files = {json_path, txt_path};

  const auto finite = std::count_if(reports.begin(), reports.end(),
                                    [](const auto& r) { return !r.infinite(); });
  res.messages.push_back(std::to_string(finite) + " finite cycles, " +
                         std::to_string(reports.size() - std::size_t(finite)) +
                         " infinite (inherent to the border graph)");
  return res;
}

CommandResult cmd_kmeans(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.mode != Mode::PointCloud)
    throw std::invalid_argument("kmeans requires point-cloud mode");
  CommandResult res;
  const auto ds = load_dataset(cfg, &res.messages);
  if (cfg.k > ds.size())
    throw std::invalid_argument("K (" + std::to_string(cfg.k) + ") exceeds the " +
                                std::to_string(ds.size()) + " countries");
  ensure_out_dir(cfg.out_dir);
  KMeansOptions opts;
  opts.k = cfg.k;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  const auto km = kmeans(ds, opts);

  const auto path = cfg.out_dir / ("kmeans_" + std::to_string(cfg.k) + ".csv");
  text::atomic_write(path,
                     [&](std::ostream& o) { write_partition_csv(o, km.partition, ds.countries); });
  res.files.push_back(path);
  res.messages.push_back("K=" + std::to_string(cfg.k) + " objective " + text::fixed6(km.objective) +
                         " sizes " + sizes_text(km.partition.sizes(), cfg.k));
  return res;
}

CommandResult cmd_stats(const RunConfig& cfg) {
  cfg.validate();
  CommandResult res;
  const auto ds = load_dataset(cfg, &res.messages);
  ensure_out_dir(cfg.out_dir);
  const auto st = summary(ds);

  const auto path = cfg.out_dir / "stats.csv";
  text::atomic_write(path, [&](std::ostream& o) {
    o << "indicator,max,min,median,mean,stddev,scaled_mean\n";
    for (const auto& c : st.columns)
      o << to_string(c.indicator) << ',' << text::fixed6(c.max) << ',' << text::fixed6(c.min)
        << ',' << text::fixed6(c.median) << ',' << text::fixed6(c.mean) << ','
        << text::fixed6(c.stddev) << ',' << text::fixed6(c.scaled_mean) << '\n';
  });
  const auto ds_path = cfg.out_dir / "dataset.csv";
  text::atomic_write(ds_path, [&](std::ostream& o) { write_dataset_csv(o, ds); });
  res.files = {path, ds_path};
  res.messages.push_back(std::to_string(ds.size()) + " countries");
  for (const auto& c : st.columns)
    res.messages.push_back(std::string(to_string(c.indicator)) + ": max " + text::fixed6(c.max) +
                           " min " + text::fixed6(c.min) + " median " + text::fixed6(c.median) +
                           " mean " + text::fixed6(c.mean) + " sd " + text::fixed6(c.stddev) +
                           " scaled mean " + text::fixed6(c.scaled_mean));
  return res;
}

}  // namespace devtopo
