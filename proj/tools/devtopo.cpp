// devtopo: persistent homology of development indicators.
//
//   devtopo barcode  --data ind.csv [--mode border-graph --borders b.csv] --out DIR
//   devtopo clusters --data ind.csv --eps 0.08,0.10 --out DIR
//   devtopo cycles   --data ind.csv --borders b.csv --mode border-graph --out DIR
//   devtopo kmeans   --data ind.csv --k 6 --restarts 100 --seed 1 --out DIR
//   devtopo stats    --data ind.csv --out DIR

#include <charconv>
#include <iostream>

#include <CLI11.hpp>

#include "devtopo/ingest.hpp"
#include "devtopo/pipeline.hpp"
#include "devtopo/text.hpp"

namespace {

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  for (auto tok : devtopo::text::split(s, ',')) {
    if (tok.empty()) continue;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad --eps value '" + std::string(tok) + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology of development indicators"};
  app.set_config("--config", "", "INI/TOML file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  std::string indicators = "GDP,LE";
  std::string mode = "point-cloud";
  std::string data, borders, out_dir = ".", eps, atten_cols = "GDP,GNI";
  double max_filtration = 0, atten_k = 2.0, min_persistence = 0.0;
  int max_dim = 2;
  std::size_t k = 2, restarts = 100, top = 6;
  std::uint64_t seed = 0;
  bool dump_filtration = false, dump_distances = false;

  app.add_option("--indicators", indicators, "Indicator set, e.g. GDP,LE or GDP,LE,IM,GNI")
      ->capture_default_str();
  app.add_option("--mode", mode, "point-cloud | border-graph")->capture_default_str();
  app.add_option("--data", data, "Indicator CSV (country,indicator,year,value)");
  app.add_option("--borders", borders, "Border CSV (country_a,country_b)");
  auto* mf_opt = app.add_option("--max-filtration", max_filtration,
                                "Largest filtration value (default 1.0 point cloud, 2.0 border graph)");
  app.add_option("--max-dim", max_dim, "Simplex dimension cap")->capture_default_str();
  app.add_option("--eps", eps, "Comma-separated slice values for clusters");
  app.add_option("--k", k, "K for kmeans")->capture_default_str();
  app.add_option("--restarts", restarts, "K-means restarts")->capture_default_str();
  app.add_option("--seed", seed, "K-means seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--attenuate-k", atten_k, "Clamp at mean +/- k standard deviations")
      ->capture_default_str();
  app.add_option("--attenuate-cols", atten_cols, "Columns to attenuate")->capture_default_str();
  app.add_option("--min-persistence", min_persistence, "Hide shorter finite cycles")
      ->capture_default_str();
  app.add_option("--top", top, "Clusters summarized per slice")->capture_default_str();
  app.add_flag("--dump-filtration", dump_filtration, "Also write filtration.txt");
  app.add_flag("--dump-distances", dump_distances, "Also write distances.csv");

  auto* barcode = app.add_subcommand("barcode", "Barcode CSV + SVG");
  auto* clusters = app.add_subcommand("clusters", "H0 slices as clusters");
  auto* cycles = app.add_subcommand("cycles", "Degree-1 cycle reports (border graph)");
  auto* kmeans = app.add_subcommand("kmeans", "K-means baseline");
  auto* stats = app.add_subcommand("stats", "Indicator statistics");

  CLI11_PARSE(app, argc, argv);

  try {
    devtopo::RunConfig cfg;
    cfg.indicators = devtopo::parse_indicator_list(indicators);
    cfg.mode = devtopo::parse_mode(mode);
    cfg.data = data;
    cfg.borders = borders;
    if (mf_opt->count()) cfg.max_filtration = max_filtration;
    cfg.max_dim = max_dim;
    cfg.eps = parse_eps_list(eps);
    cfg.k = k;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.out_dir = out_dir;
    cfg.attenuate_k = atten_k;
    cfg.attenuate_cols =
        atten_cols.empty() ? std::vector<devtopo::Indicator>{} : devtopo::parse_indicator_list(atten_cols);
    cfg.min_persistence = min_persistence;
    cfg.top_clusters = top;
    cfg.dump_filtration = dump_filtration;
    cfg.dump_distances = dump_distances;

    devtopo::CommandResult res;
    if (barcode->parsed()) res = devtopo::cmd_barcode(cfg);
    else if (clusters->parsed()) res = devtopo::cmd_clusters(cfg);
    else if (cycles->parsed()) res = devtopo::cmd_cycles(cfg);
    else if (kmeans->parsed()) res = devtopo::cmd_kmeans(cfg);
    else if (stats->parsed()) res = devtopo::cmd_stats(cfg);

    for (const auto& m : res.messages) std::cout << m << '\n';
    for (const auto& f : res.files) std::cout << "wrote " << f.string() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
