#include "devtopo/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "devtopo/text.hpp"

namespace devtopo {

std::vector<Vertex> canonical_loop(std::vector<Vertex> loop) {
  if (loop.size() < 3) return loop;
  auto it = std::min_element(loop.begin(), loop.end());
  std::rotate(loop.begin(), it, loop.end());
  if (loop.back() < loop[1]) std::reverse(loop.begin() + 1, loop.end());
  return loop;
}

std::vector<std::vector<Vertex>> decompose_loops(
    std::span<const std::pair<Vertex, Vertex>> edges) {
  std::map<Vertex, std::set<Vertex>> adj;
  for (auto [a, b] : edges) {
    if (a == b) throw std::logic_error("decompose_loops: self-loop edge");
    // Z/2: a repeated edge cancels.
    if (!adj[a].insert(b).second) {
      adj[a].erase(b);
      adj[b].erase(a);
      continue;
    }
    adj[b].insert(a);
  }
  for (const auto& [v, nb] : adj)
    if (nb.size() % 2) throw std::logic_error("representative is not a cycle (odd degree)");

  auto take = [&](Vertex from) {
    Vertex to = *adj[from].begin();
    adj[from].erase(to);
    adj[to].erase(from);
    return to;
  };

  std::vector<std::vector<Vertex>> loops;
  for (;;) {
    auto start_it = std::find_if(adj.begin(), adj.end(),
                                 [](const auto& kv) { return !kv.second.empty(); });
    if (start_it == adj.end()) break;
    std::vector<Vertex> path{start_it->first};
    std::map<Vertex, std::size_t> pos{{start_it->first, 0}};
    while (!(path.size() == 1 && adj[path[0]].empty())) {
      const Vertex cur = path.back();
      if (adj[cur].empty()) throw std::logic_error("representative is not a cycle");
      const Vertex nxt = take(cur);
      auto hit = pos.find(nxt);
      if (hit == pos.end()) {
        pos[nxt] = path.size();
        path.push_back(nxt);
        continue;
      }
      std::vector<Vertex> loop(path.begin() + std::ptrdiff_t(hit->second), path.end());
      for (std::size_t k = hit->second + 1; k < path.size(); ++k) pos.erase(path[k]);
      path.resize(hit->second + 1);
      loops.push_back(canonical_loop(std::move(loop)));
    }
  }
  return loops;
}

ClosingEdge closing_edge(const PersistenceInterval& iv, const Filtration& f) {
  if (iv.dim != 1) throw std::invalid_argument("closing_edge: degree-1 bar required");
  if (iv.infinite()) throw std::invalid_argument("no closing simplex");
  const auto faces = f.boundary(*iv.death_simplex);
  // Faces are ascending in filtration order; the last is the longest edge.
  const Simplex& e = f[faces.back()];
  return {e.v[0], e.v[1], e.birth};
}

Extremes extremes(std::span<const Vertex> loop, const Grid<double>& table) {
  Extremes ex;
  if (loop.empty()) return ex;
  double best_hi = -kInfinity, best_lo = kInfinity;
  for (std::size_t r = 0; r < loop.size(); ++r) {
    const auto row = table.row(r);
    double m = 0.0;
    for (double x : row) m += x;
    m /= static_cast<double>(row.size());
    if (m > best_hi || (m == best_hi && loop[r] < ex.max)) {
      best_hi = m;
      ex.max = loop[r];
    }
    if (m < best_lo || (m == best_lo && loop[r] < ex.min)) {
      best_lo = m;
      ex.min = loop[r];
    }
  }
  return ex;
}

CycleAnalyzer::CycleAnalyzer(const Filtration& f, const Barcode& b,
                             const IndicatorDataset& ds, const AdjacencyMatrix& adj,
                             const DistanceMatrix& d)
    : f_(f), b_(b), ds_(ds), adj_(adj), d_(d) {
  if (adj.labels() != ds.countries || d.size() != ds.size() || f.vertex_count() != ds.size())
    throw std::invalid_argument("CycleAnalyzer: inputs disagree on the country list");
  for (const auto& iv : b_.intervals())
    if (iv.dim == 1) by_birth_edge_[iv.birth_simplex] = &iv;
}

void CycleAnalyzer::fill_table(CycleReport& r) const {
  r.indicator_table = Grid<double>(r.loop.size(), ds_.dims());
  for (std::size_t i = 0; i < r.loop.size(); ++i)
    for (std::size_t j = 0; j < ds_.dims(); ++j)
      r.indicator_table(i, j) = ds_.values(r.loop[i], j);
  r.extremes = extremes(r.loop, r.indicator_table);
  r.per_indicator.clear();
  for (std::size_t j = 0; j < ds_.dims(); ++j) {
    Grid<double> col(r.loop.size(), 1);
    for (std::size_t i = 0; i < r.loop.size(); ++i) col(i, 0) = r.indicator_table(i, j);
    r.per_indicator.push_back(extremes(r.loop, col));
  }
}

std::vector<std::size_t> CycleAnalyzer::loop_chain(std::span<const Vertex> loop) const {
  std::vector<std::size_t> chain;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Vertex a = loop[i], b = loop[(i + 1) % loop.size()];
    auto e = f_.edge_index(a, b);
    if (!e) throw std::logic_error("loop edge missing from filtration");
    chain.push_back(*e);
  }
  std::sort(chain.begin(), chain.end());
  return chain;
}

CycleReport CycleAnalyzer::report(const PersistenceInterval& iv) const {
  if (iv.dim != 1) throw std::invalid_argument("report: degree-1 bar required");
  CycleReport r;
  r.birth = iv.birth;
  r.death = iv.death;
  r.birth_simplex = iv.birth_simplex;
  r.death_simplex = iv.death_simplex;

  const auto edges = chain_edges(f_, iv.representative);
  auto loops = decompose_loops(edges);
  const Simplex& birth_edge = f_[iv.birth_simplex];
  auto holds_birth_edge = [&](const std::vector<Vertex>& loop) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      Vertex a = loop[i], b = loop[(i + 1) % loop.size()];
      if (a > b) std::swap(a, b);
      if (a == birth_edge.v[0] && b == birth_edge.v[1]) return true;
    }
    return false;
  };
  auto main = std::find_if(loops.begin(), loops.end(), holds_birth_edge);
  if (main == loops.end()) throw std::logic_error("representative misses its birth edge");
  r.loop = std::move(*main);
  for (auto it = loops.begin(); it != loops.end(); ++it)
    if (it != main) r.auxiliary_loops.push_back(std::move(*it));

  for (std::size_t i = 0; i < r.loop.size(); ++i)
    if (!adj_(r.loop[i], r.loop[(i + 1) % r.loop.size()]))
      throw std::logic_error("loop step between non-bordering countries");
  if (!iv.infinite()) r.closing_edge = closing_edge(iv, f_);
  fill_table(r);
  return r;
}

std::vector<CycleReport> CycleAnalyzer::report_cycles(double min_persistence) const {
  std::vector<CycleReport> out;
  for (const auto& iv : b_.visible(1))
    if (iv.infinite() || iv.persistence() >= min_persistence) out.push_back(report(iv));
  std::stable_sort(out.begin(), out.end(), [](const CycleReport& a, const CycleReport& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return out;
}

bool CycleAnalyzer::is_boundary(std::vector<std::size_t> chain, std::size_t prefix_end) const {
  std::sort(chain.begin(), chain.end());
  std::vector<std::size_t> scratch;
  while (!chain.empty()) {
    if (chain.back() >= prefix_end) return false;
    auto it = by_birth_edge_.find(chain.back());
    if (it == by_birth_edge_.end()) return false;
    const auto* iv = it->second;
    if (iv->infinite() || *iv->death_simplex >= prefix_end) return false;
    scratch.clear();
    std::set_symmetric_difference(chain.begin(), chain.end(), iv->representative.begin(),
                                  iv->representative.end(), std::back_inserter(scratch));
    chain.swap(scratch);
  }
  return true;
}

CycleReport CycleAnalyzer::tighten(const CycleReport& c) const {
  if (c.infinite()) return c;
  CycleReport cur = c;
  std::set<std::pair<Vertex, Vertex>> rejected;

  for (;;) {
    const std::size_t m = cur.loop.size();
    struct Chord {
      double w;
      std::size_t idx;
      std::size_t i, j;  // positions in the loop, i < j
    };
    std::vector<Chord> chords;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 2; j < m; ++j) {
        if (i == 0 && j == m - 1) continue;
        const Vertex a = cur.loop[i], b = cur.loop[j];
        if (!d_.reachable(a, b) || !(d_(a, b) < cur.death)) continue;
        if (rejected.contains({std::min(a, b), std::max(a, b)})) continue;
        auto e = f_.edge_index(a, b);
        if (!e) continue;
        chords.push_back({d_(a, b), *e, i, j});
      }
    }
    if (chords.empty()) break;
    const auto best = *std::min_element(chords.begin(), chords.end(), [](auto& x, auto& y) {
      return x.idx < y.idx;  // filtration order: weight, then vertices
    });

    std::vector<Vertex> inner(cur.loop.begin() + std::ptrdiff_t(best.i),
                              cur.loop.begin() + std::ptrdiff_t(best.j) + 1);
    std::vector<Vertex> outer(cur.loop.begin() + std::ptrdiff_t(best.j), cur.loop.end());
    outer.insert(outer.end(), cur.loop.begin(), cur.loop.begin() + std::ptrdiff_t(best.i) + 1);

    const std::size_t prefix = f_.prefix_end(best.w);
    std::vector<Vertex> keep;
    if (is_boundary(loop_chain(outer), prefix))
      keep = inner;
    else if (is_boundary(loop_chain(inner), prefix))
      keep = outer;
    if (keep.empty()) {
      const Vertex a = cur.loop[best.i], b = cur.loop[best.j];
      rejected.insert({std::min(a, b), std::max(a, b)});
      continue;
    }
    cur.loop = canonical_loop(std::move(keep));
    cur.tightened = true;
  }
  fill_table(cur);
  return cur;
}

namespace {

double round6(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

nlohmann::ordered_json loop_json(std::span<const Vertex> loop, const CycleAnalyzer& a) {
  auto arr = nlohmann::ordered_json::array();
  for (Vertex v : loop) arr.push_back(a.labels()[v]);
  return arr;
}

nlohmann::ordered_json report_json(const CycleReport& r, const CycleAnalyzer& a) {
  const auto& ds = a.dataset();
  nlohmann::ordered_json j;
  j["birth"] = round6(r.birth);
  j["death"] = r.infinite() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(round6(r.death));
  j["infinite"] = r.infinite();
  j["countries"] = loop_json(r.loop, a);
  if (r.closing_edge)
    j["closing_edge"] = {{"a", a.labels()[r.closing_edge->a]},
                         {"b", a.labels()[r.closing_edge->b]},
                         {"weight", round6(r.closing_edge->weight)}};
  else
    j["closing_edge"] = nullptr;
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.loop.size(); ++i) {
    nlohmann::ordered_json row;
    row["country"] = a.labels()[r.loop[i]];
    double m = 0.0;
    for (std::size_t k = 0; k < ds.dims(); ++k) {
      row[std::string(to_string(ds.indicators[k]))] = round6(r.indicator_table(i, k));
      m += r.indicator_table(i, k);
    }
    row["mean"] = round6(m / static_cast<double>(ds.dims()));
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["extremes"] = {{"max", a.labels()[r.extremes.max]}, {"min", a.labels()[r.extremes.min]}};
  nlohmann::ordered_json per;
  for (std::size_t k = 0; k < r.per_indicator.size(); ++k)
    per[std::string(to_string(ds.indicators[k]))] = {
        {"max", a.labels()[r.per_indicator[k].max]},
        {"min", a.labels()[r.per_indicator[k].min]}};
  j["per_indicator_extremes"] = per;
  auto aux = nlohmann::ordered_json::array();
  for (const auto& l : r.auxiliary_loops) aux.push_back(loop_json(l, a));
  j["auxiliary_loops"] = aux;
  return j;
}

}  // namespace

void write_cycles_json(std::ostream& out, const std::vector<CycleReport>& reports,
                       const std::vector<CycleReport>& tightened, const CycleAnalyzer& a) {
  auto arr = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto j = report_json(reports[i], a);
    if (i < tightened.size()) {
      j["tightened_countries"] = loop_json(tightened[i].loop, a);
      j["tightened_extremes"] = {{"max", a.labels()[tightened[i].extremes.max]},
                                 {"min", a.labels()[tightened[i].extremes.min]}};
    }
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

void write_cycles_text(std::ostream& out, const std::vector<CycleReport>& reports,
                       const CycleAnalyzer& a) {
  auto countries = [&](const CycleReport& r) {
    std::string s;
    for (Vertex v : r.loop) s += (s.empty() ? "" : ", ") + a.labels()[v];
    return s;
  };
  out << "Birth     Death     Generating Countries\n";
  for (const auto& r : reports)
    if (!r.infinite())
      out << text::fixed6(r.birth) << "  " << text::fixed6(r.death) << "  " << countries(r)
          << '\n';
  bool header = false;
  for (const auto& r : reports) {
    if (!r.infinite()) continue;
    if (!header) {
      out << "\nInfinite bars (inherent to the border graph):\n";
      header = true;
    }
    out << text::fixed6(r.birth) << "  inf       " << countries(r) << '\n';
  }
}

}  // namespace devtopo
