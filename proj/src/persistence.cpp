#include "devtopo/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "devtopo/text.hpp"

namespace devtopo {

namespace {

using Column = std::vector<std::uint32_t>;

// dst <- dst xor src over sorted index lists.
void add_column(Column& dst, const Column& src, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(),
                                std::back_inserter(scratch));
  dst.swap(scratch);
}

bool interval_less(const PersistenceInterval& a, const PersistenceInterval& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.death != b.death) return a.death < b.death;
  return a.birth_simplex < b.birth_simplex;
}

std::vector<std::size_t> widen(const Column& c) { return {c.begin(), c.end()}; }

}  // namespace

Barcode::Barcode(std::vector<PersistenceInterval> intervals, int max_dim,
                 double max_filtration, std::size_t unpaired_top)
    : intervals_(std::move(intervals)),
      max_dim_(max_dim),
      max_filtration_(max_filtration),
      unpaired_top_(unpaired_top) {
  std::sort(intervals_.begin(), intervals_.end(), interval_less);
}

std::vector<PersistenceInterval> Barcode::visible(int dim) const {
  std::vector<PersistenceInterval> out;
  for (const auto& iv : intervals_)
    if (iv.dim == dim && iv.death > iv.birth) out.push_back(iv);
  return out;
}

std::vector<PersistenceInterval> Barcode::all(int dim) const {
  std::vector<PersistenceInterval> out;
  for (const auto& iv : intervals_)
    if (iv.dim == dim) out.push_back(iv);
  return out;
}

Barcode reduce(const Filtration& f) {
  const std::size_t n = f.size();
  const int top = f.max_dim();

  std::vector<Column> reduced(n);          // nonzero reduced columns only
  std::vector<std::int64_t> pivot_of(n, -1);  // row -> column holding that pivot
  std::vector<std::uint8_t> cleared(n, 0);
  std::vector<Column> chain(n);            // V columns, tracked for dimension 1
  std::vector<std::uint8_t> positive(n, 0);
  std::size_t unpaired_top = 0;

  std::vector<std::vector<std::uint32_t>> by_dim(std::size_t(top) + 1);
  for (std::size_t i = 0; i < n; ++i) by_dim[std::size_t(f[i].dim)].push_back(std::uint32_t(i));

  Column col, scratch, vcol;
  for (int d = top; d >= 1; --d) {
    const bool track = (d == 1);
    for (std::uint32_t j : by_dim[std::size_t(d)]) {
      if (cleared[j]) continue;
      const auto faces = f.boundary(j);
      col.assign(faces.begin(), faces.end());
      if (track) vcol.assign(1, j);
      while (!col.empty()) {
        const auto owner = pivot_of[col.back()];
        if (owner < 0) break;
        add_column(col, reduced[std::size_t(owner)], scratch);
        if (track) add_column(vcol, chain[std::size_t(owner)], scratch);
      }
      if (col.empty()) {
        positive[j] = 1;
        if (d == top) ++unpaired_top;
      } else {
        pivot_of[col.back()] = j;
        cleared[col.back()] = 1;
        reduced[j].swap(col);
        col.clear();
      }
      if (track) chain[j].swap(vcol);
    }
  }

  std::vector<PersistenceInterval> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = f[i].dim;
    if (d >= top && top > 0) continue;
    const bool is_positive = d == 0 || cleared[i] || positive[i];
    if (!is_positive) continue;
    PersistenceInterval iv;
    iv.dim = d;
    iv.birth = f[i].birth;
    iv.birth_simplex = i;
    if (pivot_of[i] >= 0) {
      const auto j = std::size_t(pivot_of[i]);
      iv.death = f[j].birth;
      iv.death_simplex = j;
      if (d >= 1) iv.representative = widen(reduced[j]);
    } else {
      iv.death = kInfinity;
      if (d == 1) iv.representative = widen(chain[i]);
    }
    out.push_back(std::move(iv));
  }
  return Barcode(std::move(out), top, f.max_filtration(), unpaired_top);
}

std::size_t betti_at(const Barcode& b, int k, double eps) {
  std::size_t c = 0;
  for (const auto& iv : b.intervals())
    if (iv.dim == k && iv.birth <= eps && eps < iv.death) ++c;
  return c;
}

std::vector<PersistenceInterval> infinite_intervals(const Barcode& b, int k) {
  std::vector<PersistenceInterval> out;
  for (const auto& iv : b.intervals())
    if (iv.dim == k && iv.infinite()) out.push_back(iv);
  return out;
}

std::vector<std::size_t> representative(const Barcode&, const PersistenceInterval& iv) {
  if (iv.dim == 0) return {iv.birth_simplex};
  return iv.representative;
}

std::vector<std::pair<Vertex, Vertex>> chain_edges(const Filtration& f,
                                                   std::span<const std::size_t> chain) {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(chain.size());
  for (auto idx : chain) {
    const auto& s = f[idx];
    if (s.dim != 1) throw std::invalid_argument("chain_edges: not a 1-chain");
    out.emplace_back(s.v[0], s.v[1]);
  }
  return out;
}

bool is_cycle(const Filtration& f, std::span<const std::size_t> chain) {
  std::vector<std::size_t> faces;
  for (auto idx : chain) {
    auto b = f.boundary(idx);
    faces.insert(faces.end(), b.begin(), b.end());
  }
  std::sort(faces.begin(), faces.end());
  for (std::size_t i = 0; i < faces.size();) {
    std::size_t j = i;
    while (j < faces.size() && faces[j] == faces[i]) ++j;
    if ((j - i) % 2) return false;
    i = j;
  }
  return true;
}

void write_barcode_csv(std::ostream& out, const Barcode& b, const Filtration& f,
                       std::span<const std::string> labels) {
  auto label = [&](Vertex v) -> std::string {
    return v < labels.size() ? labels[v] : std::to_string(v);
  };
  out << "dim,birth,death,representative\n";
  for (int d = 0; d <= b.max_degree(); ++d) {
    for (const auto& iv : b.visible(d)) {
      out << iv.dim << ',' << text::fixed6(iv.birth) << ','
          << (iv.infinite() ? std::string("inf") : text::fixed6(iv.death)) << ',';
      const auto rep = representative(b, iv);
      for (std::size_t k = 0; k < rep.size(); ++k) {
        if (k) out << ';';
        const auto& s = f[rep[k]];
        for (int t = 0; t <= s.dim; ++t) out << (t ? "-" : "") << label(s.v[std::size_t(t)]);
      }
      out << '\n';
    }
  }
}

}  // namespace devtopo
