#include "devtopo/filtration.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "devtopo/parallel.hpp"
#include "devtopo/text.hpp"

namespace devtopo {

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.birth != b.birth) return a.birth < b.birth;
  if (a.dim != b.dim) return a.dim < b.dim;
  return a.v < b.v;
}

Filtration::Filtration(std::vector<Simplex> sorted, std::size_t vertex_count, int max_dim,
                       double max_filtration)
    : simplices_(std::move(sorted)),
      vertex_count_(vertex_count),
      max_dim_(max_dim),
      max_filtration_(max_filtration) {
  if (vertex_count_ >= std::numeric_limits<std::uint16_t>::max())
    throw std::invalid_argument("filtration supports at most 65534 vertices");
  if (simplices_.size() >= std::numeric_limits<std::uint32_t>::max())
    throw std::invalid_argument("filtration too large");
  index_.reserve(simplices_.size() - std::min(simplices_.size(), vertex_count_));
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (simplices_[i].dim > 0)
      index_.emplace(key(simplices_[i].vertices()), static_cast<std::uint32_t>(i));
}

std::uint64_t Filtration::key(std::span<const Vertex> vertices) const {
  std::uint64_t k = 0;
  for (Vertex v : vertices) k = (k << 16) | (std::uint64_t(v) + 1);
  return k;
}

std::optional<std::size_t> Filtration::index_of(std::span<const Vertex> vertices) const {
  if (vertices.empty() || vertices.size() > std::size_t(kMaxSimplexDim) + 1)
    return std::nullopt;
  if (vertices.size() == 1) {
    // Vertices are born at 0 and sorted first, by index.
    if (vertices[0] >= vertex_count_) return std::nullopt;
    return vertices[0];
  }
  auto it = index_.find(key(vertices));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Filtration::edge_index(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  const Vertex e[2] = {a, b};
  return index_of(e);
}

std::vector<std::size_t> Filtration::boundary(std::size_t index) const {
  const Simplex& s = simplices_[index];
  std::vector<std::size_t> faces;
  if (s.dim == 0) return faces;
  faces.reserve(std::size_t(s.dim) + 1);
  std::array<Vertex, kMaxSimplexDim> face{};
  for (int skip = 0; skip <= s.dim; ++skip) {
    int k = 0;
    for (int t = 0; t <= s.dim; ++t)
      if (t != skip) face[k++] = s.v[t];
    auto idx = index_of(std::span<const Vertex>(face.data(), std::size_t(s.dim)));
    if (!idx) throw std::logic_error("filtration is not face-closed");
    faces.push_back(*idx);
  }
  std::sort(faces.begin(), faces.end());
  return faces;
}

std::size_t Filtration::prefix_end(double eps) const {
  auto it = std::upper_bound(simplices_.begin(), simplices_.end(), eps,
                             [](double e, const Simplex& s) { return e < s.birth; });
  return static_cast<std::size_t>(it - simplices_.begin());
}

std::size_t Filtration::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(
      simplices_.begin(), simplices_.end(), [dim](const Simplex& s) { return s.dim == dim; }));
}

namespace {

int checked_max_dim(const DistanceMatrix& d, int max_dim, double max_filtration,
                    std::vector<std::string>* warnings) {
  if (max_dim < 0) throw std::invalid_argument("max_dim must be non-negative");
  if (max_dim > kMaxSimplexDim)
    throw std::invalid_argument("max_dim above " + std::to_string(kMaxSimplexDim) +
                                " is not supported");
  if (!(max_filtration > 0)) throw std::invalid_argument("max_filtration must be positive");
  const int cap = d.size() == 0 ? 0 : static_cast<int>(d.size()) - 1;
  if (max_dim > cap) {
    if (warnings)
      warnings->push_back("max_dim " + std::to_string(max_dim) + " clamped to " +
                          std::to_string(cap) + " for " + std::to_string(d.size()) +
                          " points");
    max_dim = cap;
  }
  return max_dim;
}

bool edge_present(const DistanceMatrix& d, std::size_t i, std::size_t j, double max_f) {
  return d.reachable(i, j) && d(i, j) <= max_f;
}

Simplex vertex_simplex(Vertex v) {
  Simplex s;
  s.v[0] = v;
  return s;
}

// Appends every clique whose smallest vertex is `u`.
void cliques_from(const DistanceMatrix& d, const std::vector<std::vector<Vertex>>& forward,
                  Vertex u, int max_dim, std::vector<Simplex>& out) {
  Simplex s;
  s.v[0] = u;

  // Depth-first extension; `cand` holds common forward neighbors of s.
  auto extend = [&](auto&& self, const std::vector<Vertex>& cand, int dim, double birth) -> void {
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Vertex w = cand[a];
      double b = birth;
      for (int t = 0; t < dim; ++t) b = std::max(b, d(s.v[t], w));
      s.v[dim] = w;
      s.dim = dim;
      s.birth = b;
      out.push_back(s);
      if (dim < max_dim) {
        std::vector<Vertex> next;
        const auto& nw = forward[w];
        std::set_intersection(cand.begin() + std::ptrdiff_t(a) + 1, cand.end(), nw.begin(),
                              nw.end(), std::back_inserter(next));
        if (!next.empty()) self(self, next, dim + 1, b);
      }
      for (int t = dim; t <= kMaxSimplexDim; ++t) s.v[t] = 0;
    }
  };
  if (max_dim >= 1) extend(extend, forward[u], 1, 0.0);
}

}  // namespace

Filtration build_filtration(const DistanceMatrix& d, int max_dim, double max_filtration,
                            std::vector<std::string>* warnings) {
  max_dim = checked_max_dim(d, max_dim, max_filtration, warnings);
  const std::size_t n = d.size();

  std::vector<std::vector<Vertex>> forward(n);
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = ui + 1; j < n; ++j)
      if (edge_present(d, ui, j, max_filtration)) forward[ui].push_back(Vertex(j));
  }

  std::vector<std::vector<Simplex>> per_thread(static_cast<std::size_t>(par::max_threads()));
#pragma omp parallel
  {
    auto& local = per_thread[static_cast<std::size_t>(par::thread_num())];
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
      cliques_from(d, forward, Vertex(i), max_dim, local);
  }

  std::vector<Simplex> all;
  std::size_t total = n;
  for (const auto& p : per_thread) total += p.size();
  all.reserve(total);
  for (std::size_t i = 0; i < n; ++i) all.push_back(vertex_simplex(Vertex(i)));
  for (auto& p : per_thread) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end(), filtration_less);
  return Filtration(std::move(all), n, max_dim, max_filtration);
}

Filtration build_filtration_serial(const DistanceMatrix& d, int max_dim,
                                   double max_filtration, std::vector<std::string>* warnings) {
  max_dim = checked_max_dim(d, max_dim, max_filtration, warnings);
  const std::size_t n = d.size();
  std::vector<Simplex> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(vertex_simplex(Vertex(i)));

  // Walk all increasing vertex tuples of size 2..max_dim+1 in lexicographic order.
  for (int dim = 1; dim <= max_dim; ++dim) {
    std::vector<Vertex> idx(std::size_t(dim) + 1);
    for (int t = 0; t <= dim; ++t) idx[std::size_t(t)] = Vertex(t);
    while (true) {
      bool ok = true;
      double birth = 0.0;
      for (int a = 0; a <= dim && ok; ++a)
        for (int b = a + 1; b <= dim && ok; ++b) {
          const auto ia = idx[std::size_t(a)], ib = idx[std::size_t(b)];
          ok = edge_present(d, ia, ib, max_filtration);
          if (ok) birth = std::max(birth, d(ia, ib));
        }
      if (ok) {
        Simplex s;
        for (int t = 0; t <= dim; ++t) s.v[std::size_t(t)] = idx[std::size_t(t)];
        s.dim = dim;
        s.birth = birth;
        all.push_back(s);
      }
      int t = dim;
      while (t >= 0 && idx[std::size_t(t)] == Vertex(n - std::size_t(dim + 1 - t))) --t;
      if (t < 0) break;
      ++idx[std::size_t(t)];
      for (int u = t + 1; u <= dim; ++u) idx[std::size_t(u)] = idx[std::size_t(u - 1)] + 1;
    }
  }
  std::sort(all.begin(), all.end(), filtration_less);
  return Filtration(std::move(all), n, max_dim, max_filtration);
}

void write_filtration_text(std::ostream& out, const Filtration& f) {
  for (const auto& s : f) {
    out << s.dim << ' ' << text::fixed6(s.birth);
    for (Vertex v : s.vertices()) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace devtopo
