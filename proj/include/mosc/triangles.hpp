#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "mosc/errors.hpp"
#include "mosc/graph.hpp"
#include "mosc/sparse.hpp"

namespace mosc {

struct Triangle {
  int a, b, c;  // a < b < c
  bool operator==(const Triangle&) const = default;
};

// Enumerated triangle list together with the derived triangle adjacency
// matrix W_T (entry (i,j) = number of triangles containing both i and j) and
// the triangle degrees d_T (row sums of W_T). Also keeps per-node incident
// triangle ids for incremental sweeps.
class TriangleIndex {
 public:
  TriangleIndex() = default;

  TriangleIndex(int n, std::vector<Triangle> triangles) : n_(n), triangles_(std::move(triangles)) {
    std::vector<Triplet> wt;
    wt.reserve(triangles_.size() * 6);
    for (const auto& t : triangles_) {
      wt.push_back({t.a, t.b, 1.0});
      wt.push_back({t.a, t.c, 1.0});
      wt.push_back({t.b, t.c, 1.0});
    }
    wt_ = SparseSymMatrix::from_pairs(n_, wt);
    dt_ = wt_.row_sums();

    std::vector<int> cnt(n_, 0);
    for (const auto& t : triangles_) {
      ++cnt[t.a];
      ++cnt[t.b];
      ++cnt[t.c];
    }
    incidence_offsets_.assign(n_ + 1, 0);
    for (int i = 0; i < n_; ++i) incidence_offsets_[i + 1] = incidence_offsets_[i] + cnt[i];
    incident_ids_.resize(incidence_offsets_[n_]);
    std::vector<std::int64_t> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
    for (std::size_t ti = 0; ti < triangles_.size(); ++ti) {
      const auto& t = triangles_[ti];
      incident_ids_[cursor[t.a]++] = static_cast<int>(ti);
      incident_ids_[cursor[t.b]++] = static_cast<int>(ti);
      incident_ids_[cursor[t.c]++] = static_cast<int>(ti);
    }
  }

  int node_count() const { return n_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::int64_t triangle_count() const { return static_cast<std::int64_t>(triangles_.size()); }
  const SparseSymMatrix& wt() const { return wt_; }
  const std::vector<double>& dt() const { return dt_; }

  // Number of triangles containing node v (= dt(v)/2).
  double triangle_degree(int v) const { return dt_[v] / 2.0; }

  std::span<const int> incident_triangles(int v) const {
    return {incident_ids_.data() + incidence_offsets_[v],
            incident_ids_.data() + incidence_offsets_[v + 1]};
  }

 private:
  int n_ = 0;
  std::vector<Triangle> triangles_;
  SparseSymMatrix wt_;
  std::vector<double> dt_;
  std::vector<std::int64_t> incidence_offsets_;
  std::vector<int> incident_ids_;
};

// Degree-ordered forward enumeration: orient every edge from lower to higher
// rank (degree, id) and intersect forward-neighbour lists. Each triangle is
// produced exactly once.
inline TriangleIndex enumerate_triangles(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> rank(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.degree(a) != g.degree(b)) return g.degree(a) < g.degree(b);
    return a < b;
  });
  for (int i = 0; i < n; ++i) rank[order[i]] = i;

  std::vector<std::vector<int>> forward(n);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u))
      if (rank[u] < rank[v]) forward[u].push_back(v);
  for (auto& f : forward) std::sort(f.begin(), f.end(), [&](int a, int b) { return rank[a] < rank[b]; });

  std::vector<Triangle> tris;
  std::vector<int> mark(n, -1);
  for (int u = 0; u < n; ++u) {
    for (int v : forward[u]) mark[v] = u;
    for (int v : forward[u]) {
      for (int w : forward[v]) {
        if (mark[w] == u) {
          std::array<int, 3> t{u, v, w};
          std::sort(t.begin(), t.end());
          tris.push_back({t[0], t[1], t[2]});
        }
      }
    }
  }
  std::sort(tris.begin(), tris.end(), [](const Triangle& x, const Triangle& y) {
    return std::tie(x.a, x.b, x.c) < std::tie(y.a, y.b, y.c);
  });
  return TriangleIndex(n, std::move(tris));
}

// ---------------------------------------------------------------------------
// Optional binary cache of a TriangleIndex keyed by a content hash of the
// graph's edge set.

inline std::uint64_t graph_content_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(g.node_count()));
  for (int u = 0; u < g.node_count(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) {
        mix(static_cast<std::uint64_t>(u));
        mix(static_cast<std::uint64_t>(v));
      }
  return h;
}

inline void save_triangle_cache(const std::string& path, const Graph& g, const TriangleIndex& ti) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write triangle cache: " + path);
  const char magic[8] = {'M', 'O', 'S', 'C', 'T', 'R', 'I', '1'};
  out.write(magic, 8);
  std::uint64_t hash = graph_content_hash(g);
  std::int64_t n = g.node_count(), t = ti.triangle_count();
  out.write(reinterpret_cast<const char*>(&hash), 8);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(&t), 8);
  for (const auto& tr : ti.triangles()) {
    std::int32_t abc[3] = {tr.a, tr.b, tr.c};
    out.write(reinterpret_cast<const char*>(abc), sizeof(abc));
  }
}

// Returns false when the cache is absent or belongs to a different graph.
inline bool load_triangle_cache(const std::string& path, const Graph& g, TriangleIndex& out_ti) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != "MOSCTRI1") return false;
  std::uint64_t hash;
  std::int64_t n, t;
  in.read(reinterpret_cast<char*>(&hash), 8);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&t), 8);
  if (!in || hash != graph_content_hash(g) || n != g.node_count()) return false;
  std::vector<Triangle> tris;
  tris.reserve(t);
  for (std::int64_t i = 0; i < t; ++i) {
    std::int32_t abc[3];
    in.read(reinterpret_cast<char*>(abc), sizeof(abc));
    if (!in) return false;
    tris.push_back({abc[0], abc[1], abc[2]});
  }
  out_ti = TriangleIndex(g.node_count(), std::move(tris));
  return true;
}

}  // namespace mosc
