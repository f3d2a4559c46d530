#pragma once

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdint>
#include <istream>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mosc/errors.hpp"
#include "mosc/sparse.hpp"

namespace mosc {

// Immutable undirected unweighted simple graph in compressed sparse adjacency
// form. Node ids are contiguous 0..n-1; the table of original input ids is
// kept so results can be reported in the caller's numbering.
class Graph {
 public:
  Graph() = default;

  // edges may contain each undirected edge once, in either orientation.
  // Self loops and duplicates are not allowed here (the edge-list loader
  // deals with dirty input).
  static Graph from_edges(int n, std::vector<std::pair<int, int>> edges,
                          std::vector<std::int64_t> original_ids = {}) {
    Graph g;
    g.n_ = n;
    g.m_ = static_cast<std::int64_t>(edges.size());
    std::vector<int> deg(n, 0);
    for (auto& [u, v] : edges) {
      if (u > v) std::swap(u, v);
      assert(u >= 0 && v < n && u != v);
      ++deg[u];
      ++deg[v];
    }
    g.offsets_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
      g.neighbors_[cursor[u]++] = v;
      g.neighbors_[cursor[v]++] = u;
    }
    for (int i = 0; i < n; ++i)
      std::sort(g.neighbors_.begin() + g.offsets_[i], g.neighbors_.begin() + g.offsets_[i + 1]);
    if (original_ids.empty()) {
      g.original_ids_.resize(n);
      for (int i = 0; i < n; ++i) g.original_ids_[i] = i;
    } else {
      assert(static_cast<int>(original_ids.size()) == n);
      g.original_ids_ = std::move(original_ids);
    }
    return g;
  }

  int node_count() const { return n_; }
  std::int64_t edge_count() const { return m_; }

  std::span<const int> neighbors(int v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  int degree(int v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }

  bool has_edge(int u, int v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  std::int64_t original_id(int v) const { return original_ids_[v]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

  // Each undirected edge once, with u < v, sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (int v : neighbors(u))
        if (u < v) es.emplace_back(u, v);
    return es;
  }

  // Unweighted adjacency as a symmetric sparse matrix (entries 1 on edges).
  SparseSymMatrix adjacency_matrix() const {
    std::vector<Triplet> t;
    t.reserve(2 * m_);
    for (int u = 0; u < n_; ++u)
      for (int v : neighbors(u)) t.push_back({u, v, 1.0});
    return SparseSymMatrix::from_symmetric_triplets(n_, t);
  }

  bool connected() const {
    if (n_ == 0) return true;
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : neighbors(u))
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
    }
    return count == n_;
  }

 private:
  int n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<int> neighbors_;
  std::vector<std::int64_t> original_ids_;
};

struct LoadReport {
  Graph graph;
  long self_loops_dropped = 0;
  long duplicate_edges_dropped = 0;
};

// Reads a whitespace-separated edge list. Lines starting with '#' are
// ignored. A line with a single integer declares a node with no edges (used
// by fixtures for graphs whose node set is larger than the set touched by
// edges). Ids are remapped to 0..n-1 in order of first appearance; the
// original ids are retained on the Graph.
inline LoadReport load_edge_list(std::istream& in) {
  std::unordered_map<std::int64_t, int> id_map;
  std::vector<std::int64_t> original_ids;
  auto intern = [&](std::int64_t raw) {
    auto [it, inserted] = id_map.try_emplace(raw, static_cast<int>(original_ids.size()));
    if (inserted) original_ids.push_back(raw);
    return it->second;
  };

  std::vector<std::pair<int, int>> edges;
  std::set<std::pair<int, int>> seen;
  LoadReport report;
  std::string line;
  long line_no = 0;
  bool any_tokens = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;

    std::int64_t vals[2];
    int n_vals = 0;
    const char* p = line.data() + start;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p >= end) break;
      if (n_vals == 2) throw ParseError("more than two tokens on edge line", line_no);
      auto [next, ec] = std::from_chars(p, end, vals[n_vals]);
      if (ec != std::errc() || (next < end && *next != ' ' && *next != '\t' && *next != '\r'))
        throw ParseError("malformed integer token '" + std::string(p, end) + "'", line_no);
      ++n_vals;
      p = next;
    }
    if (n_vals == 0) continue;
    any_tokens = true;
    if (n_vals == 1) {
      intern(vals[0]);
      continue;
    }
    int u = intern(vals[0]);
    int v = intern(vals[1]);
    if (u == v) {
      ++report.self_loops_dropped;
      continue;
    }
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) {
      ++report.duplicate_edges_dropped;
      continue;
    }
    edges.push_back(key);
  }
  if (!any_tokens) throw Error("empty edge list input");
  report.graph = Graph::from_edges(static_cast<int>(original_ids.size()), std::move(edges),
                                   std::move(original_ids));
  return report;
}

}  // namespace mosc
