#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "mosc/errors.hpp"
#include "mosc/graph.hpp"
#include "mosc/sparse.hpp"
#include "mosc/triangles.hpp"

namespace mosc {

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("mixing parameter must lie in [0,1], got " +
                                std::to_string(lambda));
}

// L = D^{-1/2} (D - W) D^{-1/2}. Every row must have positive weight.
inline SparseSymMatrix normalized_laplacian(const SparseSymMatrix& w) {
  const int n = w.size();
  std::vector<double> d = w.row_sums();
  for (int i = 0; i < n; ++i)
    if (d[i] <= 0.0) throw IsolatedNodeError(i);
  std::vector<Triplet> t;
  t.reserve(w.nonzeros() + n);
  for (int i = 0; i < n; ++i) {
    double diag = 1.0;
    auto cs = w.row_cols(i);
    auto vs = w.row_values(i);
    for (std::size_t k = 0; k < cs.size(); ++k) {
      int j = cs[k];
      if (j == i) {
        diag -= vs[k] / d[i];
        continue;
      }
      t.push_back({i, j, -vs[k] / std::sqrt(d[i] * d[j])});
    }
    t.push_back({i, i, diag});
  }
  return SparseSymMatrix::from_symmetric_triplets(n, t);
}

// Mixed-order graph-Laplacian operator: W_X = (1-l) W_T + l W with its degree
// vector and normalised Laplacian.
struct MixedOperatorGL {
  double lambda = 0.0;
  SparseSymMatrix wx;
  std::vector<double> dx;
  SparseSymMatrix lx;
};

inline MixedOperatorGL build_gl(const Graph& g, const TriangleIndex& ti, double lambda) {
  check_lambda(lambda);
  const int n = g.node_count();
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count() + ti.wt().nonzeros());
  if (lambda > 0.0)
    for (int u = 0; u < n; ++u)
      for (int v : g.neighbors(u)) t.push_back({u, v, lambda});
  if (lambda < 1.0)
    for (int u = 0; u < n; ++u) {
      auto cs = ti.wt().row_cols(u);
      auto vs = ti.wt().row_values(u);
      for (std::size_t k = 0; k < cs.size(); ++k) t.push_back({u, cs[k], (1.0 - lambda) * vs[k]});
    }
  MixedOperatorGL op;
  op.lambda = lambda;
  op.wx = SparseSymMatrix::from_symmetric_triplets(n, t);
  op.dx = op.wx.row_sums();
  op.lx = normalized_laplacian(op.wx);  // throws IsolatedNodeError on zero rows
  return op;
}

// First-order transition matrix P = D^{-1} W. Zero-degree rows stay zero.
inline SparseMatrix transition_matrix(const Graph& g) {
  const int n = g.node_count();
  std::vector<Triplet> t;
  t.reserve(2 * g.edge_count());
  for (int u = 0; u < n; ++u) {
    int d = g.degree(u);
    if (d == 0) continue;
    for (int v : g.neighbors(u)) t.push_back({u, v, 1.0 / d});
  }
  return SparseMatrix(n, n, t);
}

// Rule for tensor slices whose normaliser vanishes. ZeroFill follows the
// printed mixed-order random-walk algorithm; UniformFill is the 1/n variant
// used by earlier tensor reductions, exposed for comparison.
enum class TensorFill { Zero, Uniform };

// Reduced second-order similarity matrix:
//   A(i,j) = (1/n) * sum_{k : (i,j,k) triangle} 1 / W_T(i,k).
// With TensorFill::Uniform every empty slice (i,*,k) contributes 1/n to all
// of row i, adding z_i/n^2 to every column where z_i counts empty slices.
inline SparseMatrix reduced_similarity(const TriangleIndex& ti, int n,
                                       TensorFill fill = TensorFill::Zero) {
  std::vector<Triplet> t;
  t.reserve(ti.triangle_count() * 6);
  const auto& wt = ti.wt();
  auto add = [&](int i, int j, int k) {
    double w = wt.value(i, k);
    t.push_back({i, j, 1.0 / (n * w)});
  };
  for (const auto& tr : ti.triangles()) {
    add(tr.a, tr.b, tr.c);
    add(tr.a, tr.c, tr.b);
    add(tr.b, tr.a, tr.c);
    add(tr.b, tr.c, tr.a);
    add(tr.c, tr.a, tr.b);
    add(tr.c, tr.b, tr.a);
  }
  if (fill == TensorFill::Uniform) {
    // z_i = #{k : W_T(i,k) = 0} counting k == i as empty unless W_T(i,i) > 0.
    for (int i = 0; i < n; ++i) {
      std::int64_t nonzero_slices = 0;
      auto vs = ti.wt().row_values(i);
      for (double v : vs)
        if (v > 0.0) ++nonzero_slices;
      double zi = static_cast<double>(n - nonzero_slices);
      if (zi == 0.0) continue;
      double fill_value = zi / (static_cast<double>(n) * n);
      for (int j = 0; j < n; ++j) t.push_back({i, j, fill_value});
    }
  }
  return SparseMatrix(n, n, t);
}

// Mixed-order random-walk operator: H = (1-l) A + l P.
struct MixedOperatorRW {
  double lambda = 0.0;
  SparseMatrix p;
  SparseMatrix a;
  SparseMatrix h;
  std::vector<int> zero_rows;  // isolated in both orders; kept, not repaired
};

inline MixedOperatorRW build_rw(const Graph& g, const TriangleIndex& ti, double lambda,
                                TensorFill fill = TensorFill::Zero) {
  check_lambda(lambda);
  const int n = g.node_count();
  MixedOperatorRW op;
  op.lambda = lambda;
  op.p = transition_matrix(g);
  op.a = reduced_similarity(ti, n, fill);
  std::vector<Triplet> t;
  t.reserve(op.p.nonzeros() + op.a.nonzeros());
  if (lambda > 0.0)
    for (int i = 0; i < n; ++i) {
      auto cs = op.p.row_cols(i);
      auto vs = op.p.row_values(i);
      for (std::size_t k = 0; k < cs.size(); ++k) t.push_back({i, cs[k], lambda * vs[k]});
    }
  if (lambda < 1.0)
    for (int i = 0; i < n; ++i) {
      auto cs = op.a.row_cols(i);
      auto vs = op.a.row_values(i);
      for (std::size_t k = 0; k < cs.size(); ++k) t.push_back({i, cs[k], (1.0 - lambda) * vs[k]});
    }
  op.h = SparseMatrix(n, n, t);
  auto sums = op.h.row_sums();
  for (int i = 0; i < n; ++i)
    if (sums[i] == 0.0) op.zero_rows.push_back(i);
  return op;
}

}  // namespace mosc
