#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "mosc/errors.hpp"
#include "mosc/graph.hpp"
#include "mosc/sparse.hpp"
#include "mosc/triangles.hpp"

namespace mosc {

enum class Criterion { Con2, Con3, ConX, ConGX, Ncut2, Ncut3, Nass2, Nass3, Exp2, Exp3 };

inline constexpr std::array<Criterion, 10> all_criteria() {
  return {Criterion::Con2,  Criterion::Con3,  Criterion::ConX,  Criterion::ConGX,
          Criterion::Ncut2, Criterion::Ncut3, Criterion::Nass2, Criterion::Nass3,
          Criterion::Exp2,  Criterion::Exp3};
}

// Nassoc criteria are maximised, everything else is minimised.
inline constexpr bool is_maximize(Criterion c) {
  return c == Criterion::Nass2 || c == Criterion::Nass3;
}

inline const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Con2: return "con2";
    case Criterion::Con3: return "con3";
    case Criterion::ConX: return "conx";
    case Criterion::ConGX: return "congx";
    case Criterion::Ncut2: return "ncut2";
    case Criterion::Ncut3: return "ncut3";
    case Criterion::Nass2: return "nass2";
    case Criterion::Nass3: return "nass3";
    case Criterion::Exp2: return "exp2";
    case Criterion::Exp3: return "exp3";
  }
  return "?";
}

inline Criterion parse_criterion(const std::string& s) {
  for (Criterion c : all_criteria())
    if (s == criterion_name(c)) return c;
  throw std::invalid_argument("unknown cut criterion: " + s);
}

// Membership bitmask over 0..n-1.
class NodeSet {
 public:
  explicit NodeSet(int n) : in_(n, 0), count_(0) {}

  static NodeSet of(int n, std::initializer_list<int> nodes) {
    NodeSet s(n);
    for (int v : nodes) s.add(v);
    return s;
  }

  int universe_size() const { return static_cast<int>(in_.size()); }
  int count() const { return count_; }
  bool contains(int v) const { return in_[v] != 0; }
  void add(int v) {
    if (!in_[v]) {
      in_[v] = 1;
      ++count_;
    }
  }
  void remove(int v) {
    if (in_[v]) {
      in_[v] = 0;
      --count_;
    }
  }
  bool proper() const { return count_ > 0 && count_ < universe_size(); }

  NodeSet complement() const {
    NodeSet c(universe_size());
    for (int v = 0; v < universe_size(); ++v)
      if (!contains(v)) c.add(v);
    return c;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count_);
    for (int v = 0; v < universe_size(); ++v)
      if (in_[v]) out.push_back(v);
    return out;
  }

 private:
  std::vector<char> in_;
  int count_;
};

// --- second-order primitives -----------------------------------------------

inline double cut2(const NodeSet& s, const Graph& g) {
  double c = 0;
  for (int u = 0; u < g.node_count(); ++u)
    if (s.contains(u))
      for (int v : g.neighbors(u))
        if (!s.contains(v)) c += 1;
  return c;
}

inline double vol2(const NodeSet& s, const Graph& g) {
  double v = 0;
  for (int u = 0; u < g.node_count(); ++u)
    if (s.contains(u)) v += g.degree(u);
  return v;
}

// Total degree inside the induced subgraph (twice the internal edge count).
inline double assoc2(const NodeSet& s, const Graph& g) {
  double a = 0;
  for (int u = 0; u < g.node_count(); ++u)
    if (s.contains(u))
      for (int v : g.neighbors(u))
        if (s.contains(v)) a += 1;
  return a;
}

inline double cut2(const NodeSet& s, const SparseSymMatrix& w) {
  double c = 0;
  for (int u = 0; u < w.size(); ++u)
    if (s.contains(u)) {
      auto cs = w.row_cols(u);
      auto vs = w.row_values(u);
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (!s.contains(cs[k])) c += vs[k];
    }
  return c;
}

inline double vol2(const NodeSet& s, const SparseSymMatrix& w) {
  double v = 0;
  for (int u = 0; u < w.size(); ++u)
    if (s.contains(u))
      for (double x : w.row_values(u)) v += x;
  return v;
}

inline double assoc2(const NodeSet& s, const SparseSymMatrix& w) {
  double a = 0;
  for (int u = 0; u < w.size(); ++u)
    if (s.contains(u)) {
      auto cs = w.row_cols(u);
      auto vs = w.row_values(u);
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (s.contains(cs[k])) a += vs[k];
    }
  return a;
}

// --- third-order primitives -------------------------------------------------

// Triangles with at least one endpoint on each side.
inline double cut3(const NodeSet& s, const TriangleIndex& ti) {
  double c = 0;
  for (const auto& t : ti.triangles()) {
    int k = s.contains(t.a) + s.contains(t.b) + s.contains(t.c);
    if (k > 0 && k < 3) c += 1;
  }
  return c;
}

// Triangle endpoints inside S; a triangle fully inside contributes 3.
inline double vol3(const NodeSet& s, const TriangleIndex& ti) {
  double v = 0;
  for (int u = 0; u < ti.node_count(); ++u)
    if (s.contains(u)) v += ti.triangle_degree(u);
  return v;
}

// Triangle endpoints inside the induced subgraph: 3 per fully-contained triangle.
inline double assoc3(const NodeSet& s, const TriangleIndex& ti) {
  double a = 0;
  for (const auto& t : ti.triangles())
    if (s.contains(t.a) && s.contains(t.b) && s.contains(t.c)) a += 3;
  return a;
}

// --- criterion evaluation ----------------------------------------------------

struct CutContext {
  const Graph* graph = nullptr;
  const TriangleIndex* triangles = nullptr;
  double lambda = 0.5;
  const SparseSymMatrix* wx = nullptr;  // mixed-order weighted graph, for ConGX
};

namespace detail {

inline double checked_ratio(double num, double den, Criterion c, const NodeSet& s) {
  if (den <= 0.0) throw UndefinedCriterionError(criterion_name(c), s.count());
  return num / den;
}

}  // namespace detail

// Exact Table-of-criteria formulas. Throws UndefinedCriterionError when a
// required volume vanishes and std::invalid_argument when the context lacks
// what the criterion needs.
inline double criterion_value(Criterion c, const NodeSet& s, const CutContext& ctx) {
  if (!s.proper()) throw std::invalid_argument("criterion requires a nonempty proper subset");
  const NodeSet sc = s.complement();
  switch (c) {
    case Criterion::Con2: {
      const Graph& g = *ctx.graph;
      return detail::checked_ratio(cut2(s, g), std::min(vol2(s, g), vol2(sc, g)), c, s);
    }
    case Criterion::Con3: {
      const TriangleIndex& ti = *ctx.triangles;
      return detail::checked_ratio(cut3(s, ti), std::min(vol3(s, ti), vol3(sc, ti)), c, s);
    }
    case Criterion::ConX: {
      const Graph& g = *ctx.graph;
      const TriangleIndex& ti = *ctx.triangles;
      const double l = ctx.lambda;
      double num = (1 - l) * cut3(s, ti) + l * cut2(s, g);
      double ds = (1 - l) * vol3(s, ti) + l * vol2(s, g);
      double dc = (1 - l) * vol3(sc, ti) + l * vol2(sc, g);
      return detail::checked_ratio(num, std::min(ds, dc), c, s);
    }
    case Criterion::ConGX: {
      if (!ctx.wx) throw std::invalid_argument("congx requires the mixed-order weighted graph");
      const SparseSymMatrix& w = *ctx.wx;
      return detail::checked_ratio(cut2(s, w), std::min(vol2(s, w), vol2(sc, w)), c, s);
    }
    case Criterion::Ncut2: {
      const Graph& g = *ctx.graph;
      double vs = vol2(s, g), vc = vol2(sc, g);
      if (vs <= 0 || vc <= 0) throw UndefinedCriterionError(criterion_name(c), s.count());
      return cut2(s, g) * (1 / vs + 1 / vc);
    }
    case Criterion::Ncut3: {
      const TriangleIndex& ti = *ctx.triangles;
      double vs = vol3(s, ti), vc = vol3(sc, ti);
      if (vs <= 0 || vc <= 0) throw UndefinedCriterionError(criterion_name(c), s.count());
      return cut3(s, ti) * (1 / vs + 1 / vc);
    }
    case Criterion::Nass2: {
      const Graph& g = *ctx.graph;
      double vs = vol2(s, g), vc = vol2(sc, g);
      if (vs <= 0 || vc <= 0) throw UndefinedCriterionError(criterion_name(c), s.count());
      return assoc2(s, g) / vs + assoc2(sc, g) / vc;
    }
    case Criterion::Nass3: {
      const TriangleIndex& ti = *ctx.triangles;
      double vs = vol3(s, ti), vc = vol3(sc, ti);
      if (vs <= 0 || vc <= 0) throw UndefinedCriterionError(criterion_name(c), s.count());
      return assoc3(s, ti) / vs + assoc3(sc, ti) / vc;
    }
    case Criterion::Exp2: {
      const Graph& g = *ctx.graph;
      return cut2(s, g) / std::min(s.count(), s.universe_size() - s.count());
    }
    case Criterion::Exp3: {
      const TriangleIndex& ti = *ctx.triangles;
      return cut3(s, ti) / std::min(s.count(), s.universe_size() - s.count());
    }
  }
  throw std::invalid_argument("unknown criterion");
}

// --- sweep cut ----------------------------------------------------------------

struct SweepCurve {
  std::vector<int> order;      // permutation of 0..n-1
  Criterion criterion;
  std::vector<double> values;  // values[u-1] = criterion at prefix of size u; NaN if undefined
  int best_u = 0;
  double best_value = std::numeric_limits<double>::quiet_NaN();

  NodeSet best_set() const {
    NodeSet s(static_cast<int>(order.size()));
    for (int i = 0; i < best_u; ++i) s.add(order[i]);
    return s;
  }

  void to_csv(std::ostream& out) const {
    out << "u," << criterion_name(criterion) << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) out << (i + 1) << "," << values[i] << "\n";
  }
};

// Evaluates the criterion on every prefix T_u, 1 <= u <= n-1, maintaining all
// cut/volume/association counters incrementally: O(deg) per node for edges and
// O(incident triangles) for triangles. Undefined prefixes are skipped; ties
// are broken towards the smallest u.
inline SweepCurve sweep_cut(const std::vector<int>& order, Criterion c, const CutContext& ctx) {
  const Graph& g = *ctx.graph;
  const int n = g.node_count();
  if (static_cast<int>(order.size()) != n || n < 2)
    throw std::invalid_argument("sweep order must be a permutation of all n >= 2 nodes");
  if (c == Criterion::ConGX && !ctx.wx)
    throw std::invalid_argument("congx requires the mixed-order weighted graph");

  const TriangleIndex* ti = ctx.triangles;
  const bool need_tri = c == Criterion::Con3 || c == Criterion::Ncut3 || c == Criterion::Nass3 ||
                        c == Criterion::Exp3 || c == Criterion::ConX;
  if (need_tri && !ti) throw std::invalid_argument("triangle criteria require a TriangleIndex");

  std::vector<char> in_s(n, 0);
  double total2 = 2.0 * g.edge_count();
  double vol2s = 0, cut2v = 0, assoc2s = 0;

  double total3 = 0, vol3s = 0, cut3v = 0, inside3 = 0;
  std::vector<unsigned char> tri_in;
  std::int64_t tri_total = 0;
  if (ti) {
    total3 = 6.0 * static_cast<double>(ti->triangle_count()) / 2.0;  // sum of triangle degrees
    tri_in.assign(ti->triangle_count(), 0);
    tri_total = ti->triangle_count();
  }

  const SparseSymMatrix* wx = ctx.wx;
  double wtotal = 0, wvols = 0, wcut = 0;
  std::vector<double> wdeg;
  if (wx) {
    wdeg = wx->row_sums();
    for (double d : wdeg) wtotal += d;
  }

  const double l = ctx.lambda;
  SweepCurve curve;
  curve.order = order;
  curve.criterion = c;
  curve.values.assign(n - 1, std::numeric_limits<double>::quiet_NaN());

  const bool maximize = is_maximize(c);
  bool found = false;

  for (int u = 1; u <= n - 1; ++u) {
    int v = order[u - 1];
    // edge counters
    double to_s = 0;
    for (int w : g.neighbors(v))
      if (in_s[w]) to_s += 1;
    cut2v += g.degree(v) - 2 * to_s;
    vol2s += g.degree(v);
    assoc2s += 2 * to_s;
    // weighted counters
    if (wx) {
      double wto_s = 0;
      auto cs = wx->row_cols(v);
      auto vs = wx->row_values(v);
      for (std::size_t k = 0; k < cs.size(); ++k)
        if (in_s[cs[k]]) wto_s += vs[k];
      wcut += wdeg[v] - 2 * wto_s;
      wvols += wdeg[v];
    }
    // triangle counters
    if (ti) {
      vol3s += ti->triangle_degree(v);
      for (int t : ti->incident_triangles(v)) {
        unsigned char before = tri_in[t]++;
        if (before == 0) cut3v += 1;       // first endpoint enters: now straddling
        else if (before == 2) {            // last endpoint enters: fully inside
          cut3v -= 1;
          inside3 += 1;
        }
      }
    }
    in_s[v] = 1;

    double vol2c = total2 - vol2s;
    double val = std::numeric_limits<double>::quiet_NaN();
    switch (c) {
      case Criterion::Con2: {
        double d = std::min(vol2s, vol2c);
        if (d > 0) val = cut2v / d;
        break;
      }
      case Criterion::Ncut2:
        if (vol2s > 0 && vol2c > 0) val = cut2v * (1 / vol2s + 1 / vol2c);
        break;
      case Criterion::Nass2: {
        double assoc2c = total2 - 2 * cut2v - assoc2s;
        if (vol2s > 0 && vol2c > 0) val = assoc2s / vol2s + assoc2c / vol2c;
        break;
      }
      case Criterion::Exp2:
        val = cut2v / std::min(u, n - u);
        break;
      case Criterion::Con3: {
        double vol3c = total3 - vol3s;
        double d = std::min(vol3s, vol3c);
        if (d > 0) val = cut3v / d;
        break;
      }
      case Criterion::Ncut3: {
        double vol3c = total3 - vol3s;
        if (vol3s > 0 && vol3c > 0) val = cut3v * (1 / vol3s + 1 / vol3c);
        break;
      }
      case Criterion::Nass3: {
        double vol3c = total3 - vol3s;
        double a3s = 3 * inside3;
        double a3c = 3 * (static_cast<double>(tri_total) - inside3 - cut3v);
        if (vol3s > 0 && vol3c > 0) val = a3s / vol3s + a3c / vol3c;
        break;
      }
      case Criterion::Exp3:
        val = cut3v / std::min(u, n - u);
        break;
      case Criterion::ConX: {
        double vol3c = total3 - vol3s;
        double num = (1 - l) * cut3v + l * cut2v;
        double d = std::min((1 - l) * vol3s + l * vol2s, (1 - l) * vol3c + l * vol2c);
        if (d > 0) val = num / d;
        break;
      }
      case Criterion::ConGX: {
        double wvolc = wtotal - wvols;
        double d = std::min(wvols, wvolc);
        if (d > 0) val = wcut / d;
        break;
      }
    }
    curve.values[u - 1] = val;
    if (std::isnan(val)) continue;
    if (!found || (maximize ? val > curve.best_value : val < curve.best_value)) {
      found = true;
      curve.best_value = val;
      curve.best_u = u;
    }
  }
  if (!found)
    throw Error(std::string("criterion ") + criterion_name(c) + " undefined on every sweep prefix");
  return curve;
}

}  // namespace mosc
