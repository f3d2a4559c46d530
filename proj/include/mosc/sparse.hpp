#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mosc {

struct Triplet {
  int row;
  int col;
  double value;
};

namespace detail {

// Shared CSR core. Rows are sorted by column and duplicate entries are summed.
class Csr {
 public:
  Csr() : n_rows_(0), n_cols_(0), offsets_{0} {}

  Csr(int n_rows, int n_cols, const std::vector<Triplet>& triplets)
      : n_rows_(n_rows), n_cols_(n_cols) {
    std::vector<std::vector<std::pair<int, double>>> rows(n_rows);
    for (const auto& t : triplets) {
      assert(t.row >= 0 && t.row < n_rows && t.col >= 0 && t.col < n_cols);
      rows[t.row].emplace_back(t.col, t.value);
    }
    offsets_.assign(n_rows + 1, 0);
    for (int i = 0; i < n_rows; ++i) {
      auto& r = rows[i];
      std::sort(r.begin(), r.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      // merge duplicates
      std::size_t w = 0;
      for (std::size_t j = 0; j < r.size(); ++j) {
        if (w > 0 && r[w - 1].first == r[j].first) {
          r[w - 1].second += r[j].second;
        } else {
          r[w++] = r[j];
        }
      }
      r.resize(w);
      offsets_[i + 1] = offsets_[i] + static_cast<std::int64_t>(w);
    }
    cols_.reserve(offsets_[n_rows]);
    values_.reserve(offsets_[n_rows]);
    for (const auto& r : rows) {
      for (const auto& [c, v] : r) {
        cols_.push_back(c);
        values_.push_back(v);
      }
    }
  }

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  std::int64_t nonzeros() const { return static_cast<std::int64_t>(cols_.size()); }

  std::span<const int> row_cols(int i) const {
    return {cols_.data() + offsets_[i], cols_.data() + offsets_[i + 1]};
  }
  std::span<const double> row_values(int i) const {
    return {values_.data() + offsets_[i], values_.data() + offsets_[i + 1]};
  }

  double value(int i, int j) const {
    auto cs = row_cols(i);
    auto it = std::lower_bound(cs.begin(), cs.end(), j);
    if (it == cs.end() || *it != j) return 0.0;
    return values_[offsets_[i] + (it - cs.begin())];
  }

  std::vector<double> row_sums() const {
    std::vector<double> s(n_rows_, 0.0);
    for (int i = 0; i < n_rows_; ++i)
      for (double v : row_values(i)) s[i] += v;
    return s;
  }

  // y = M x
  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.setZero(n_rows_);
    for (int i = 0; i < n_rows_; ++i) {
      double acc = 0.0;
      auto cs = row_cols(i);
      auto vs = row_values(i);
      for (std::size_t k = 0; k < cs.size(); ++k) acc += vs[k] * x[cs[k]];
      y[i] = acc;
    }
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_rows_, n_cols_);
    for (int i = 0; i < n_rows_; ++i) {
      auto cs = row_cols(i);
      auto vs = row_values(i);
      for (std::size_t k = 0; k < cs.size(); ++k) m(i, cs[k]) = vs[k];
    }
    return m;
  }

 private:
  int n_rows_;
  int n_cols_;
  std::vector<std::int64_t> offsets_;
  std::vector<int> cols_;
  std::vector<double> values_;
};

}  // namespace detail

// General sparse real matrix in CSR form.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int n_rows, int n_cols, const std::vector<Triplet>& triplets)
      : csr_(n_rows, n_cols, triplets) {}

  int rows() const { return csr_.rows(); }
  int cols() const { return csr_.cols(); }
  std::int64_t nonzeros() const { return csr_.nonzeros(); }
  double value(int i, int j) const { return csr_.value(i, j); }
  std::span<const int> row_cols(int i) const { return csr_.row_cols(i); }
  std::span<const double> row_values(int i) const { return csr_.row_values(i); }
  std::vector<double> row_sums() const { return csr_.row_sums(); }
  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { csr_.multiply(x, y); }
  double frobenius_norm() const { return csr_.frobenius_norm(); }
  Eigen::MatrixXd dense() const { return csr_.dense(); }

 private:
  detail::Csr csr_;
};

// Symmetric nonnegative sparse matrix; both triangles are stored so row access
// is enough for everything downstream.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  // Triplets may list each unordered pair once (i<j, or any orientation);
  // the missing mirror entries are filled in. Diagonal entries are kept as is.
  static SparseSymMatrix from_pairs(int n, const std::vector<Triplet>& upper) {
    std::vector<Triplet> both;
    both.reserve(upper.size() * 2);
    for (const auto& t : upper) {
      assert(t.value >= 0.0);
      both.push_back(t);
      if (t.row != t.col) both.push_back({t.col, t.row, t.value});
    }
    SparseSymMatrix m;
    m.csr_ = detail::Csr(n, n, both);
    return m;
  }

  // Triplets already contain both (i,j) and (j,i).
  static SparseSymMatrix from_symmetric_triplets(int n, const std::vector<Triplet>& triplets) {
    SparseSymMatrix m;
    m.csr_ = detail::Csr(n, n, triplets);
    return m;
  }

  int size() const { return csr_.rows(); }
  std::int64_t nonzeros() const { return csr_.nonzeros(); }
  double value(int i, int j) const { return csr_.value(i, j); }
  std::span<const int> row_cols(int i) const { return csr_.row_cols(i); }
  std::span<const double> row_values(int i) const { return csr_.row_values(i); }
  std::vector<double> row_sums() const { return csr_.row_sums(); }
  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const { csr_.multiply(x, y); }
  double frobenius_norm() const { return csr_.frobenius_norm(); }
  Eigen::MatrixXd dense() const { return csr_.dense(); }

 private:
  detail::Csr csr_;
};

// Row sums of a symmetric weight matrix; the degree vector of the weighted graph.
inline std::vector<double> degree_vector(const SparseSymMatrix& w) { return w.row_sums(); }

}  // namespace mosc
