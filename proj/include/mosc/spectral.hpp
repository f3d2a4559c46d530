#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mosc/errors.hpp"
#include "mosc/sparse.hpp"

namespace mosc {

struct SolverOptions {
  double tol = 1e-8;
  int max_matvecs = 0;  // 0: 10 * n
  unsigned seed = 12345;
};

struct EigenResult {
  std::vector<double> values;    // ascending (symmetric) or real part descending
  Eigen::MatrixXd vectors;       // n x k, column j pairs with values[j]
  std::vector<double> residuals; // ||M v - theta v||_2 per pair
  std::vector<std::string> warnings;
};

namespace detail {

inline int default_budget(int n, const SolverOptions& opts) {
  if (opts.max_matvecs > 0) return opts.max_matvecs;
  return std::max(10 * n, 50);
}

// Orient v so that its largest-magnitude entry (first on ties) is positive.
inline void fix_sign(Eigen::VectorXd& v) {
  int best = 0;
  double mag = -1.0;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > mag) {
      mag = std::abs(v[i]);
      best = i;
    }
  if (v[best] < 0) v = -v;
}

// Two-pass modified Gram-Schmidt of v against the columns of each basis.
template <typename... Basis>
inline void orthogonalize(Eigen::VectorXd& v, const Basis&... bases) {
  for (int pass = 0; pass < 2; ++pass) {
    auto project_out = [&v](const Eigen::MatrixXd& b) {
      for (int j = 0; j < b.cols(); ++j) v -= (b.col(j).dot(v)) * b.col(j);
    };
    (project_out(bases), ...);
  }
}

inline Eigen::VectorXd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = dist(rng);
  double nrm = v.norm();
  if (nrm == 0.0) v[0] = 1.0, nrm = 1.0;
  return v / nrm;
}

}  // namespace detail

// k algebraically smallest eigenpairs of a symmetric matrix via restarted
// Lanczos with full reorthogonalization and locking of converged pairs.
// Deterministic for a fixed seed.
template <typename SymMat>
EigenResult smallest_eigenpairs_sym(const SymMat& m, int k, SolverOptions opts = {}) {
  const int n = m.size();
  if (k < 1 || k > n) throw std::invalid_argument("eigenpair count must lie in [1, n]");
  const double scale = std::max(1.0, m.frobenius_norm());
  const double tol = opts.tol * scale;
  std::mt19937_64 rng(opts.seed);
  int budget = detail::default_budget(n, opts);

  Eigen::MatrixXd locked(n, 0);
  std::vector<double> locked_values;
  Eigen::VectorXd start = detail::random_unit(n, rng);
  double best_residual = std::numeric_limits<double>::infinity();

  while (static_cast<int>(locked_values.size()) < k && budget > 0) {
    const int want = k - static_cast<int>(locked_values.size());
    const int mdim = std::min(n - static_cast<int>(locked_values.size()),
                              std::max(2 * want + 20, 40));
    Eigen::MatrixXd basis(n, mdim);
    Eigen::VectorXd alpha(mdim), beta(mdim);
    alpha.setZero();
    beta.setZero();

    Eigen::VectorXd v = start;
    detail::orthogonalize(v, locked);
    if (v.norm() < 1e-12) v = detail::random_unit(n, rng), detail::orthogonalize(v, locked);
    v.normalize();

    int built = 0;
    Eigen::VectorXd w(n);
    while (built < mdim && budget > 0) {
      basis.col(built) = v;
      m.multiply(v, w);
      --budget;
      double a = v.dot(w);
      alpha[built] = a;
      w -= a * v;
      if (built > 0) w -= beta[built - 1] * basis.col(built - 1);
      detail::orthogonalize(w, locked, basis.leftCols(built + 1));
      double b = w.norm();
      ++built;
      if (built == mdim) break;
      if (b < 1e-12 * scale) {
        // invariant subspace; continue from a fresh direction
        w = detail::random_unit(n, rng);
        detail::orthogonalize(w, locked, basis.leftCols(built));
        double nw = w.norm();
        if (nw < 1e-12) break;
        w /= nw;
        beta[built - 1] = 0.0;
        v = w;
        continue;
      }
      beta[built - 1] = b;
      v = w / b;
    }
    if (built == 0) break;

    Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(built, built);
    for (int i = 0; i < built; ++i) {
      tmat(i, i) = alpha[i];
      if (i + 1 < built && beta[i] != 0.0) tmat(i, i + 1) = tmat(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tmat);

    // lock converged Ritz pairs from the bottom of the spectrum
    bool locked_any = false;
    Eigen::VectorXd first_unconverged;
    for (int i = 0; i < built && static_cast<int>(locked_values.size()) < k; ++i) {
      Eigen::VectorXd y = basis.leftCols(built) * es.eigenvectors().col(i);
      detail::orthogonalize(y, locked);
      double ny = y.norm();
      if (ny < 1e-8) continue;
      y /= ny;
      m.multiply(y, w);
      --budget;
      double theta = y.dot(w);
      double res = (w - theta * y).norm();
      best_residual = std::min(best_residual, res);
      if (res <= tol || built == n - static_cast<int>(locked_values.size())) {
        locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
        locked.col(locked.cols() - 1) = y;
        locked_values.push_back(theta);
        locked_any = true;
      } else if (first_unconverged.size() == 0) {
        first_unconverged = y;
      }
    }
    start = first_unconverged.size() ? first_unconverged : detail::random_unit(n, rng);
    if (!locked_any && budget <= 0) break;
  }

  if (static_cast<int>(locked_values.size()) < k)
    throw EigensolverError("Lanczos failed to converge " + std::to_string(k) + " pairs within budget",
                           best_residual);

  // sort locked pairs ascending and normalise signs
  std::vector<int> idx(locked_values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return locked_values[a] < locked_values[b]; });
  EigenResult result;
  result.vectors.resize(n, k);
  Eigen::VectorXd w(n);
  for (int j = 0; j < k; ++j) {
    Eigen::VectorXd y = locked.col(idx[j]);
    detail::fix_sign(y);
    result.vectors.col(j) = y;
    result.values.push_back(locked_values[idx[j]]);
    m.multiply(y, w);
    result.residuals.push_back((w - locked_values[idx[j]] * y).norm());
  }
  return result;
}

// k eigenpairs with largest real part of a square real matrix, possibly
// nonsymmetric, via restarted Arnoldi with full reorthogonalization.
// Returned vectors are real parts, unit norm, dominant entry positive; a
// warning is recorded for every requested eigenvalue whose imaginary part
// exceeds 1e-8, and the stored residual is that of the complex pair.
template <typename Mat>
EigenResult largest_eigenpairs(const Mat& m, int k, SolverOptions opts = {}) {
  const int n = m.rows();
  if (k < 1 || k > n) throw std::invalid_argument("eigenpair count must lie in [1, n]");
  const double scale = std::max(1.0, m.frobenius_norm());
  const double tol = opts.tol * scale;
  std::mt19937_64 rng(opts.seed);
  int budget = detail::default_budget(n, opts);

  // locked exact invariant pairs found at breakdowns
  Eigen::MatrixXcd locked(n, 0);
  std::vector<std::complex<double>> locked_values;

  Eigen::VectorXd start = detail::random_unit(n, rng);
  double best_residual = std::numeric_limits<double>::infinity();

  struct Pair {
    std::complex<double> value;
    Eigen::VectorXcd vector;
    double residual;
  };
  std::vector<Pair> final_pairs;

  auto orth_locked = [&](Eigen::VectorXd& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < locked.cols(); ++j) {
        std::complex<double> c = locked.col(j).dot(v.cast<std::complex<double>>());
        Eigen::VectorXcd corr = locked.col(j) * c;
        v -= corr.real();
      }
  };

  while (budget > 0) {
    const int already = static_cast<int>(locked_values.size());
    const int want = k - already;
    if (want <= 0) break;
    const int mdim = std::min(n - already, std::max(3 * want + 20, 40));

    Eigen::MatrixXd basis(n, mdim + 1);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(mdim + 1, mdim);
    Eigen::VectorXd v = start;
    orth_locked(v);
    if (v.norm() < 1e-12) {
      v = detail::random_unit(n, rng);
      orth_locked(v);
    }
    v.normalize();
    basis.col(0) = v;

    int built = 0;
    bool invariant = false;
    Eigen::VectorXd w(n);
    while (built < mdim && budget > 0) {
      m.multiply(basis.col(built), w);
      --budget;
      orth_locked(w);
      for (int i = 0; i <= built; ++i) {
        double h = basis.col(i).dot(w);
        hess(i, built) += h;
        w -= h * basis.col(i);
      }
      // second orthogonalization pass for stability
      for (int i = 0; i <= built; ++i) {
        double h = basis.col(i).dot(w);
        hess(i, built) += h;
        w -= h * basis.col(i);
      }
      double b = w.norm();
      if (b < 1e-12 * scale) {
        invariant = true;
        ++built;
        break;
      }
      hess(built + 1, built) = b;
      basis.col(built + 1) = w / b;
      ++built;
    }
    if (built == 0) break;

    Eigen::MatrixXd hsq = hess.topLeftCorner(built, built);
    Eigen::EigenSolver<Eigen::MatrixXd> es(hsq);
    std::vector<int> order(built);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      double ra = es.eigenvalues()[a].real(), rb = es.eigenvalues()[b].real();
      if (ra != rb) return ra > rb;
      return es.eigenvalues()[a].imag() > es.eigenvalues()[b].imag();
    });

    const bool exact = invariant || built == n - already;
    bool all_converged = true;
    std::vector<Pair> current;
    for (int j = 0; j < want && j < built; ++j) {
      int i = order[j];
      Eigen::VectorXcd y = basis.leftCols(built) * es.eigenvectors().col(i);
      double ny = y.norm();
      if (ny < 1e-12) continue;
      y /= ny;
      std::complex<double> theta = es.eigenvalues()[i];
      // true residual
      Eigen::VectorXd yr = y.real(), yi = y.imag(), wr(n), wi(n);
      m.multiply(yr, wr);
      m.multiply(yi, wi);
      budget -= 2;
      Eigen::VectorXcd resv =
          wr.cast<std::complex<double>>() + std::complex<double>(0, 1) * wi.cast<std::complex<double>>();
      resv -= theta * y;
      double res = resv.norm();
      best_residual = std::min(best_residual, res);
      current.push_back({theta, y, res});
      if (res > tol && !exact) all_converged = false;
    }

    if ((all_converged && static_cast<int>(current.size()) == want) || exact) {
      if (exact && static_cast<int>(current.size()) < want) {
        // lock what the invariant subspace gave us and go find the rest
        for (auto& p : current) {
          locked.conservativeResize(Eigen::NoChange, locked.cols() + 1);
          locked.col(locked.cols() - 1) = p.vector;
          locked_values.push_back(p.value);
          final_pairs.push_back(std::move(p));
        }
        start = detail::random_unit(n, rng);
        continue;
      }
      for (auto& p : current) final_pairs.push_back(std::move(p));
      break;
    }
    // explicit restart towards the wanted invariant subspace
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    for (const auto& p : current) next += p.vector.real();
    if (next.norm() < 1e-12) next = detail::random_unit(n, rng);
    start = next;
  }

  if (static_cast<int>(final_pairs.size()) < k)
    throw EigensolverError("Arnoldi failed to converge " + std::to_string(k) + " pairs within budget",
                           best_residual);

  std::sort(final_pairs.begin(), final_pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  });

  EigenResult result;
  result.vectors.resize(n, k);
  for (int j = 0; j < k; ++j) {
    const auto& p = final_pairs[j];
    if (std::abs(p.value.imag()) > 1e-8)
      result.warnings.push_back("eigenvalue " + std::to_string(j) +
                                " has imaginary part " + std::to_string(p.value.imag()) +
                                "; real part used");
    Eigen::VectorXd y = p.vector.real();
    double ny = y.norm();
    if (ny < 1e-12) {
      y = p.vector.imag();
      ny = y.norm();
    }
    y /= ny;
    detail::fix_sign(y);
    result.vectors.col(j) = y;
    result.values.push_back(p.value.real());
    result.residuals.push_back(p.residual);
  }
  return result;
}

}  // namespace mosc
