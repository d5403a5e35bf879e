#pragma once

// Phase-one simplex for small dense equality-feasibility problems:
// find x >= 0 with A x = b, A being m x n with m, n in the tens.
//
// Two arithmetic modes share the code path:
//   - Rational: exact pivots, exact zero tests; the answer is a certificate.
//   - double: epsilon zero tests, used when the input itself is float.
//
// Redundant rows are removed by Gauss-Jordan rank filtering up front (each
// context contributes one dependent equality once normalization is present),
// which also catches inconsistent systems before any pivoting. Ties in the
// simplex are broken by Bland's rule, so cycling cannot occur.

#include <vector>

#include "bellkit/errors.hpp"
#include "bellkit/rational.hpp"

namespace bellkit {

template <class T>
struct SimplexTraits;

template <>
struct SimplexTraits<Rational> {
  static bool is_zero(const Rational& v) { return v.num() == 0; }
  static bool is_feasible_objective(const Rational& v) { return v.num() == 0; }
  static double pivot_size(const Rational& v) { return v.num() == 0 ? 0.0 : 1.0; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
};

template <>
struct SimplexTraits<double> {
  static constexpr double kZeroTol = 1e-11;
  static constexpr double kObjectiveTol = 1e-9;
  static bool is_zero(double v) { return v > -kZeroTol && v < kZeroTol; }
  static bool is_feasible_objective(double v) { return v < kObjectiveTol; }
  static double pivot_size(double v) { return v < 0 ? -v : v; }
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
};

template <class T>
struct Feasibility {
  bool feasible = false;
  std::vector<T> x;  // witness when feasible
  bool inconsistent = false;  // rank filter found 0 = nonzero
};

template <class T>
Feasibility<T> solve_equality_feasibility(std::vector<std::vector<T>> a, std::vector<T> b) {
  using Tr = SimplexTraits<T>;
  const std::size_t m_in = a.size();
  const std::size_t n = m_in == 0 ? 0 : a[0].size();
  for (auto& row : a) {
    if (row.size() != n) throw ValidationError("ragged constraint matrix");
  }
  if (b.size() != m_in) throw ValidationError("rhs size mismatch");

  // --- Rank filter: Gauss-Jordan on [A | b] with largest-pivot selection.
  std::vector<std::size_t> pivot_rows;
  std::vector<bool> used(m_in, false);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = m_in;
    double best_size = 0.0;
    for (std::size_t r = 0; r < m_in; ++r) {
      if (used[r]) continue;
      double size = Tr::pivot_size(a[r][col]);
      if (size > best_size) {
        best_size = size;
        best = r;
      }
    }
    if (best == m_in) continue;
    used[best] = true;
    pivot_rows.push_back(best);
    T inv_head = a[best][col];
    for (std::size_t r = 0; r < m_in; ++r) {
      if (r == best || Tr::is_zero(a[r][col])) continue;
      T f = a[r][col] / inv_head;
      for (std::size_t c = 0; c < n; ++c) a[r][c] = a[r][c] - f * a[best][c];
      a[r][col] = Tr::zero();
      b[r] = b[r] - f * b[best];
    }
  }
  for (std::size_t r = 0; r < m_in; ++r) {
    if (!used[r] && !Tr::is_zero(b[r])) {
      Feasibility<T> res;
      res.inconsistent = true;
      return res;  // 0 = nonzero: no solution regardless of sign constraints
    }
  }

  // --- Phase-one tableau on the independent rows only.
  const std::size_t m = pivot_rows.size();
  const std::size_t cols = n + m + 1;  // original + artificial + rhs
  std::vector<std::vector<T>> t(m + 1, std::vector<T>(cols, Tr::zero()));
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = pivot_rows[i];
    bool flip = b[r] < Tr::zero();
    for (std::size_t c = 0; c < n; ++c) t[i][c] = flip ? Tr::zero() - a[r][c] : a[r][c];
    t[i][n + i] = Tr::one();
    t[i][cols - 1] = flip ? Tr::zero() - b[r] : b[r];
  }
  // Cost row for min(sum of artificials) with the artificial basis:
  // reduced cost of column j is -sum_i t[i][j]; objective corner is -sum b.
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  for (std::size_t c = 0; c < cols; ++c) {
    T s = Tr::zero();
    for (std::size_t i = 0; i < m; ++i) s = s + t[i][c];
    t[m][c] = Tr::zero() - s;
  }
  for (std::size_t i = 0; i < m; ++i) t[m][n + i] = Tr::zero();

  const int kMaxPivots = 20000;
  for (int iter = 0;; ++iter) {
    if (iter > kMaxPivots) throw NumericalError("simplex pivot limit exceeded");
    // Bland: entering column = lowest index with negative reduced cost.
    std::size_t enter = cols - 1;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (t[m][c] < Tr::zero() && !Tr::is_zero(t[m][c])) {
        enter = c;
        break;
      }
    }
    if (enter == cols - 1) break;  // optimal
    // Ratio test; Bland tie-break on leaving basis index.
    std::size_t leave = m;
    T best_ratio = Tr::zero();
    for (std::size_t i = 0; i < m; ++i) {
      const T& aij = t[i][enter];
      if (Tr::is_zero(aij) || aij < Tr::zero()) continue;
      T ratio = t[i][cols - 1] / aij;
      if (leave == m || ratio < best_ratio ||
          (!(best_ratio < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) {
      // Unbounded phase-one objective cannot happen (it is bounded below by 0).
      throw NumericalError("phase-one simplex detected an unbounded direction");
    }
    // Pivot.
    T head = t[leave][enter];
    for (std::size_t c = 0; c < cols; ++c) t[leave][c] = t[leave][c] / head;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || Tr::is_zero(t[r][enter])) continue;
      T f = t[r][enter];
      for (std::size_t c = 0; c < cols; ++c) t[r][c] = t[r][c] - f * t[leave][c];
      t[r][enter] = Tr::zero();
    }
    basis[leave] = enter;
  }

  // Objective value is -t[m][cols-1]; zero means all artificials vanished.
  T objective = Tr::zero() - t[m][cols - 1];
  Feasibility<T> res;
  if (!Tr::is_feasible_objective(objective)) return res;
  res.feasible = true;
  res.x.assign(n, Tr::zero());
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
  }
  return res;
}

}  // namespace bellkit
