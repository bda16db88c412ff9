#pragma once

#include <optional>
#include <vector>

#include "vpart/linalg.hpp"

namespace vpart {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  /// Basic column of each surviving row (rows found redundant are dropped).
  std::vector<std::size_t> basis;
  /// Infeasible only: y with y.A_j <= 0 for every column and y.b > 0.
  std::vector<Rational> farkas;
  Rational objective;
};

namespace detail {

/// Dense two-phase simplex over exact rationals with Bland's rule.
/// Works on min c.x s.t. A x = b, x >= 0.
class Simplex {
 public:
  Simplex(const RatMatrix& a, const std::vector<Rational>& b) : m_(a.rows()), n_(a.cols()) {
    width_ = n_ + m_ + 1;
    t_.assign(m_, std::vector<Rational>(width_));
    sign_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      sign_[i] = b[i] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign_[i] > 0 ? a(i, j) : Rational(-a(i, j));
      t_[i][n_ + i] = 1;
      t_[i][width_ - 1] = sign_[i] > 0 ? b[i] : Rational(-b[i]);
    }
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
    active_.assign(m_, true);
  }

  LpResult solve(const std::vector<Rational>* cost) {
    LpResult res;
    // Phase I: minimise the sum of artificials.
    z_.assign(width_, Rational(0));
    for (std::size_t j = n_; j < n_ + m_; ++j) z_[j] = 1;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < width_; ++j)
        if (t_[i][j] != 0) z_[j] -= t_[i][j];
    run(n_ + m_);
    const Rational phase1 = -z_[width_ - 1];
    if (phase1 > 0) {
      res.status = LpStatus::Infeasible;
      res.objective = phase1;
      res.farkas.resize(m_);
      for (std::size_t i = 0; i < m_; ++i) res.farkas[i] = (1 - z_[n_ + i]) * sign_[i];
      return res;
    }
    drive_out_artificials();
    if (cost) {
      z_.assign(width_, Rational(0));
      for (std::size_t j = 0; j < n_; ++j) z_[j] = (*cost)[j];
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i]) continue;
        const Rational& cb = (*cost)[basis_[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < width_; ++j)
          if (t_[i][j] != 0) z_[j] -= cb * t_[i][j];
      }
      if (!run(n_)) {
        res.status = LpStatus::Unbounded;
        return res;
      }
    }
    res.status = LpStatus::Optimal;
    res.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      res.x[basis_[i]] = t_[i][width_ - 1];
      res.basis.push_back(basis_[i]);
    }
    res.objective = cost ? Rational(-z_[width_ - 1]) : Rational(0);
    return res;
  }

 private:
  /// Bland's rule pivoting over columns [0, limit). Returns false if unbounded.
  bool run(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (z_[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || t_[i][enter] <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    auto& pr = t_[r];
    for (std::size_t j = 0; j < width_; ++j)
      if (pr[j] != 0) pr[j] *= inv;
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j < width_; ++j)
        if (pr[j] != 0) row[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != r && active_[i]) eliminate(t_[i]);
    eliminate(z_);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t j = 0;
      while (j < n_ && t_[i][j] == 0) ++j;
      if (j == n_) {
        active_[i] = false;  // redundant equation
      } else {
        pivot(i, j);
      }
    }
  }

  std::size_t m_, n_, width_;
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> z_;
  std::vector<std::size_t> basis_;
  std::vector<int> sign_;
  std::vector<bool> active_;
};

}  // namespace detail

/// min c.x subject to A x = b, x >= 0 (c may be omitted for a pure feasibility check).
inline LpResult solve_lp(const RatMatrix& a, const std::vector<Rational>& b,
                         const std::vector<Rational>* cost = nullptr) {
  if (b.size() != a.rows()) fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
  detail::Simplex s(a, b);
  return s.solve(cost);
}

/// Decides whether some y satisfies g.y > 0 for every listed vector g
/// (Gordan's alternative), returning such a y when it exists.
inline std::optional<std::vector<Rational>> strictly_positive_direction(
    const std::vector<std::vector<Rational>>& gens, std::size_t dim) {
  if (gens.empty()) {
    return std::vector<Rational>(dim, Rational(0));
  }
  RatMatrix m(dim + 1, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = gens[j][i];
    m(dim, j) = 1;
  }
  std::vector<Rational> rhs(dim + 1);
  rhs[dim] = 1;
  const LpResult res = solve_lp(m, rhs);
  if (res.status != LpStatus::Infeasible) return std::nullopt;  // origin lies in the convex hull
  std::vector<Rational> y(dim);
  for (std::size_t i = 0; i < dim; ++i) y[i] = -res.farkas[i];
  for (const auto& g : gens) {
    Rational s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += g[i] * y[i];
    if (s <= 0) fail(ErrorCode::InvariantViolation, "Gordan certificate failed verification");
  }
  return y;
}

}  // namespace vpart
