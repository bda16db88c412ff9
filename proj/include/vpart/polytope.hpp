#pragma once

#include <map>
#include <set>
#include <vector>

#include "vpart/matrix_core.hpp"

namespace vpart {

struct FeasibleBasis {
  ColumnBasis basis;
  std::vector<BigInt> vertex;
};

struct VertexEnumeration {
  std::vector<FeasibleBasis> bases;
  bool simple = false;
  std::size_t dimension = 0;
};

namespace detail {

inline std::vector<BigInt> require_integral(const std::vector<Rational>& v) {
  std::vector<BigInt> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i]))
      fail(ErrorCode::NotUnimodular, "basic solution is not integral; matrix is not unimodular for this rhs");
    out[i] = v[i].get_num();
  }
  return out;
}

}  // namespace detail

/// All feasible bases of {x >= 0 : A x = b}, found by depth-first search over
/// simplex pivots starting from a Phase-I basis. Bases are returned sorted.
inline VertexEnumeration enumerate_vertices(const BasisSolver& s, const std::vector<Rational>& b) {
  const std::size_t n = s.cols(), r = s.rank();
  const auto y = s.reduce_rhs(b);
  const LpResult seed = solve_lp(s.reduced(), y);
  if (seed.status != LpStatus::Optimal) fail(ErrorCode::Infeasible, "polytope P_b is empty");
  s.check_solution(seed.x, b);

  ColumnBasis start = seed.basis;
  std::sort(start.begin(), start.end());
  std::map<ColumnBasis, std::vector<Rational>> found;  // basis -> basic values in sigma order
  std::vector<std::pair<ColumnBasis, RatMatrix>> stack;
  {
    auto inv = s.require_inverse(start);
    found.emplace(start, mat_vec(inv, y));
    stack.emplace_back(start, std::move(inv));
  }
  std::vector<Rational> col(r);
  while (!stack.empty()) {
    auto [sigma, inv] = std::move(stack.back());
    stack.pop_back();
    const auto& xb = found.at(sigma);
    for (std::size_t j = 0; j < n; ++j) {
      if (std::binary_search(sigma.begin(), sigma.end(), j)) continue;
      for (std::size_t k = 0; k < r; ++k) col[k] = s.reduced()(k, j);
      const auto d = mat_vec(inv, col);
      std::vector<std::size_t> leave;
      Rational best;
      for (std::size_t k = 0; k < r; ++k) {
        if (d[k] <= 0) continue;
        Rational ratio = xb[k] / d[k];
        if (leave.empty() || ratio < best) {
          leave.assign(1, k);
          best = std::move(ratio);
        } else if (ratio == best) {
          leave.push_back(k);
        }
      }
      if (leave.empty()) fail(ErrorCode::NotPointed, "unbounded edge direction: A is not pointed");
      for (std::size_t k : leave) {
        ColumnBasis next = sigma;
        next[k] = j;
        std::sort(next.begin(), next.end());
        if (found.count(next)) continue;
        auto ninv = s.require_inverse(next);
        auto xn = mat_vec(ninv, y);
        found.emplace(next, std::move(xn));
        stack.emplace_back(std::move(next), std::move(ninv));
      }
    }
  }

  VertexEnumeration out;
  out.simple = true;
  for (const auto& [sigma, xb] : found) {
    std::vector<Rational> v(n);
    for (std::size_t k = 0; k < r; ++k) {
      if (xb[k] < 0) fail(ErrorCode::InvariantViolation, "pivot search produced an infeasible basis");
      if (xb[k] == 0) out.simple = false;
      v[sigma[k]] = xb[k];
    }
    out.bases.push_back({sigma, detail::require_integral(v)});
  }
  out.dimension = n - r;
  return out;
}

inline VertexEnumeration enumerate_vertices(const IntMatrix& a, const std::vector<Rational>& b) {
  return enumerate_vertices(BasisSolver(a), b);
}

/// Every feasible basis by checking all r-subsets; reference for small instances.
inline std::vector<ColumnBasis> feasible_bases_brute_force(const IntMatrix& a, const std::vector<Rational>& b) {
  BasisSolver s(a);
  std::vector<ColumnBasis> out;
  const auto y = s.reduce_rhs(b);
  for_each_subset(a.cols(), s.rank(), [&](const std::vector<std::size_t>& sigma) {
    auto inv = s.basis_inverse(sigma);
    if (!inv) return true;
    const auto xb = mat_vec(*inv, y);
    if (std::all_of(xb.begin(), xb.end(), [](const Rational& x) { return x >= 0; })) out.push_back(sigma);
    return true;
  });
  return out;
}

inline bool is_in_relative_interior_of_maximal_chamber(const IntMatrix& a, const std::vector<Rational>& b) {
  return enumerate_vertices(a, b).simple;
}

}  // namespace vpart
