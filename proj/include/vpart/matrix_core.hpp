#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "vpart/linalg.hpp"
#include "vpart/lp.hpp"

namespace vpart {

using IntMatrix = Matrix<BigInt>;
/// Sorted 0-based column indices.
using ColumnBasis = std::vector<std::size_t>;

inline IntMatrix make_int_matrix(const std::vector<std::vector<long>>& rows) {
  if (rows.empty() || rows[0].empty()) fail(ErrorCode::InvalidInput, "matrix must be at least 1x1");
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) fail(ErrorCode::InvalidInput, "ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

inline RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  return r;
}

/// Lexicographically first maximal set of linearly independent rows.
inline std::vector<std::size_t> row_basis(const IntMatrix& a) {
  RatMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return rref(t);
}

inline IntMatrix select_rows(const IntMatrix& a, const std::vector<std::size_t>& rows) {
  IntMatrix out(rows.size(), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(rows[i], j);
  return out;
}

inline std::vector<Rational> column_of(const IntMatrix& a, std::size_t j) {
  std::vector<Rational> c(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) c[i] = a(i, j);
  return c;
}

struct UnimodularProfile {
  std::size_t rank = 0;
  std::vector<std::vector<BigInt>> kernel;
  bool unimodular = false;
  /// Every nonzero maximal minor (on the row basis) is +-1.
  bool standard_unimodular = false;
  bool pointed = false;
  /// Common absolute value of the nonzero maximal minors (0 if they differ).
  BigInt minor_abs = 0;
  std::vector<std::size_t> row_basis;
};

/// Rank, kernel, generalized unimodularity and pointedness of A.
inline UnimodularProfile analyze(const IntMatrix& a) {
  UnimodularProfile p;
  p.row_basis = row_basis(a);
  p.rank = p.row_basis.size();
  p.kernel = kernel_basis(to_rational(a));
  const IntMatrix ar = select_rows(a, p.row_basis);
  std::vector<std::size_t> all_rows(p.rank);
  for (std::size_t i = 0; i < p.rank; ++i) all_rows[i] = i;
  BigInt common = 0;
  bool equal = true;
  for_each_subset(a.cols(), p.rank, [&](const std::vector<std::size_t>& cols) {
    BigInt d = abs(minor_det(ar, all_rows, cols));
    if (d == 0) return true;
    if (common == 0) common = d;
    if (d != common) {
      equal = false;
      return false;
    }
    return true;
  });
  p.unimodular = equal && common != 0;
  p.minor_abs = p.unimodular ? common : BigInt(0);
  p.standard_unimodular = p.unimodular && common == 1;
  // Pointed iff some y has y.a_j > 0 for every column.
  std::vector<std::vector<Rational>> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_of(a, j));
  p.pointed = strictly_positive_direction(cols, a.rows()).has_value();
  return p;
}

/// Integer y with y.a_j > 0 for every column, or nullopt if A is not pointed.
inline std::optional<std::vector<BigInt>> positive_row_functional(const IntMatrix& a) {
  std::vector<std::vector<Rational>> cols;
  for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(column_of(a, j));
  auto y = strictly_positive_direction(cols, a.rows());
  if (!y) return std::nullopt;
  return primitive_integer(*y);
}

struct Circuit {
  std::vector<BigInt> c;
  std::vector<std::size_t> support;

  friend bool operator==(const Circuit& x, const Circuit& y) { return x.c == y.c; }
};

inline Circuit make_circuit(std::vector<BigInt> v) {
  Circuit out;
  out.c = std::move(v);
  for (std::size_t i = 0; i < out.c.size(); ++i)
    if (out.c[i] != 0) out.support.push_back(i);
  return out;
}

namespace detail {

/// Generator of the 1-dimensional null space of the r x (r+1) matrix A_R[:, cols]
/// via signed maximal minors; empty when the columns do not have rank r.
inline std::vector<BigInt> cramer_kernel(const IntMatrix& ar, const std::vector<std::size_t>& cols) {
  const std::size_t r = ar.rows();
  std::vector<std::size_t> rows(r);
  for (std::size_t i = 0; i < r; ++i) rows[i] = i;
  std::vector<BigInt> v(cols.size());
  bool nonzero = false;
  std::vector<std::size_t> sub;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    sub.clear();
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (j != k) sub.push_back(cols[j]);
    v[k] = minor_det(ar, rows, sub);
    if (k % 2 == 1) v[k] = -v[k];
    if (v[k] != 0) nonzero = true;
  }
  if (!nonzero) return {};
  return primitive_integer(v);
}

}  // namespace detail

/// All circuits of A, sign-normalized (first nonzero entry positive) and sorted by support.
inline std::vector<Circuit> circuits(const IntMatrix& a) {
  const auto rows = row_basis(a);
  const IntMatrix ar = select_rows(a, rows);
  const std::size_t r = rows.size(), n = a.cols();
  std::set<std::vector<BigInt>> seen;
  std::vector<Circuit> out;
  if (r >= n) return out;
  for_each_subset(n, r + 1, [&](const std::vector<std::size_t>& cols) {
    auto k = detail::cramer_kernel(ar, cols);
    if (k.empty()) return true;
    std::vector<BigInt> full(n);
    for (std::size_t i = 0; i < cols.size(); ++i) full[cols[i]] = k[i];
    auto first = std::find_if(full.begin(), full.end(), [](const BigInt& x) { return x != 0; });
    if (*first < 0)
      for (auto& x : full) x = -x;
    if (seen.insert(full).second) out.push_back(make_circuit(std::move(full)));
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Circuit& x, const Circuit& y) {
    return x.support != y.support ? x.support < y.support : x.c < y.c;
  });
  return out;
}

/// Cached data for repeated basis computations on one matrix.
class BasisSolver {
 public:
  explicit BasisSolver(const IntMatrix& a) : a_(a), rows_(row_basis(a)) {
    ar_ = to_rational(select_rows(a, rows_));
  }

  const IntMatrix& matrix() const { return a_; }
  const std::vector<std::size_t>& rows() const { return rows_; }
  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return a_.cols(); }
  const RatMatrix& reduced() const { return ar_; }

  /// Inverse of A_R[:, sigma], or nullopt if sigma is not a basis.
  std::optional<RatMatrix> basis_inverse(const ColumnBasis& sigma) const {
    if (sigma.size() != rank()) return std::nullopt;
    RatMatrix b(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) {
        if (sigma[j] >= cols()) fail(ErrorCode::InvalidInput, "basis index out of range");
        b(i, j) = ar_(i, sigma[j]);
      }
    return inverse(b);
  }

  RatMatrix require_inverse(const ColumnBasis& sigma) const {
    auto inv = basis_inverse(sigma);
    if (!inv) fail(ErrorCode::InvalidInput, "columns do not form a basis");
    return *inv;
  }

  bool is_basis(const ColumnBasis& sigma) const { return basis_inverse(sigma).has_value(); }

  /// Projects b onto the row-basis coordinates after checking it lies in the column span.
  std::vector<Rational> reduce_rhs(const std::vector<Rational>& b) const {
    if (b.size() != a_.rows()) fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
    std::vector<Rational> y(rank());
    for (std::size_t i = 0; i < rank(); ++i) y[i] = b[rows_[i]];
    return y;
  }

  /// v with support in sigma and A v = b.
  std::vector<Rational> basic_solution(const ColumnBasis& sigma, const RatMatrix& inv,
                                       const std::vector<Rational>& b) const {
    const auto vb = mat_vec(inv, reduce_rhs(b));
    std::vector<Rational> v(cols());
    for (std::size_t i = 0; i < sigma.size(); ++i) v[sigma[i]] = vb[i];
    check_solution(v, b);
    return v;
  }

  void check_solution(const std::vector<Rational>& v, const std::vector<Rational>& b) const {
    for (std::size_t i = 0; i < a_.rows(); ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < cols(); ++j)
        if (v[j] != 0 && a_(i, j) != 0) s += a_(i, j) * v[j];
      if (s != b[i]) fail(ErrorCode::RhsOutsideSpan, "right-hand side is not in the column span of A");
    }
  }

  /// Kernel vector with support in sigma + {i} and entry +1 at i (rational in general).
  std::vector<Rational> basic_circuit(const ColumnBasis& sigma, const RatMatrix& inv, std::size_t i) const {
    std::vector<Rational> col(rank());
    for (std::size_t k = 0; k < rank(); ++k) col[k] = ar_(k, i);
    const auto d = mat_vec(inv, col);
    std::vector<Rational> c(cols());
    for (std::size_t k = 0; k < sigma.size(); ++k) c[sigma[k]] = -d[k];
    c[i] = 1;
    return c;
  }

 private:
  IntMatrix a_;
  std::vector<std::size_t> rows_;
  RatMatrix ar_;
};

inline void check_basis_shape(const ColumnBasis& sigma, std::size_t n) {
  if (!std::is_sorted(sigma.begin(), sigma.end()) ||
      std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end())
    fail(ErrorCode::InvalidInput, "basis indices must be sorted and distinct");
  if (!sigma.empty() && sigma.back() >= n) fail(ErrorCode::InvalidInput, "basis index out of range");
}

inline Circuit basic_circuit(const IntMatrix& a, const ColumnBasis& sigma, std::size_t i) {
  check_basis_shape(sigma, a.cols());
  if (std::binary_search(sigma.begin(), sigma.end(), i))
    fail(ErrorCode::IndexInBasis, "index " + std::to_string(i + 1) + " belongs to the basis");
  if (i >= a.cols()) fail(ErrorCode::InvalidInput, "column index out of range");
  BasisSolver s(a);
  const auto c = s.basic_circuit(sigma, s.require_inverse(sigma), i);
  auto v = primitive_integer(c);
  if (v[i] < 0)
    for (auto& x : v) x = -x;
  return make_circuit(std::move(v));
}

inline std::vector<Rational> basic_solution(const IntMatrix& a, const ColumnBasis& sigma,
                                            const std::vector<Rational>& b) {
  check_basis_shape(sigma, a.cols());
  BasisSolver s(a);
  return s.basic_solution(sigma, s.require_inverse(sigma), b);
}

inline std::vector<Rational> to_rational(const std::vector<BigInt>& v) {
  return std::vector<Rational>(v.begin(), v.end());
}

/// n x d matrix L with v_sigma(b) = L b for b in the column span. Columns for
/// rows outside the row basis are zero.
inline RatMatrix symbolic_basic_solution(const IntMatrix& a, const ColumnBasis& sigma) {
  check_basis_shape(sigma, a.cols());
  BasisSolver s(a);
  const auto inv = s.require_inverse(sigma);
  RatMatrix l(a.cols(), a.rows());
  for (std::size_t k = 0; k < sigma.size(); ++k)
    for (std::size_t i = 0; i < s.rank(); ++i) l(sigma[k], s.rows()[i]) = inv(k, i);
  return l;
}

}  // namespace vpart
