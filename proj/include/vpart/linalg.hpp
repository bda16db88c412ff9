#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vpart/rational.hpp"

namespace vpart {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;

/// Reduced row echelon form in place; returns the pivot column of each nonzero row.
inline std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

/// Basis of the right null space, one primitive integer vector per free column.
inline std::vector<std::vector<BigInt>> kernel_basis(RatMatrix m) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<BigInt>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, f);
    basis.push_back(primitive_integer(v));
  }
  return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <class T>
std::vector<Rational> mat_vec(const Matrix<T>& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0 && v[j] != 0) s += m(i, j) * v[j];
    }
    out[i] = s;
  }
  return out;
}

namespace detail {

/// Bareiss elimination over int64 with overflow detection; nullopt on overflow.
inline std::optional<std::int64_t> det_bareiss_i64(std::vector<std::int64_t> a, std::size_t n) {
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        __int128 v = static_cast<__int128>(a[i * n + j]) * a[k * n + k] -
                     static_cast<__int128>(a[i * n + k]) * a[k * n + j];
        v /= prev;
        if (v > INT64_MAX || v < INT64_MIN) return std::nullopt;
        a[i * n + j] = static_cast<std::int64_t>(v);
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

inline BigInt det_bareiss_big(std::vector<BigInt> a, std::size_t n) {
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
      a[i * n + k] = 0;
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

}  // namespace detail

/// Determinant of the square submatrix of `m` on the given rows and columns.
inline BigInt minor_det(const Matrix<BigInt>& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  bool small = true;
  std::vector<std::int64_t> a(n * n);
  for (std::size_t i = 0; i < n && small; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BigInt& v = m(rows[i], cols[j]);
      if (!fits_int64(v) || abs(v) > (BigInt(1) << 20)) {
        small = false;
        break;
      }
      a[i * n + j] = v.get_si();
    }
  }
  if (small) {
    if (auto d = detail::det_bareiss_i64(std::move(a), n)) return BigInt(static_cast<long>(*d));
  }
  std::vector<BigInt> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = m(rows[i], cols[j]);
  return detail::det_bareiss_big(std::move(b), n);
}

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order;
/// stops early when f returns false.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    if (!f(static_cast<const std::vector<std::size_t>&>(s))) return;
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace vpart
