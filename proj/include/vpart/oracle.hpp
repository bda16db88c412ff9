#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "vpart/matrix_core.hpp"

namespace vpart {

struct OracleOptions {
  /// Maximum number of memoised states before giving up with ResourceCap.
  std::size_t max_states = 20000000;
};

namespace detail {

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

/// Exhaustive counter: f(j, rem) = number of x in N^{j} with sum_{k<j} x_k a_k = rem.
class OracleCounter {
 public:
  OracleCounter(const IntMatrix& a, const std::vector<Rational>& b, const OracleOptions& opt)
      : d_(a.rows()), n_(a.cols()), opt_(opt), memo_(a.cols() + 1) {
    auto y = positive_row_functional(a);
    if (!y) fail(ErrorCode::NotPointed, "oracle requires a pointed matrix");
    cols_.assign(n_, std::vector<std::int64_t>(d_));
    weight_.assign(n_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      BigInt w = 0;
      for (std::size_t i = 0; i < d_; ++i) {
        cols_[j][i] = to_int64(a(i, j));
        w += (*y)[i] * a(i, j);
      }
      weight_[j] = to_int64(w);
    }
    y_.resize(d_);
    for (std::size_t i = 0; i < d_; ++i) y_[i] = to_int64((*y)[i]);
    rhs_.resize(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      if (!is_integer(b[i])) fail(ErrorCode::InvalidInput, "oracle needs an integral rhs");
      rhs_[i] = to_int64(b[i].get_num());
    }
  }

  BigInt count() { return f(n_, rhs_); }

  /// Calls visit(x) for every solution.
  void enumerate(const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    std::vector<std::int64_t> x(n_);
    walk(n_, rhs_, x, visit);
  }

 private:
  std::int64_t level(const std::vector<std::int64_t>& rem) const {
    __int128 s = 0;
    for (std::size_t i = 0; i < d_; ++i) s += static_cast<__int128>(y_[i]) * rem[i];
    if (s > INT64_MAX || s < INT64_MIN) fail(ErrorCode::ResourceCap, "rhs too large for the oracle");
    return static_cast<std::int64_t>(s);
  }

  const BigInt& f(std::size_t j, const std::vector<std::int64_t>& rem) {
    static const BigInt zero = 0, one = 1;
    const std::int64_t lv = level(rem);
    if (lv < 0) return zero;
    if (j == 0) {
      for (auto v : rem)
        if (v != 0) return zero;
      return one;
    }
    auto& table = memo_[j];
    if (auto it = table.find(rem); it != table.end()) return it->second;
    if (++states_ > opt_.max_states) fail(ErrorCode::ResourceCap, "oracle enumeration exceeds the state cap");
    BigInt total = 0;
    const auto& col = cols_[j - 1];
    const std::int64_t tmax = lv / weight_[j - 1];
    std::vector<std::int64_t> next = rem;
    for (std::int64_t t = 0; t <= tmax; ++t) {
      total += f(j - 1, next);
      for (std::size_t i = 0; i < d_; ++i) next[i] -= col[i];
    }
    return table.emplace(rem, std::move(total)).first->second;
  }

  void walk(std::size_t j, const std::vector<std::int64_t>& rem, std::vector<std::int64_t>& x,
            const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    if (f(j, rem) == 0) return;
    if (j == 0) {
      visit(x);
      return;
    }
    const std::int64_t tmax = level(rem) / weight_[j - 1];
    std::vector<std::int64_t> next = rem;
    for (std::int64_t t = 0; t <= tmax; ++t) {
      x[j - 1] = t;
      walk(j - 1, next, x, visit);
      for (std::size_t i = 0; i < d_; ++i) next[i] -= cols_[j - 1][i];
    }
    x[j - 1] = 0;
  }

  std::size_t d_, n_;
  OracleOptions opt_;
  std::vector<std::vector<std::int64_t>> cols_;
  std::vector<std::int64_t> weight_, y_, rhs_;
  std::vector<std::unordered_map<std::vector<std::int64_t>, BigInt, VecHash>> memo_;
  std::size_t states_ = 0;
};

}  // namespace detail

/// Number of nonnegative integer solutions of A x = b by memoised exhaustive search.
inline BigInt oracle_count(const IntMatrix& a, const std::vector<Rational>& b, const OracleOptions& opt = {}) {
  if (b.size() != a.rows()) fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
  detail::OracleCounter c(a, b, opt);
  return c.count();
}

/// All nonnegative integer solutions of A x = b.
inline std::vector<std::vector<std::int64_t>> oracle_solutions(const IntMatrix& a, const std::vector<Rational>& b,
                                                               const OracleOptions& opt = {}) {
  if (b.size() != a.rows()) fail(ErrorCode::DimensionMismatch, "rhs length differs from row count");
  detail::OracleCounter c(a, b, opt);
  std::vector<std::vector<std::int64_t>> out;
  c.enumerate([&](const std::vector<std::int64_t>& x) { out.push_back(x); });
  return out;
}

}  // namespace vpart
