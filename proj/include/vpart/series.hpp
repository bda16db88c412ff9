#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "vpart/rational.hpp"

namespace vpart {

/// sum_{k<=N} c_k t^k + O(t^{N+1}). The coefficient array always has N+1 entries.
class TruncSeries {
 public:
  explicit TruncSeries(std::size_t order = 0) : c_(order + 1) {}
  explicit TruncSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.resize(1);
  }

  /// The constant series `value` truncated at `order`.
  static TruncSeries constant(std::size_t order, const Rational& value) {
    TruncSeries s(order);
    s.c_[0] = value;
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c_[k]; }
  Rational& operator[](std::size_t k) { return c_[k]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  /// Index of the first nonzero coefficient, or order()+1 if all vanish.
  std::size_t valuation() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (c_[k] != 0) return k;
    return c_.size();
  }

  /// Same series re-truncated at a lower order.
  TruncSeries truncated(std::size_t order) const {
    if (order > this->order()) fail(ErrorCode::DimensionMismatch, "cannot raise truncation order");
    return TruncSeries(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(order + 1)));
  }

  /// Divides by t^k, losing k orders of precision.
  TruncSeries shifted_down(std::size_t k) const {
    if (k > order()) fail(ErrorCode::DimensionMismatch, "shift exceeds truncation order");
    return TruncSeries(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.c_ == b.c_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    if (o.order() != order()) fail(ErrorCode::DimensionMismatch, "series order mismatch");
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncSeries& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

 private:
  std::vector<Rational> c_;
};

/// Cauchy product truncated at the common order.
inline TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) fail(ErrorCode::DimensionMismatch, "series order mismatch");
  const std::size_t n = a.order();
  TruncSeries out(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      if (b[j] == 0) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline TruncSeries series_inv(const TruncSeries& a) {
  if (a[0] == 0) fail(ErrorCode::NotAUnit, "series with zero constant term is not invertible");
  const std::size_t n = a.order();
  TruncSeries out(n);
  const Rational inv0 = 1 / a[0];
  out[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      if (a[j] != 0) acc += a[j] * out[k - j];
    }
    out[k] = -acc * inv0;
  }
  return out;
}

/// (1 - lambda t)^a truncated at order N.
inline TruncSeries binom_factor(const BigInt& lambda, const BigInt& a, std::size_t order) {
  if (a < 0) return series_inv(binom_factor(lambda, -a, order));
  TruncSeries out(order);
  // C(a,k) (-lambda)^k, built incrementally.
  BigInt coeff = 1;
  const BigInt neg_lambda = -lambda;
  out[0] = 1;
  for (std::size_t k = 1; k <= order; ++k) {
    coeff *= (a - static_cast<unsigned long>(k - 1));
    coeff *= neg_lambda;
    coeff /= static_cast<unsigned long>(k);
    out[k] = coeff;
    if (coeff == 0) break;
  }
  return out;
}

/// t^valuation * unit, where unit has a nonzero constant term.
struct LaurentTrunc {
  long valuation = 0;
  TruncSeries unit;

  LaurentTrunc(long v, TruncSeries u) : valuation(v), unit(std::move(u)) {
    if (unit[0] == 0) fail(ErrorCode::NotAUnit, "Laurent unit part must have a nonzero constant term");
  }

  /// Highest exponent of t whose coefficient is known.
  long max_known_degree() const { return valuation + static_cast<long>(unit.order()); }
};

/// Coefficient of t^0 in the sum of the terms, after checking that every
/// negative power of t cancels exactly.
inline Rational laurent_sum_constant(const std::vector<LaurentTrunc>& terms) {
  long lowest = 0;
  for (const auto& t : terms) {
    if (t.max_known_degree() < 0)
      fail(ErrorCode::DimensionMismatch, "Laurent term truncated before the constant coefficient");
    lowest = std::min(lowest, t.valuation);
  }
  std::vector<Rational> acc(static_cast<std::size_t>(-lowest) + 1);
  for (const auto& t : terms) {
    for (long deg = t.valuation; deg <= 0; ++deg) {
      acc[static_cast<std::size_t>(deg - lowest)] += t.unit[static_cast<std::size_t>(deg - t.valuation)];
    }
  }
  for (long deg = lowest; deg < 0; ++deg) {
    if (acc[static_cast<std::size_t>(deg - lowest)] != 0)
      fail(ErrorCode::NegativePoleResidue,
           "coefficient of t^" + std::to_string(deg) + " does not cancel: " + acc[deg - lowest].get_str());
  }
  return acc.back();
}

/// Streaming form of laurent_sum_constant: add terms one at a time, then read
/// the constant. Keeps memory proportional to the deepest pole seen.
class LaurentAccumulator {
 public:
  void add(const LaurentTrunc& t) {
    if (t.max_known_degree() < 0)
      fail(ErrorCode::DimensionMismatch, "Laurent term truncated before the constant coefficient");
    const std::size_t depth = static_cast<std::size_t>(-std::min(0L, t.valuation));
    if (depth + 1 > acc_.size()) acc_.resize(depth + 1);
    // acc_[j] holds the coefficient of t^{-j}.
    for (long deg = t.valuation; deg <= 0; ++deg) acc_[static_cast<std::size_t>(-deg)] += t.unit[deg - t.valuation];
  }

  void merge(const LaurentAccumulator& o) {
    if (o.acc_.size() > acc_.size()) acc_.resize(o.acc_.size());
    for (std::size_t j = 0; j < o.acc_.size(); ++j) acc_[j] += o.acc_[j];
  }

  Rational constant() const {
    for (std::size_t j = acc_.size(); j-- > 1;) {
      if (acc_[j] != 0)
        fail(ErrorCode::NegativePoleResidue,
             "coefficient of t^-" + std::to_string(j) + " does not cancel: " + acc_[j].get_str());
    }
    return acc_[0];
  }

 private:
  std::vector<Rational> acc_ = std::vector<Rational>(1);
};

}  // namespace vpart
