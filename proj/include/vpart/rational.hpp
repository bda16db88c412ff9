#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "vpart/errors.hpp"

namespace vpart {

using BigInt = mpz_class;
/// Exact rational. GMP keeps results of arithmetic canonical; use make_rational
/// when building from a numerator/denominator pair.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(ErrorCode::InvalidInput, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  BigInt l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline BigInt factorial(unsigned k) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return f;
}

inline std::string to_string(const BigInt& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline BigInt parse_bigint(const std::string& s) {
  BigInt z;
  if (s.empty() || z.set_str(s, 10) != 0) fail(ErrorCode::InvalidInput, "not an integer: '" + s + "'");
  return z;
}

inline bool fits_int64(const BigInt& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

inline std::int64_t to_int64(const BigInt& z) {
  if (!fits_int64(z)) fail(ErrorCode::InvalidInput, "integer does not fit in 64 bits");
  return z.get_si();
}

/// Scales a rational vector by the lcm of its denominators and divides out the
/// gcd of the resulting numerators. The zero vector maps to itself.
inline std::vector<BigInt> primitive_integer(const std::vector<Rational>& v) {
  BigInt den = 1;
  for (const auto& x : v) den = big_lcm(den, x.get_den());
  std::vector<BigInt> out(v.size());
  BigInt g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (den / v[i].get_den());
    g = big_gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline std::vector<BigInt> primitive_integer(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = big_gcd(g, x);
  std::vector<BigInt> out = v;
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace vpart
