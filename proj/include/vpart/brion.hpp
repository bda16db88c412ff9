#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vpart/polytope.hpp"
#include "vpart/series.hpp"

namespace vpart {

struct ConeTerm {
  ColumnBasis basis;
  std::vector<BigInt> numerator;
  /// One basic circuit C(sigma, i) per i outside sigma, in increasing i.
  std::vector<Circuit> denominators;
};

struct GenFun {
  std::size_t num_vars = 0;
  std::vector<Rational> rhs;
  std::vector<ConeTerm> terms;
};

namespace detail {

inline ConeTerm make_cone_term(const BasisSolver& s, const FeasibleBasis& fb) {
  ConeTerm t;
  t.basis = fb.basis;
  t.numerator = fb.vertex;
  const auto inv = s.require_inverse(fb.basis);
  for (std::size_t i = 0; i < s.cols(); ++i) {
    if (std::binary_search(fb.basis.begin(), fb.basis.end(), i)) continue;
    auto c = s.basic_circuit(fb.basis, inv, i);
    t.denominators.push_back(make_circuit(detail::require_integral(c)));
  }
  return t;
}

inline void require_simple(const VertexEnumeration& ve) {
  if (!ve.simple)
    fail(ErrorCode::DegenerateRhs,
         "rhs lies on a chamber wall (degenerate vertex); use adjacent_representative or count --adjacent");
}

}  // namespace detail

/// Generating function terms for an explicit list of bases (no simplicity check).
inline GenFun genfun_from_bases(const BasisSolver& s, const std::vector<Rational>& b,
                                const std::vector<FeasibleBasis>& bases) {
  GenFun g;
  g.num_vars = s.cols();
  g.rhs = b;
  for (const auto& fb : bases) g.terms.push_back(detail::make_cone_term(s, fb));
  return g;
}

inline GenFun build_genfun(const IntMatrix& a, const std::vector<Rational>& b) {
  BasisSolver s(a);
  const auto ve = enumerate_vertices(s, b);
  detail::require_simple(ve);
  return genfun_from_bases(s, b, ve.bases);
}

namespace detail {

inline std::string monomial_text(const std::vector<BigInt>& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "x" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + e[i].get_str();
  }
  return out.empty() ? "1" : out;
}

}  // namespace detail

/// One line per term: numerator monomial times (1 - x^C)^-1 factors.
inline std::string genfun_text(const GenFun& g) {
  std::vector<const ConeTerm*> order;
  for (const auto& t : g.terms) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) { return x->basis < y->basis; });
  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k) out += "\n+ ";
    const ConeTerm& t = *order[k];
    out += detail::monomial_text(t.numerator);
    for (const auto& c : t.denominators) out += " * (1 - " + detail::monomial_text(c.c) + ")^-1";
  }
  return out;
}

namespace detail {

inline Rational rational_pow(const Rational& x, const BigInt& e) {
  if (e == 0) return 1;
  if (x == 0) {
    if (e < 0) fail(ErrorCode::PoleAtEvaluationPoint, "zero coordinate raised to a negative power");
    return 0;
  }
  Rational base = e < 0 ? Rational(1 / x) : x;
  BigInt k = abs(e);
  Rational out = 1;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

inline Rational monomial_value(const std::vector<BigInt>& e, const std::vector<Rational>& x) {
  Rational v = 1;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) v *= rational_pow(x[i], e[i]);
  return v;
}

}  // namespace detail

inline Rational evaluate_genfun_numeric(const GenFun& g, const std::vector<Rational>& x) {
  if (x.size() != g.num_vars) fail(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
  Rational total = 0;
  for (const auto& t : g.terms) {
    Rational v = detail::monomial_value(t.numerator, x);
    for (const auto& c : t.denominators) {
      const Rational den = 1 - detail::monomial_value(c.c, x);
      if (den == 0) fail(ErrorCode::PoleAtEvaluationPoint, "denominator vanishes at the evaluation point");
      v /= den;
    }
    total += v;
  }
  return total;
}

struct BrionOptions {
  /// Substitution weights, one per column; default lambda_j = j (1-based).
  std::optional<std::vector<BigInt>> lambda;
  /// Set x_j = 1 on the first column basis before substituting.
  bool eliminate_basis = true;
  unsigned threads = 1;
};

namespace detail {

/// Integer power series truncated at a fixed order; used for the exact
/// one-variable specialisation of each cone term.
using IntSeries = std::vector<BigInt>;

/// s *= (1 - lambda t)^e in place.
inline void mul_binom(IntSeries& s, const BigInt& lambda, const BigInt& e) {
  const std::size_t n = s.size();
  if (e >= 0 && e <= 4) {
    for (long rep = 0; rep < e.get_si(); ++rep)
      for (std::size_t k = n; k-- > 1;) s[k] -= lambda * s[k - 1];
    return;
  }
  if (e < 0 && e >= -4) {
    for (long rep = 0; rep < -e.get_si(); ++rep)
      for (std::size_t k = 1; k < n; ++k) s[k] += lambda * s[k - 1];
    return;
  }
  // General exponent: coefficients C(e,k)(-lambda)^k, integral for all integer e.
  IntSeries f(n);
  f[0] = 1;
  BigInt c = 1;
  for (std::size_t k = 1; k < n; ++k) {
    c *= e - static_cast<unsigned long>(k - 1);
    c *= -lambda;
    c /= static_cast<unsigned long>(k);
    f[k] = c;
  }
  IntSeries out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j)
      if (f[j] != 0) out[i + j] += s[i] * f[j];
  }
  s = std::move(out);
}

class BrionEvaluator {
 public:
  BrionEvaluator(const BasisSolver& s, const BrionOptions& opt) : n_(s.cols()), active_(s.cols(), true) {
    if (opt.eliminate_basis) {
      // First column basis in lexicographic order, found greedily.
      RatMatrix m = s.reduced();
      for (std::size_t p : rref(m)) active_[p] = false;
    }
    if (opt.lambda) {
      if (opt.lambda->size() != n_) fail(ErrorCode::DimensionMismatch, "lambda must have one entry per column");
      lambda_ = *opt.lambda;
    } else {
      for (std::size_t j = 0; j < n_; ++j) lambda_.push_back(BigInt(static_cast<unsigned long>(j + 1)));
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (!active_[j]) continue;
      if (lambda_[j] == 0) fail(ErrorCode::InvalidInput, "lambda entries must be nonzero");
      for (std::size_t k = 0; k < j; ++k)
        if (active_[k] && lambda_[k] == lambda_[j]) fail(ErrorCode::InvalidInput, "lambda entries must be distinct");
    }
  }

  /// prod_j (1 - lambda_j t)^{e_j} over active coordinates, to the given order.
  IntSeries specialise(const std::vector<BigInt>& e, std::size_t order) const {
    IntSeries s(order + 1);
    s[0] = 1;
    for (std::size_t j = 0; j < n_; ++j)
      if (active_[j] && e[j] != 0) mul_binom(s, lambda_[j], e[j]);
    return s;
  }

  LaurentTrunc term(const ConeTerm& t) const {
    // Valuations of 1 - x^C after specialisation.
    std::vector<std::size_t> val;
    std::size_t total = 0;
    for (const auto& c : t.denominators) {
      std::size_t order = 4;
      for (;;) {
        const auto s = specialise(c.c, order);
        std::size_t k = 1;
        while (k <= order && s[k] == 0) ++k;
        if (k <= order) {
          val.push_back(k);
          total += k;
          break;
        }
        order *= 2;
        if (order > 4096) fail(ErrorCode::InvariantViolation, "denominator specialises to zero");
      }
    }
    const std::size_t order = total;
    TruncSeries unit(order);
    {
      const auto num = specialise(t.numerator, order);
      for (std::size_t k = 0; k <= order; ++k) unit[k] = num[k];
    }
    IntSeries den(order + 1);
    den[0] = 1;
    for (std::size_t i = 0; i < t.denominators.size(); ++i) {
      auto s = specialise(t.denominators[i].c, order + val[i]);
      // (1 - s) / t^k
      IntSeries u(order + 1);
      for (std::size_t k = 0; k <= order; ++k) u[k] = -s[k + val[i]];
      IntSeries prod(order + 1);
      for (std::size_t a = 0; a <= order; ++a) {
        if (den[a] == 0) continue;
        for (std::size_t b = 0; a + b <= order; ++b)
          if (u[b] != 0) prod[a + b] += den[a] * u[b];
      }
      den = std::move(prod);
    }
    TruncSeries dq(order);
    for (std::size_t k = 0; k <= order; ++k) dq[k] = den[k];
    TruncSeries result = series_mul(unit, series_inv(dq));
    return LaurentTrunc(-static_cast<long>(total), std::move(result));
  }

 private:
  std::size_t n_;
  std::vector<bool> active_;
  std::vector<BigInt> lambda_;
};

inline BigInt require_count(const Rational& c) {
  if (!is_integer(c) || c < 0)
    fail(ErrorCode::InvariantViolation, "lattice point count is not a nonnegative integer: " + c.get_str());
  return c.get_num();
}

}  // namespace detail

/// Evaluates the generating function at x = (1, ..., 1) exactly.
inline BigInt count_genfun(const BasisSolver& s, const GenFun& g, const BrionOptions& opt = {}) {
  detail::BrionEvaluator ev(s, opt);
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(g.terms.size())));
  std::vector<LaurentAccumulator> acc(workers);
  if (workers == 1) {
    for (const auto& t : g.terms) acc[0].add(ev.term(t));
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < g.terms.size(); i += workers) acc[w].add(ev.term(g.terms[i]));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (unsigned w = 1; w < workers; ++w) acc[0].merge(acc[w]);
  }
  return detail::require_count(acc[0].constant());
}

/// Number of lattice points of {x >= 0 : A x = b} for nondegenerate b.
inline BigInt count(const IntMatrix& a, const std::vector<Rational>& b, const BrionOptions& opt = {}) {
  BasisSolver s(a);
  const auto ve = enumerate_vertices(s, b);
  detail::require_simple(ve);
  return count_genfun(s, genfun_from_bases(s, b, ve.bases), opt);
}

/// Brion sum over an explicit set of bases: the count formula of the chamber
/// whose signature is `bases`, evaluated at b. Valid for b in the closure of
/// that chamber, including degenerate b on its walls.
inline BigInt count_in_chamber(const IntMatrix& a, const std::vector<Rational>& b,
                               const std::vector<ColumnBasis>& bases, const BrionOptions& opt = {}) {
  BasisSolver s(a);
  std::vector<FeasibleBasis> fbs;
  for (const auto& sigma : bases) {
    const auto v = s.basic_solution(sigma, s.require_inverse(sigma), b);
    for (const auto& x : v)
      if (x < 0) fail(ErrorCode::OutsideCone, "rhs is outside the closure of the given chamber");
    fbs.push_back({sigma, detail::require_integral(v)});
  }
  return count_genfun(s, genfun_from_bases(s, b, fbs), opt);
}

}  // namespace vpart
