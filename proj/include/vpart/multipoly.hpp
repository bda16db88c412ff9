#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vpart/rational.hpp"

namespace vpart {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Strict "a > b" in graded reverse lexicographic order with x1 > x2 > ... > xn.
struct GrevlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  }
};

/// All exponent vectors of n variables with total degree exactly k, grevlex descending.
inline std::vector<Exponent> monomials_of_degree(std::size_t n, int k) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (n == 0) {
      if (left == 0) out.push_back(e);
      return;
    }
    if (i + 1 == n) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int v = left; v >= 0; --v) {
      e[i] = v;
      self(self, i + 1, left - v);
    }
    e[i] = 0;
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

/// All exponents of total degree <= k, grevlex descending.
inline std::vector<Exponent> monomials_up_to_degree(std::size_t n, int k) {
  std::vector<Exponent> out;
  for (int d = k; d >= 0; --d) {
    auto part = monomials_of_degree(n, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in grevlex-descending order and zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrevlexGreater>;

  explicit MultiPoly(std::size_t num_vars = 0) : nvars_(num_vars) {}

  static MultiPoly constant(std::size_t num_vars, const Rational& c) {
    MultiPoly p(num_vars);
    p.add_term(Exponent(num_vars, 0), c);
    return p;
  }

  static MultiPoly variable(std::size_t num_vars, std::size_t i) {
    if (i >= num_vars) fail(ErrorCode::DimensionMismatch, "variable index out of range");
    Exponent e(num_vars, 0);
    e[i] = 1;
    MultiPoly p(num_vars);
    p.add_term(e, Rational(1));
    return p;
  }

  /// Linear form sum_i coeffs[i] * x_i + c.
  static MultiPoly linear(const std::vector<Rational>& coeffs, const Rational& c = 0) {
    MultiPoly p = constant(coeffs.size(), c);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] != 0) p += variable(coeffs.size(), i) * coeffs[i];
    }
    return p;
  }

  std::size_t num_vars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) fail(ErrorCode::DimensionMismatch, "exponent length differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) { return a *= Rational(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_same(b);
    MultiPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(nvars_, 1);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
  }

  Rational evaluate(std::span<const Rational> x) const {
    if (x.size() != nvars_) fail(ErrorCode::DimensionMismatch, "evaluation point has wrong length");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        Rational p;
        mpz_pow_ui(p.get_num_mpz_t(), x[i].get_num_mpz_t(), static_cast<unsigned long>(e[i]));
        mpz_pow_ui(p.get_den_mpz_t(), x[i].get_den_mpz_t(), static_cast<unsigned long>(e[i]));
        t *= p;
      }
      sum += t;
    }
    return sum;
  }

  Rational evaluate(const std::vector<BigInt>& x) const {
    std::vector<Rational> q(x.begin(), x.end());
    return evaluate(std::span<const Rational>(q));
  }

  /// Replaces variable i by images[i]; all images must share one variable count.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (images.size() != nvars_) fail(ErrorCode::DimensionMismatch, "substitution needs one image per variable");
    const std::size_t target = images.empty() ? 0 : images.front().num_vars();
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    MultiPoly out(target);
    for (const auto& [e, c] : terms_) {
      MultiPoly t = constant(target, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(constant(target, 1));
        while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
        t *= pw[e[i]];
      }
      out += t;
    }
    return out;
  }

  MultiPoly homogeneous_part(int k) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == k) out.terms_.emplace(e, c);
    return out;
  }

  MultiPoly truncated(int max_degree) const {
    MultiPoly out(nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) <= max_degree) out.terms_.emplace(e, c);
    return out;
  }

  /// Canonical text: grevlex-descending monomials, reduced fraction coefficients,
  /// e.g. `1/6*b1^3 + 1*b1^2*b2 - 1/2*b3^2`.
  std::string to_string(const std::vector<std::string>& names) const {
    if (names.size() != nvars_) fail(ErrorCode::DimensionMismatch, "need one name per variable");
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool neg = c < 0;
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      first = false;
      out += Rational(abs(c)).get_str();
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        out += "*" + names[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
      }
    }
    return out;
  }

  std::string to_string(std::string_view prefix = "b") const { return to_string(default_names(nvars_, prefix)); }

  static std::vector<std::string> default_names(std::size_t n, std::string_view prefix) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i + 1));
    return names;
  }

 private:
  void check_same(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) fail(ErrorCode::DimensionMismatch, "polynomials have different variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

enum class PolyOp { Add, Mul };

inline MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, PolyOp op) {
  return op == PolyOp::Add ? a + b : a * b;
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& names) : s_(text), names_(names) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected trailing input");
    return p;
  }

 private:
  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      skip_ws();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    for (;;) {
      skip_ws();
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        MultiPoly d = unary();
        if (d.degree() != 0) error("division by a non-constant");
        acc *= Rational(1) / d.terms().begin()->second;
      } else if (pos_ < s_.size() && (s_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(s_[pos_])))) {
        acc *= unary();  // implicit product, e.g. (b1+1)(b1+2)
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    skip_ws();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  MultiPoly primary() {
    skip_ws();
    const std::size_t n = names_.size();
    if (accept('(')) {
      MultiPoly p = expr();
      skip_ws();
      if (!accept(')')) error("expected ')'");
      return p;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MultiPoly::constant(n, Rational(BigInt(std::string(s_.substr(start, pos_ - start)))));
    }
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < n; ++i)
        if (names_[i] == id) return MultiPoly::variable(n, i);
      error("unknown variable '" + id + "'");
    }
    error("expected a number, variable or '('");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::InvalidInput, "polynomial parse error at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view s_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses arithmetic expressions over the named variables: + - * / ^, parentheses,
/// integer literals, and implicit products between parenthesised factors.
inline MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& names) {
  return detail::PolyParser(text, names).parse();
}

inline MultiPoly parse_poly(std::string_view text, std::size_t num_vars, std::string_view prefix = "b") {
  const auto names = MultiPoly::default_names(num_vars, prefix);
  return detail::PolyParser(text, names).parse();
}

}  // namespace vpart
