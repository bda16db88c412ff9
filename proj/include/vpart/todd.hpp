#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <unordered_set>
#include <vector>

#include "vpart/brion.hpp"
#include "vpart/chambers.hpp"
#include "vpart/multipoly.hpp"
#include "vpart/series.hpp"

namespace vpart {

struct StanleyReisnerIdeal {
  std::size_t num_vars = 0;
  /// Minimal non-faces, each a sorted index set, ordered by size then lexicographically.
  std::vector<std::vector<std::size_t>> generators;
  /// Facets I = [n] \ sigma of the simplicial complex.
  std::vector<std::vector<std::size_t>> facets;
};

namespace detail {

inline std::vector<std::size_t> bits_to_set(std::uint64_t m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

}  // namespace detail

/// Stanley-Reisner ideal of the complex whose facets are the complements of the given bases.
inline StanleyReisnerIdeal stanley_reisner(const std::vector<ColumnBasis>& bases, std::size_t n) {
  if (bases.empty()) fail(ErrorCode::EmptyBasisList, "no bases supplied");
  if (n > 64) fail(ErrorCode::ResourceCap, "at most 64 columns supported");
  StanleyReisnerIdeal sr;
  sr.num_vars = n;
  const std::uint64_t all = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::vector<std::uint64_t> facet_masks;
  for (const auto& sigma : bases) {
    std::uint64_t m = all;
    for (auto i : sigma) m &= ~(1ULL << i);
    facet_masks.push_back(m);
    sr.facets.push_back(detail::bits_to_set(m));
  }
  std::sort(sr.facets.begin(), sr.facets.end());
  auto is_face = [&](std::uint64_t s) {
    for (auto f : facet_masks)
      if ((s & ~f) == 0) return true;
    return false;
  };
  // Level-wise: faces of size k generate candidates of size k+1.
  std::vector<std::uint64_t> level{0};
  std::vector<std::vector<std::size_t>> gens;
  for (std::size_t k = 0; k < n && !level.empty(); ++k) {
    std::unordered_set<std::uint64_t> faces(level.begin(), level.end());
    std::set<std::uint64_t> next;
    std::set<std::uint64_t> nonfaces;
    for (auto f : level) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t bit = 1ULL << j;
        if (f & bit) continue;
        const std::uint64_t c = f | bit;
        if (next.count(c) || nonfaces.count(c)) continue;
        bool all_faces = true;
        for (std::uint64_t m = c; m && all_faces; m &= m - 1) {
          const std::uint64_t sub = c & ~(m & -m);
          if (!faces.count(sub)) all_faces = false;
        }
        if (!all_faces) continue;
        if (is_face(c))
          next.insert(c);
        else
          nonfaces.insert(c);
      }
    }
    for (auto m : nonfaces) gens.push_back(detail::bits_to_set(m));
    level.assign(next.begin(), next.end());
  }
  std::sort(gens.begin(), gens.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  sr.generators = std::move(gens);
  return sr;
}

/// Coefficients of x / (1 - e^{-x}) up to degree D.
inline std::vector<Rational> todd_series(std::size_t D) {
  TruncSeries q(D);
  // (1 - e^{-x}) / x = sum_k (-1)^k x^k / (k+1)!
  for (std::size_t k = 0; k <= D; ++k) {
    Rational c = make_rational(1, factorial(static_cast<unsigned>(k + 1)));
    q[k] = (k % 2) ? Rational(-c) : c;
  }
  return series_inv(q).coefficients();
}

/// prod_i T(x_i) truncated at total degree D, as a polynomial in n variables.
inline MultiPoly todd_class(std::size_t n, std::size_t D) {
  const auto t = todd_series(D);
  MultiPoly out = MultiPoly::constant(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly f(n);
    for (std::size_t k = 0; k <= D; ++k) {
      if (t[k] == 0) continue;
      Exponent e(n, 0);
      e[i] = static_cast<int>(k);
      f.add_term(e, t[k]);
    }
    out = (out * f).truncated(static_cast<int>(D));
  }
  return out;
}

/// Graded quotient S/(M + L) after eliminating n - r variables with the linear
/// relations; elements are vectors over standard monomials in each degree.
class CohomologyRing {
 public:
  using Element = std::vector<std::vector<Rational>>;

  /// `kernel` spans the linear relations sum_i u_i x_i; `sigma0` is a column basis
  /// whose complement indexes an invertible block of the kernel.
  CohomologyRing(const StanleyReisnerIdeal& m, const std::vector<std::vector<BigInt>>& kernel,
                 const ColumnBasis& sigma0, std::size_t memory_cap = 5000000)
      : n_(m.num_vars), r_(sigma0.size()), D_(kernel.size()) {
    if (n_ != r_ + D_) fail(ErrorCode::DimensionMismatch, "kernel dimension must equal n - r");
    if (binomial(static_cast<unsigned long>(D_ + r_), static_cast<unsigned long>(r_)) > memory_cap)
      fail(ErrorCode::ResourceCap, "reduction table would exceed the memory cap");
    eliminate(kernel, sigma0);
    build(m);
  }

  std::size_t num_vars() const { return n_; }
  std::size_t reduced_vars() const { return r_; }
  std::size_t top_degree() const { return D_; }
  /// x_i written in the reduced variables.
  const std::vector<Rational>& linear_form(std::size_t i) const { return ell_[i]; }
  std::vector<std::size_t> hilbert_function() const {
    std::vector<std::size_t> h;
    for (const auto& d : deg_) h.push_back(d.standard.size());
    return h;
  }
  const std::vector<Exponent>& standard_monomials(std::size_t k) const { return deg_[k].standard_exp; }

  Element one() const {
    Element e = zero();
    if (!e[0].empty()) e[0][0] = 1;
    return e;
  }
  Element zero() const {
    Element e(D_ + 1);
    for (std::size_t k = 0; k <= D_; ++k) e[k].assign(deg_[k].standard.size(), Rational(0));
    return e;
  }

  /// e * (sum_i c_i y_i) with c given in reduced variables.
  Element mul_linear(const Element& e, const std::vector<Rational>& c) const {
    Element out = zero();
    for (std::size_t k = 0; k < D_; ++k) {
      for (std::size_t s = 0; s < e[k].size(); ++s) {
        if (e[k][s] == 0) continue;
        for (std::size_t i = 0; i < r_; ++i) {
          if (c[i] == 0) continue;
          const Rational f = e[k][s] * c[i];
          const auto& img = mulvar_[k][i][s];
          for (std::size_t t = 0; t < img.size(); ++t)
            if (img[t] != 0) out[k + 1][t] += f * img[t];
        }
      }
    }
    return out;
  }

  Element mul_var(const Element& e, std::size_t i) const {
    std::vector<Rational> c(r_);
    c[i] = 1;
    return mul_linear(e, c);
  }

  /// x_i as a linear form in the reduced variables.
  Element mul_x(const Element& e, std::size_t i) const { return mul_linear(e, ell_[i]); }

  /// Coefficient of the single standard monomial of top degree.
  Rational top(const Element& e) const { return e[D_].empty() ? Rational(0) : e[D_][0]; }

  /// Normal form of a polynomial in the n original variables.
  Element reduce(const MultiPoly& p) const {
    if (p.num_vars() != n_) fail(ErrorCode::DimensionMismatch, "polynomial has wrong variable count");
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < n_; ++i) images.push_back(MultiPoly::linear(ell_[i]));
    const MultiPoly q = p.truncated(static_cast<int>(D_)).substitute(images);
    Element out = zero();
    for (const auto& [e, c] : q.terms()) {
      const std::size_t k = static_cast<std::size_t>(total_degree(e));
      if (k > D_) continue;
      const auto& nf = normal_form(k, e);
      for (std::size_t t = 0; t < nf.size(); ++t)
        if (nf[t] != 0) out[k][t] += c * nf[t];
    }
    return out;
  }

  /// gamma: top coefficient of the vertex monomial prod_{i in I} x_i.
  Rational vertex_gamma(const std::vector<std::size_t>& nonbasic) const {
    Element e = one();
    for (auto i : nonbasic) e = mul_x(e, i);
    return top(e);
  }

  /// Todd class prod_i T(x_i) as a ring element.
  Element todd() const {
    const auto t = todd_series(D_);
    Element acc = one();
    for (std::size_t i = 0; i < n_; ++i) {
      Element sum = zero(), power = acc;
      for (std::size_t k = 0; k <= D_; ++k) {
        if (k) power = mul_x(power, i);
        if (t[k] != 0) add_scaled(sum, power, t[k]);
      }
      acc = std::move(sum);
    }
    return acc;
  }

  static void add_scaled(Element& a, const Element& b, const Rational& s) {
    for (std::size_t k = 0; k < a.size(); ++k)
      for (std::size_t t = 0; t < a[k].size(); ++t)
        if (b[k][t] != 0) a[k][t] += s * b[k][t];
  }

 private:
  struct Degree {
    std::vector<Exponent> monomials;
    std::map<Exponent, std::size_t, GrevlexGreater> index;
    std::vector<std::size_t> standard;  // monomial indices
    std::vector<Exponent> standard_exp;
    std::vector<long> std_pos;          // monomial index -> position in standard, or -1
    std::vector<std::vector<Rational>> nf;  // per monomial, over standard
  };

  const std::vector<Rational>& normal_form(std::size_t k, const Exponent& e) const {
    return deg_[k].nf[deg_[k].index.at(e)];
  }

  void eliminate(const std::vector<std::vector<BigInt>>& kernel, const ColumnBasis& sigma0) {
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < n_; ++j)
      if (!std::binary_search(sigma0.begin(), sigma0.end(), j)) comp.push_back(j);
    // Relations u_t . x = 0; solve for x_J.
    RatMatrix kj(D_, D_), ks(D_, r_);
    for (std::size_t t = 0; t < D_; ++t) {
      for (std::size_t a = 0; a < D_; ++a) kj(t, a) = kernel[t][comp[a]];
      for (std::size_t a = 0; a < r_; ++a) ks(t, a) = kernel[t][sigma0[a]];
    }
    ell_.assign(n_, std::vector<Rational>(r_));
    for (std::size_t a = 0; a < r_; ++a) ell_[sigma0[a]][a] = 1;
    if (D_ == 0) return;
    auto inv = inverse(kj);
    if (!inv) fail(ErrorCode::InvalidInput, "kernel block on the basis complement is singular");
    for (std::size_t a = 0; a < D_; ++a)
      for (std::size_t c = 0; c < r_; ++c) {
        Rational v = 0;
        for (std::size_t t = 0; t < D_; ++t) v -= (*inv)(a, t) * ks(t, c);
        ell_[comp[a]][c] = v;
      }
  }

  std::vector<Rational> poly_vector(std::size_t k, const MultiPoly& p) const {
    std::vector<Rational> v(deg_[k].monomials.size());
    for (const auto& [e, c] : p.terms()) v[deg_[k].index.at(e)] = c;
    return v;
  }

  void build(const StanleyReisnerIdeal& m) {
    deg_.resize(D_ + 1);
    std::vector<std::vector<Rational>> prev_rows;
    for (std::size_t k = 0; k <= D_; ++k) {
      Degree& d = deg_[k];
      d.monomials = monomials_of_degree(r_, static_cast<int>(k));
      for (std::size_t i = 0; i < d.monomials.size(); ++i) d.index.emplace(d.monomials[i], i);
      const std::size_t N = d.monomials.size();
      // Echelon basis of the relation space in degree k; leading entry = lowest column index.
      std::vector<std::vector<Rational>> rows;
      std::vector<std::size_t> lead;
      auto insert = [&](std::vector<Rational> v) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
          const Rational f = v[lead[i]];
          if (f == 0) continue;
          for (std::size_t j = lead[i]; j < N; ++j)
            if (rows[i][j] != 0) v[j] -= f * rows[i][j];
        }
        std::size_t p = 0;
        while (p < N && v[p] == 0) ++p;
        if (p == N) return;
        const Rational inv = 1 / v[p];
        for (std::size_t j = p; j < N; ++j)
          if (v[j] != 0) v[j] *= inv;
        // keep rows fully reduced against the new pivot
        for (auto& row : rows) {
          const Rational f = row[p];
          if (f == 0) continue;
          for (std::size_t j = p; j < N; ++j)
            if (v[j] != 0) row[j] -= f * v[j];
        }
        rows.push_back(std::move(v));
        lead.push_back(p);
      };
      if (k > 0) {
        const auto& pd = deg_[k - 1];
        for (const auto& row : prev_rows) {
          for (std::size_t i = 0; i < r_; ++i) {
            std::vector<Rational> v(N);
            for (std::size_t j = 0; j < row.size(); ++j) {
              if (row[j] == 0) continue;
              Exponent e = pd.monomials[j];
              ++e[i];
              v[d.index.at(e)] += row[j];
            }
            insert(std::move(v));
          }
        }
      }
      for (const auto& g : m.generators) {
        if (g.size() != k) continue;
        MultiPoly p = MultiPoly::constant(r_, 1);
        for (auto i : g) p = p * MultiPoly::linear(ell_[i]);
        insert(poly_vector(k, p));
      }
      std::vector<bool> is_lead(N, false);
      std::vector<long> row_of(N, -1);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        is_lead[lead[i]] = true;
        row_of[lead[i]] = static_cast<long>(i);
      }
      d.std_pos.assign(N, -1);
      for (std::size_t j = 0; j < N; ++j)
        if (!is_lead[j]) {
          d.std_pos[j] = static_cast<long>(d.standard.size());
          d.standard.push_back(j);
          d.standard_exp.push_back(d.monomials[j]);
        }
      d.nf.assign(N, std::vector<Rational>(d.standard.size()));
      for (std::size_t j = 0; j < N; ++j) {
        if (!is_lead[j]) {
          d.nf[j][static_cast<std::size_t>(d.std_pos[j])] = 1;
        } else {
          const auto& row = rows[static_cast<std::size_t>(row_of[j])];
          for (std::size_t s = 0; s < d.standard.size(); ++s) d.nf[j][s] = -row[d.standard[s]];
        }
      }
      prev_rows = std::move(rows);
    }
    if (deg_[D_].standard.size() != 1)
      fail(ErrorCode::TopDegreeNotOneDimensional,
           "top degree has dimension " + std::to_string(deg_[D_].standard.size()) + ", expected 1");
    mulvar_.resize(D_);
    for (std::size_t k = 0; k < D_; ++k) {
      mulvar_[k].resize(r_);
      for (std::size_t i = 0; i < r_; ++i)
        for (const auto& e : deg_[k].standard_exp) {
          Exponent f = e;
          ++f[i];
          mulvar_[k][i].push_back(normal_form(k + 1, f));
        }
    }
  }

  std::size_t n_, r_, D_;
  std::vector<std::vector<Rational>> ell_;
  std::vector<Degree> deg_;
  std::vector<std::vector<std::vector<std::vector<Rational>>>> mulvar_;
};

/// Ring and normalisation data for one chamber.
struct ToddChamberData {
  std::size_t n = 0;
  std::vector<ColumnBasis> signature;
  StanleyReisnerIdeal sr;
  std::unique_ptr<CohomologyRing> ring;
  Rational gamma;
};

inline ToddChamberData prepare_todd(const IntMatrix& a, std::vector<ColumnBasis> signature,
                                    std::size_t memory_cap = 5000000) {
  ToddChamberData t;
  t.n = a.cols();
  std::sort(signature.begin(), signature.end());
  t.signature = signature;
  t.sr = stanley_reisner(signature, a.cols());
  const auto kernel = kernel_basis(to_rational(a));
  t.ring = std::make_unique<CohomologyRing>(t.sr, kernel, signature.front(), memory_cap);
  std::vector<std::size_t> nonbasic;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!std::binary_search(signature.front().begin(), signature.front().end(), j)) nonbasic.push_back(j);
  t.gamma = t.ring->vertex_gamma(nonbasic);
  if (t.gamma == 0) fail(ErrorCode::ZeroGamma, "vertex monomial reduces to zero");
  return t;
}

inline CohomologyRing build_ring(const StanleyReisnerIdeal& m, const std::vector<std::vector<BigInt>>& kernel,
                                 const ColumnBasis& sigma0, std::size_t memory_cap = 5000000) {
  return CohomologyRing(m, kernel, sigma0, memory_cap);
}

/// Integral of a polynomial in x_1..x_n: top coefficient of its normal form divided by gamma.
inline Rational integral(const CohomologyRing& ring, const Rational& gamma, const MultiPoly& p) {
  if (gamma == 0) fail(ErrorCode::ZeroGamma, "gamma is zero");
  return ring.top(ring.reduce(p)) / gamma;
}

/// integral(td * exp(sum_i w_i x_i)) for a prepared chamber.
inline Rational todd_integral(const ToddChamberData& t, const std::vector<BigInt>& w) {
  const auto& ring = *t.ring;
  std::vector<Rational> lin(ring.reduced_vars());
  for (std::size_t i = 0; i < t.n; ++i)
    for (std::size_t k = 0; k < lin.size(); ++k) lin[k] += w[i] * ring.linear_form(i)[k];
  auto acc = ring.todd();
  Rational total = 0;
  for (std::size_t j = 0; j <= ring.top_degree(); ++j) {
    if (j) acc = ring.mul_linear(acc, lin);
    total += ring.top(acc) / factorial(static_cast<unsigned>(j));
  }
  return total / t.gamma;
}

/// Lattice point count of {u >= 0 : A u = A w} by Todd-class integration.
inline BigInt count_todd(const IntMatrix& a, const std::vector<BigInt>& w, std::size_t memory_cap = 5000000) {
  if (w.size() != a.cols()) fail(ErrorCode::DimensionMismatch, "w must have one entry per column");
  std::vector<Rational> b(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) b[i] += a(i, j) * w[j];
  const auto ve = enumerate_vertices(a, b);
  if (!ve.simple) fail(ErrorCode::DegenerateRhs, "rhs lies on a chamber wall");
  std::vector<ColumnBasis> sig;
  for (const auto& fb : ve.bases) sig.push_back(fb.basis);
  const auto t = prepare_todd(a, sig, memory_cap);
  return detail::require_count(todd_integral(t, w));
}

/// Count for an explicit rhs b: uses the basic solution of the first feasible basis as w.
inline BigInt count_todd_rhs(const IntMatrix& a, const std::vector<Rational>& b, std::size_t memory_cap = 5000000) {
  const auto ve = enumerate_vertices(a, b);
  if (!ve.simple) fail(ErrorCode::DegenerateRhs, "rhs lies on a chamber wall");
  std::vector<ColumnBasis> sig;
  for (const auto& fb : ve.bases) sig.push_back(fb.basis);
  const auto t = prepare_todd(a, sig, memory_cap);
  return detail::require_count(todd_integral(t, ve.bases.front().vertex));
}

/// Chamber polynomial phi_A(b) on the chamber with the given signature, in d variables.
/// `section` picks the signature basis used for w = v_sigma(b).
inline MultiPoly chamber_polynomial_todd(const IntMatrix& a, const std::vector<ColumnBasis>& signature,
                                         std::size_t section = 0, std::size_t memory_cap = 5000000) {
  const auto t = prepare_todd(a, signature, memory_cap);
  const auto& ring = *t.ring;
  const std::size_t r = ring.reduced_vars(), D = ring.top_degree(), d = a.rows();
  if (section >= t.signature.size()) fail(ErrorCode::InvalidInput, "section index out of range");
  const RatMatrix l = symbolic_basic_solution(a, t.signature[section]);
  // Coefficient of y_k in sum_i w_i x_i, as a linear form in b.
  std::vector<MultiPoly> mk;
  for (std::size_t k = 0; k < r; ++k) {
    std::vector<Rational> coeffs(d);
    for (std::size_t i = 0; i < t.n; ++i) {
      const Rational& e = ring.linear_form(i)[k];
      if (e == 0) continue;
      for (std::size_t c = 0; c < d; ++c) coeffs[c] += e * l(i, c);
    }
    mk.push_back(MultiPoly::linear(coeffs));
  }
  std::vector<std::vector<MultiPoly>> powers(r);
  for (std::size_t k = 0; k < r; ++k) {
    powers[k].push_back(MultiPoly::constant(d, 1));
    for (std::size_t e = 1; e <= D; ++e) powers[k].push_back(powers[k].back() * mk[k]);
  }
  MultiPoly result(d);
  const auto td = ring.todd();
  // Depth-first over exponents alpha with |alpha| <= D, carrying td * y^alpha.
  Exponent alpha(r, 0);
  auto rec = [&](auto&& self, std::size_t start, const CohomologyRing::Element& elem, std::size_t deg) -> void {
    const Rational c = ring.top(elem);
    if (c != 0) {
      BigInt denom = 1;
      MultiPoly term = MultiPoly::constant(d, c / t.gamma);
      for (std::size_t k = 0; k < r; ++k) {
        if (!alpha[k]) continue;
        denom *= factorial(static_cast<unsigned>(alpha[k]));
        term = term * powers[k][static_cast<std::size_t>(alpha[k])];
      }
      term *= make_rational(1, denom);
      result += term;
    }
    if (deg == D) return;
    for (std::size_t k = start; k < r; ++k) {
      ++alpha[k];
      self(self, k, ring.mul_var(elem, k), deg + 1);
      --alpha[k];
    }
  };
  rec(rec, 0, td, 0);
  return result;
}

inline MultiPoly chamber_polynomial_todd(const IntMatrix& a, const Chamber& c, std::size_t section = 0,
                                         std::size_t memory_cap = 5000000) {
  return chamber_polynomial_todd(a, c.signature, section, memory_cap);
}

}  // namespace vpart
