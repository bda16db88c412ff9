#pragma once

#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "vpart/polytope.hpp"

namespace vpart {

struct Chamber {
  /// Sorted list of bases whose cones contain the chamber.
  std::vector<ColumnBasis> signature;
  /// Integer d-vector in the chamber interior.
  std::vector<BigInt> representative;
  /// Normals h (d-vectors) with h.b >= 0 cutting out the closed chamber inside the span of A.
  std::vector<std::vector<BigInt>> inequalities;
};

struct ChamberComplex {
  std::vector<Chamber> chambers;
  std::size_t cell_count = 0;
  std::size_t hyperplane_count = 0;
};

namespace detail {

using IntVec = std::vector<BigInt>;

inline BigInt dot(const IntVec& h, const std::vector<Rational>& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] != 0 && y[i] != 0) s += h[i] * y[i];
  if (!is_integer(s)) return s > 0 ? BigInt(1) : BigInt(-1);  // only the sign is used
  return s.get_num();
}

inline int sign_of(const BigInt& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Primitive normal with first nonzero entry positive; returns the sign flip applied.
inline int normalize_direction(IntVec& h) {
  h = primitive_integer(h);
  for (const auto& x : h) {
    if (x == 0) continue;
    if (x < 0) {
      for (auto& y : h) y = -y;
      return -1;
    }
    return 1;
  }
  return 1;
}

/// Geometry of cone(A) in the free coordinates y = b_R.
class ConeGeometry {
 public:
  explicit ConeGeometry(const BasisSolver& s) : s_(s), r_(s.rank()) {}

  std::size_t rank() const { return r_; }
  const BasisSolver& solver() const { return s_; }

  /// Oriented facet normals of cone(A_R[:, sigma]): row k of B^{-1}, made primitive.
  std::vector<IntVec> cone_facets(const RatMatrix& inv) const {
    std::vector<IntVec> out;
    for (std::size_t k = 0; k < r_; ++k) out.push_back(primitive_integer(inv.row(k)));
    return out;
  }

  /// Removes duplicates and redundant inequalities from a list of oriented normals
  /// of a full-dimensional cone.
  static std::vector<IntVec> irredundant(std::vector<IntVec> normals, std::size_t dim) {
    std::sort(normals.begin(), normals.end());
    normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
    std::vector<IntVec> keep;
    for (std::size_t k = 0; k < normals.size(); ++k) {
      std::vector<std::vector<Rational>> gens;
      std::vector<Rational> neg(dim);
      for (std::size_t i = 0; i < dim; ++i) neg[i] = -normals[k][i];
      gens.push_back(neg);
      for (std::size_t j = 0; j < normals.size(); ++j)
        if (j != k) gens.push_back(to_rational(normals[j]));
      if (strictly_positive_direction(gens, dim)) keep.push_back(normals[k]);
    }
    return keep;
  }

  /// Sum of primitive extreme rays of the pointed cone {y : h.y >= 0}; nullopt
  /// if enumerating (dim-1)-subsets of facets would exceed `budget`.
  static std::optional<IntVec> ray_sum(const std::vector<IntVec>& facets, std::size_t dim,
                                       std::size_t budget = 500000) {
    if (dim == 1) {
      IntVec v{BigInt(facets.empty() ? 1 : sign_of(facets[0][0]))};
      return v;
    }
    if (binomial(facets.size(), dim - 1) > budget) return std::nullopt;
    IntMatrix hm(dim, facets.size());
    for (std::size_t j = 0; j < facets.size(); ++j)
      for (std::size_t i = 0; i < dim; ++i) hm(i, j) = facets[j][i];
    std::set<IntVec> rays;
    for_each_subset(facets.size(), dim - 1, [&](const std::vector<std::size_t>& sub) {
      IntVec ray = orthogonal_complement(hm, sub);
      if (ray.empty()) return true;
      int pos = 0, neg = 0;
      for (const auto& h : facets) {
        BigInt d = 0;
        for (std::size_t i = 0; i < dim; ++i) d += h[i] * ray[i];
        if (d > 0) ++pos;
        if (d < 0) ++neg;
      }
      if (pos && neg) return true;
      if (neg)
        for (auto& x : ray) x = -x;
      if (!pos && !neg) return true;
      rays.insert(ray);
      return true;
    });
    IntVec sum(dim);
    for (const auto& ray : rays)
      for (std::size_t i = 0; i < dim; ++i) sum[i] += ray[i];
    return primitive_integer(sum);
  }

  /// Primitive vector orthogonal to the chosen columns of m (dim x k, k = dim-1), or empty.
  static IntVec orthogonal_complement(const IntMatrix& m, const std::vector<std::size_t>& cols) {
    const std::size_t dim = m.rows();
    IntVec v(dim);
    bool nonzero = false;
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < dim; ++k) {
      rows.clear();
      for (std::size_t i = 0; i < dim; ++i)
        if (i != k) rows.push_back(i);
      v[k] = minor_det(m, rows, cols);
      if (k % 2 == 1) v[k] = -v[k];
      if (v[k] != 0) nonzero = true;
    }
    if (!nonzero) return {};
    return primitive_integer(v);
  }

  /// Integer point of the column lattice lying on the ray through y (free coordinates),
  /// returned as a full d-vector.
  std::vector<BigInt> lift(const IntVec& y, const ColumnBasis& sigma) const {
    const auto inv = s_.require_inverse(sigma);
    const auto v = mat_vec(inv, to_rational(y));
    BigInt den = 1;
    for (const auto& x : v) den = big_lcm(den, x.get_den());
    std::vector<BigInt> b(s_.matrix().rows());
    for (std::size_t i = 0; i < b.size(); ++i) {
      Rational acc = 0;
      for (std::size_t k = 0; k < sigma.size(); ++k) acc += s_.matrix()(i, sigma[k]) * v[k];
      acc *= den;
      b[i] = acc.get_num();
    }
    return b;
  }

  /// Embeds free-coordinate normals into d-vectors (zeros on dependent rows).
  std::vector<IntVec> embed(const std::vector<IntVec>& hs) const {
    std::vector<IntVec> out;
    for (const auto& h : hs) {
      IntVec full(s_.matrix().rows());
      for (std::size_t k = 0; k < r_; ++k) full[s_.rows()[k]] = h[k];
      out.push_back(std::move(full));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Chamber data from a signature: irredundant inequalities and a representative.
  Chamber make_chamber(std::vector<ColumnBasis> signature, const std::vector<BigInt>* fallback_rep) const {
    std::sort(signature.begin(), signature.end());
    std::vector<IntVec> normals;
    for (const auto& sigma : signature)
      for (auto& h : cone_facets(s_.require_inverse(sigma))) normals.push_back(std::move(h));
    auto facets = irredundant(std::move(normals), r_);
    Chamber c;
    c.signature = std::move(signature);
    if (auto rays = ray_sum(facets, r_)) {
      c.representative = lift(*rays, c.signature.front());
    } else if (fallback_rep) {
      c.representative = *fallback_rep;
    } else {
      fail(ErrorCode::ResourceCap, "too many facets to enumerate chamber rays");
    }
    c.inequalities = embed(facets);
    return c;
  }

 private:
  const BasisSolver& s_;
  std::size_t r_;
};

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// All maximal chambers of A, sorted by signature.
inline ChamberComplex enumerate_chambers(const IntMatrix& a, std::uint64_t seed = 1) {
  BasisSolver s(a);
  const std::size_t r = s.rank(), n = s.cols();
  if (!positive_row_functional(a)) fail(ErrorCode::NotPointed, "matrix is not pointed");
  detail::ConeGeometry geo(s);

  // Hyperplanes = facet hyperplanes of all basis cones; per basis the (index, side) tests.
  std::map<detail::IntVec, std::size_t> hyper_index;
  std::vector<detail::IntVec> hyper;
  std::vector<ColumnBasis> bases;
  std::vector<std::vector<std::pair<std::size_t, int>>> tests;
  for_each_subset(n, r, [&](const std::vector<std::size_t>& sigma) {
    auto inv = s.basis_inverse(sigma);
    if (!inv) return true;
    std::vector<std::pair<std::size_t, int>> t;
    for (auto h : geo.cone_facets(*inv)) {
      const int flip = detail::normalize_direction(h);
      auto [it, inserted] = hyper_index.emplace(h, hyper.size());
      if (inserted) hyper.push_back(h);
      t.emplace_back(it->second, flip);
    }
    bases.push_back(sigma);
    tests.push_back(std::move(t));
    return true;
  });
  const std::size_t H = hyper.size();

  // Hyperplanes with every column on one side are facets of cone(A): their sign is fixed.
  std::vector<int> fixed(H, 0);
  for (std::size_t k = 0; k < H; ++k) {
    int pos = 0, neg = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = detail::dot(hyper[k], s.reduced().col(j));
      pos += c > 0;
      neg += c < 0;
    }
    if (!neg) fixed[k] = 1;
    if (!pos) fixed[k] = -1;
  }

  // Generic interior start point.
  std::mt19937_64 rng(seed);
  std::vector<Rational> p(r);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 1000) fail(ErrorCode::InvariantViolation, "could not find a generic interior point");
    std::uniform_int_distribution<int> dist(1, 1000 + 100 * attempt);
    std::fill(p.begin(), p.end(), Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      const int w = dist(rng);
      for (std::size_t i = 0; i < r; ++i) p[i] += w * s.reduced()(i, j);
    }
    bool generic = true;
    for (const auto& h : hyper)
      if (detail::dot(h, p) == 0) generic = false;
    if (generic) break;
  }

  using Signs = std::vector<signed char>;
  Signs start(H);
  for (std::size_t k = 0; k < H; ++k) start[k] = static_cast<signed char>(detail::sign_of(detail::dot(hyper[k], p)));

  std::map<Signs, std::size_t> cell_id;
  std::set<Signs> empty_cells;
  std::vector<Signs> cells;
  detail::UnionFind uf;
  std::vector<std::vector<std::size_t>> cell_sig;

  auto signature_of = [&](const Signs& sv) {
    std::vector<std::size_t> sig;
    for (std::size_t b = 0; b < bases.size(); ++b) {
      bool in = true;
      for (const auto& [k, side] : tests[b])
        if (sv[k] != side) {
          in = false;
          break;
        }
      if (in) sig.push_back(b);
    }
    return sig;
  };
  auto add_cell = [&](const Signs& sv) {
    const std::size_t id = uf.add();
    cell_id.emplace(sv, id);
    cells.push_back(sv);
    cell_sig.push_back(signature_of(sv));
    return id;
  };

  std::deque<std::size_t> queue{add_cell(start)};
  if (r > 1) {
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < H; ++k) {
        if (fixed[k]) continue;
        Signs nb = cells[c];
        nb[k] = static_cast<signed char>(-nb[k]);
        std::size_t other;
        if (auto it = cell_id.find(nb); it != cell_id.end()) {
          other = it->second;
        } else {
          if (empty_cells.count(nb)) continue;
          std::vector<std::vector<Rational>> gens;
          for (std::size_t i = 0; i < H; ++i) {
            std::vector<Rational> g(r);
            for (std::size_t t = 0; t < r; ++t) g[t] = nb[i] * hyper[i][t];
            gens.push_back(std::move(g));
          }
          if (!strictly_positive_direction(gens, r)) {
            empty_cells.insert(nb);
            continue;
          }
          other = add_cell(nb);
          queue.push_back(other);
        }
        if (cell_sig[other] == cell_sig[c]) uf.unite(c, other);
      }
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < cells.size(); ++c) groups[uf.find(c)].push_back(c);

  ChamberComplex out;
  out.cell_count = cells.size();
  out.hyperplane_count = H;
  for (const auto& [root, members] : groups) {
    std::vector<ColumnBasis> sig;
    for (auto b : cell_sig[root]) sig.push_back(bases[b]);
    out.chambers.push_back(geo.make_chamber(std::move(sig), nullptr));
  }
  std::sort(out.chambers.begin(), out.chambers.end(),
            [](const Chamber& x, const Chamber& y) { return x.signature < y.signature; });
  return out;
}

/// The chamber containing b in its interior, computed locally from the feasible bases of b.
inline Chamber chamber_of(const IntMatrix& a, const std::vector<Rational>& b) {
  BasisSolver s(a);
  VertexEnumeration ve;
  try {
    ve = enumerate_vertices(s, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) fail(ErrorCode::OutsideCone, "rhs is outside cone(A)");
    throw;
  }
  if (!ve.simple) fail(ErrorCode::OnChamberBoundary, "rhs lies on a chamber wall");
  std::vector<ColumnBasis> sig;
  for (const auto& fb : ve.bases) sig.push_back(fb.basis);
  std::vector<BigInt> bi(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!is_integer(b[i])) fail(ErrorCode::InvalidInput, "rhs must be integral");
    bi[i] = b[i].get_num();
  }
  detail::ConeGeometry geo(s);
  return geo.make_chamber(std::move(sig), &bi);
}

/// A right-hand side in the interior of a maximal chamber whose closure contains b.
inline std::vector<BigInt> adjacent_representative(const IntMatrix& a, const std::vector<Rational>& b,
                                                   std::uint64_t seed = 7) {
  BasisSolver s(a);
  try {
    enumerate_vertices(s, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Infeasible) fail(ErrorCode::OutsideCone, "rhs is outside cone(A)");
    throw;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 1000);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Rational> p(a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int w = dist(rng);
      for (std::size_t i = 0; i < a.rows(); ++i) p[i] += w * a(i, j);
    }
    BigInt scale = 1;
    for (int doubling = 0; doubling < 64; ++doubling, scale *= 2) {
      std::vector<Rational> cand(a.rows());
      for (std::size_t i = 0; i < a.rows(); ++i) cand[i] = scale * b[i] + p[i];
      const auto ve = enumerate_vertices(s, cand);
      if (!ve.simple) continue;
      bool closure = true;
      for (const auto& fb : ve.bases) {
        const auto v = s.basic_solution(fb.basis, s.require_inverse(fb.basis), b);
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x < 0; })) {
          closure = false;
          break;
        }
      }
      if (!closure) continue;
      std::vector<BigInt> out(a.rows());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = cand[i].get_num();
      return out;
    }
  }
  fail(ErrorCode::InvariantViolation, "no adjacent chamber representative found");
}

/// Feasible bases of b, or of an adjacent chamber when b is degenerate.
inline std::vector<ColumnBasis> adjacent_signature(const IntMatrix& a, const std::vector<Rational>& b) {
  const auto rep = adjacent_representative(a, b);
  const auto ve = enumerate_vertices(a, to_rational(rep));
  std::vector<ColumnBasis> sig;
  for (const auto& fb : ve.bases) sig.push_back(fb.basis);
  return sig;
}

/// True iff h.b > 0 for every inequality (b strictly inside the chamber).
inline bool strictly_inside(const Chamber& c, const std::vector<BigInt>& b) {
  for (const auto& h : c.inequalities) {
    BigInt d = 0;
    for (std::size_t i = 0; i < h.size(); ++i) d += h[i] * b[i];
    if (d <= 0) return false;
  }
  return true;
}

}  // namespace vpart
