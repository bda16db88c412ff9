#pragma once

#include <random>
#include <thread>
#include <vector>

#include "vpart/brion.hpp"
#include "vpart/chambers.hpp"
#include "vpart/multipoly.hpp"

namespace vpart {

struct InterpolationPlan {
  /// Row indices of b used as polynomial variables.
  std::vector<std::size_t> free_coords;
  std::size_t degree = 0;
  /// Free-coordinate point k * representative around which the sample grid sits.
  std::vector<BigInt> base;
  BigInt scale = 1;
  /// Samples are base + alpha for alpha in frame (|alpha| <= degree); all d-vectors.
  std::vector<Exponent> frame;
  std::vector<std::vector<BigInt>> samples;
  std::vector<std::vector<BigInt>> holdouts;
  std::uint64_t seed = 0;
};

struct InterpolationOptions {
  std::uint64_t seed = 20240601;
  unsigned threads = 1;
  std::size_t holdout_count = 5;
};

namespace detail {

/// Full d-vector for free coordinates y if it lies in the column lattice, else empty.
inline std::vector<BigInt> lift_exact(const BasisSolver& s, const ColumnBasis& sigma, const RatMatrix& inv,
                                      const std::vector<BigInt>& y) {
  const auto v = mat_vec(inv, to_rational(y));
  for (const auto& x : v)
    if (!is_integer(x)) return {};
  std::vector<BigInt> b(s.matrix().rows());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t k = 0; k < sigma.size(); ++k) b[i] += s.matrix()(i, sigma[k]) * v[k].get_num();
  return b;
}

}  // namespace detail

inline InterpolationPlan make_plan(const IntMatrix& a, const Chamber& c, const InterpolationOptions& opt = {}) {
  BasisSolver s(a);
  const std::size_t r = s.rank();
  InterpolationPlan plan;
  plan.free_coords = s.rows();
  plan.degree = a.cols() - r;
  plan.seed = opt.seed;
  plan.frame = monomials_up_to_degree(r, static_cast<int>(plan.degree));
  std::reverse(plan.frame.begin(), plan.frame.end());

  std::vector<BigInt> rep(r), h_free;
  for (std::size_t k = 0; k < r; ++k) rep[k] = c.representative[s.rows()[k]];
  // Smallest k with k*rep + alpha strictly inside for every |alpha| <= degree.
  BigInt k = 1;
  for (const auto& h : c.inequalities) {
    BigInt hr = 0, worst = 0;
    for (std::size_t t = 0; t < r; ++t) {
      const BigInt& ht = h[s.rows()[t]];
      hr += ht * rep[t];
      if (ht < 0 && -ht > worst) worst = -ht;
    }
    if (hr <= 0) fail(ErrorCode::CannotSample, "chamber representative is not strictly interior");
    const BigInt need = worst * static_cast<unsigned long>(plan.degree) / hr + 1;
    if (need > k) k = need;
  }
  const auto& sigma = c.signature.front();
  const auto inv = s.require_inverse(sigma);
  auto inside = [&](const std::vector<BigInt>& b) { return strictly_inside(c, b); };
  for (int attempt = 0;; ++attempt) {
    if (attempt > 20) fail(ErrorCode::CannotSample, "no lattice sample grid found inside the chamber");
    plan.samples.clear();
    plan.base.assign(r, 0);
    for (std::size_t t = 0; t < r; ++t) plan.base[t] = k * rep[t];
    bool ok = true;
    for (const auto& alpha : plan.frame) {
      std::vector<BigInt> y = plan.base;
      for (std::size_t t = 0; t < r; ++t) y[t] += alpha[t];
      auto b = detail::lift_exact(s, sigma, inv, y);
      if (b.empty() || !inside(b)) {
        ok = false;
        break;
      }
      plan.samples.push_back(std::move(b));
    }
    if (ok) break;
    k *= 2;
  }
  plan.scale = k;

  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> off(0, 3 + static_cast<int>(plan.degree));
  std::uniform_int_distribution<int> extra(1, 5);
  for (int tries = 0; plan.holdouts.size() < opt.holdout_count; ++tries) {
    if (tries > 1000) fail(ErrorCode::CannotSample, "could not place holdout points");
    const BigInt k2 = k + extra(rng);
    std::vector<BigInt> y(r);
    for (std::size_t t = 0; t < r; ++t) y[t] = k2 * rep[t] + off(rng);
    auto b = detail::lift_exact(s, sigma, inv, y);
    if (b.empty() || !inside(b)) continue;
    plan.holdouts.push_back(std::move(b));
  }
  return plan;
}

namespace detail {

inline std::vector<BigInt> count_many(const IntMatrix& a, const std::vector<std::vector<BigInt>>& pts,
                                      unsigned threads) {
  std::vector<BigInt> out(pts.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pts.size())));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      BasisSolver s(a);
      for (std::size_t i = w; i < pts.size(); i += workers) {
        const auto b = to_rational(pts[i]);
        const auto ve = enumerate_vertices(s, b);
        require_simple(ve);
        out[i] = count_genfun(s, genfun_from_bases(s, b, ve.bases));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace detail

/// Chamber polynomial (in the d variables b) fitted through exact counts at the plan samples.
inline MultiPoly interpolate(const IntMatrix& a, const InterpolationPlan& plan, const InterpolationOptions& opt = {}) {
  const std::size_t r = plan.free_coords.size(), d = a.rows(), N = plan.frame.size();
  const auto values = detail::count_many(a, plan.samples, opt.threads);
  // Vandermonde in offset coordinates z = y - base; sample i sits at z = frame[i].
  RatMatrix m(N, N + 1);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      BigInt v = 1;
      for (std::size_t t = 0; t < r; ++t) {
        BigInt p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(plan.frame[i][t]),
                      static_cast<unsigned long>(plan.frame[j][t]));
        v *= p;
      }
      m(i, j) = v;
    }
    m(i, N) = values[i];
  }
  const auto piv = rref(m);
  if (piv.size() < N || piv.back() != N - 1)
    fail(ErrorCode::RankDeficientSystem, "sample Vandermonde matrix is singular");
  // Shift back: z_t = b_{free_t} - base_t.
  std::vector<MultiPoly> images;
  for (std::size_t t = 0; t < r; ++t) {
    std::vector<Rational> coeffs(d);
    coeffs[plan.free_coords[t]] = 1;
    images.push_back(MultiPoly::linear(coeffs, Rational(-plan.base[t])));
  }
  MultiPoly q(r);
  for (std::size_t j = 0; j < N; ++j) q.add_term(plan.frame[j], m(j, N));
  MultiPoly p = q.substitute(images);

  const auto check = detail::count_many(a, plan.holdouts, opt.threads);
  for (std::size_t i = 0; i < plan.holdouts.size(); ++i) {
    if (p.evaluate(plan.holdouts[i]) != check[i])
      fail(ErrorCode::HoldoutMismatch, "interpolated polynomial disagrees with the count at a holdout point");
  }
  return p;
}

inline MultiPoly interpolate(const IntMatrix& a, const Chamber& c, const InterpolationOptions& opt = {}) {
  return interpolate(a, make_plan(a, c, opt), opt);
}

}  // namespace vpart
