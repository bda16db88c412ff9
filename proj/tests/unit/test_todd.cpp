#include <gtest/gtest.h>

#include "support/golden.hpp"
#include "support/random.hpp"

using namespace vpart;

namespace {
std::vector<ColumnBasis> signature_at(const IntMatrix& a, const std::vector<Rational>& b) {
  std::vector<ColumnBasis> out;
  for (const auto& fb : enumerate_vertices(a, b).bases) out.push_back(fb.basis);
  return out;
}

MultiPoly running_example_piece(int which) {
  const char* forms[] = {
      "b2*b3 + b2 + b3 + 1",
      "1/2*b1^2 + 3/2*b1 + 1",
      "b1*b2 - 1/2*b2^2 + 1/2*b2 + b1 + 1",
      "b1*b3 - 1/2*b3^2 + 1/2*b3 + b1 + 1",
      "b1*b2 + b1*b3 - 1/2*(b1^2 + b2^2 + b3^2) + 1/2*(b1 + b2 + b3) + 1",
  };
  return parse_poly(forms[which], 3);
}
}  // namespace

TEST(ToddSeries, Coefficients) {
  const auto t = todd_series(6);
  EXPECT_EQ(t, (std::vector<Rational>{1, make_rational(1, 2), make_rational(1, 12), 0, make_rational(-1, 720), 0,
                                      make_rational(1, 30240)}));
  const auto td = todd_class(2, 2);
  EXPECT_EQ(td, parse_poly("1 + 1/2*b1 + 1/2*b2 + 1/12*b1^2 + 1/4*b1*b2 + 1/12*b2^2", 2));
}

TEST(StanleyReisner, MinimalNonFaces) {
  const auto a = example_3x5();
  const auto sig = signature_at(a, {5, 1, 1});
  const auto sr = stanley_reisner(sig, a.cols());
  ASSERT_FALSE(sr.generators.empty());
  auto is_face = [&](const std::vector<std::size_t>& s) {
    return std::any_of(sr.facets.begin(), sr.facets.end(), [&](const auto& f) {
      return std::includes(f.begin(), f.end(), s.begin(), s.end());
    });
  };
  for (const auto& g : sr.generators) {
    EXPECT_FALSE(is_face(g));
    for (std::size_t k = 0; k < g.size(); ++k) {
      auto sub = g;
      sub.erase(sub.begin() + static_cast<long>(k));
      EXPECT_TRUE(is_face(sub));
    }
  }
  EXPECT_EQ(sr.facets.size(), sig.size());
  EXPECT_THROW(stanley_reisner({}, 5), Error);
}

TEST(Ring, HilbertFunctionIsPalindromicAndCountsVertices) {
  for (const auto& inst : vtest::random_instances(20, 41)) {
    const auto sig = signature_at(inst.a, inst.b);
    const auto t = prepare_todd(inst.a, sig);
    const auto h = t.ring->hilbert_function();
    EXPECT_EQ(h.back(), 1u) << inst.family;
    EXPECT_EQ(std::accumulate(h.begin(), h.end(), std::size_t{0}), sig.size()) << inst.family;
    for (std::size_t k = 0; k < h.size(); ++k) EXPECT_EQ(h[k], h[h.size() - 1 - k]) << inst.family;
  }
}

TEST(Ring, ToddIntegratesToOne) {
  for (const auto& inst : vtest::random_instances(20, 43)) {
    const auto t = prepare_todd(inst.a, signature_at(inst.a, inst.b));
    EXPECT_EQ(t.ring->top(t.ring->todd()) / t.gamma, 1) << inst.family;
  }
}

TEST(Ring, IntegralOfProductOfReducedClass) {
  // integral of the full Todd polynomial agrees with the ring's own Todd element.
  const auto a = example_3x6();
  const auto t = prepare_todd(a, signature_at(a, {1, 3, -2}));
  const auto td = todd_class(a.cols(), t.ring->top_degree());
  EXPECT_EQ(integral(*t.ring, t.gamma, td), 1);
}

TEST(Ring, MemoryCap) {
  const auto a = kostant_matrix(5);
  try {
    prepare_todd(a, signature_at(a, {4, 3, 2, 1, -10}), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceCap);
  }
}

TEST(CountTodd, MatchesBrionAndOracle) {
  for (const auto& inst : vtest::random_instances(30, 47)) {
    const auto n = count(inst.a, inst.b);
    EXPECT_EQ(count_todd_rhs(inst.a, inst.b), n) << inst.family;
    EXPECT_EQ(oracle_count(inst.a, inst.b), n) << inst.family;
  }
}

TEST(CountTodd, FromNonnegativeVector) {
  EXPECT_EQ(count_todd(example_3x5(), {1, 1, 1, 1, 1}), 8);
  EXPECT_THROW(count_todd(example_3x5(), {1, 1, 1}), Error);
}

TEST(ChamberPolynomial, RunningExamplePieces) {
  const auto a = example_3x5();
  const auto cx = enumerate_chambers(a);
  ASSERT_EQ(cx.chambers.size(), 5u);
  std::vector<bool> used(5, false);
  for (const auto& c : cx.chambers) {
    const auto p = chamber_polynomial_todd(a, c);
    EXPECT_EQ(p.degree(), 2);
    bool matched = false;
    for (int k = 0; k < 5; ++k)
      if (!used[k] && p == running_example_piece(k)) used[k] = matched = true;
    EXPECT_TRUE(matched) << p.to_string();
  }
}

TEST(ChamberPolynomial, SectionIndependence) {
  const auto a = kostant_matrix(4);
  const auto sig = signature_at(a, {1, 1, 1, -3});
  const auto p0 = chamber_polynomial_todd(a, sig, 0);
  for (std::size_t s = 1; s < sig.size(); ++s) EXPECT_EQ(chamber_polynomial_todd(a, sig, s), p0);
  EXPECT_THROW(chamber_polynomial_todd(a, sig, sig.size()), Error);
}

TEST(ChamberPolynomial, KostantFiveGolden) {
  const auto a = kostant_matrix(5);
  const auto cx = enumerate_chambers(a);
  const auto golden = vtest::load_golden("kostant5_factored.txt", 5);
  ASSERT_EQ(golden.size(), 18u);
  for (const auto& g : golden) {
    const int i = vtest::find_chamber(cx, g);
    ASSERT_GE(i, 0) << "item " << g.id;
    EXPECT_EQ(chamber_polynomial_todd(a, cx.chambers[static_cast<std::size_t>(i)]), g.poly) << "item " << g.id;
  }
}

TEST(ChamberPolynomial, DegreeIsKernelDimension) {
  for (const auto& a : {kostant_matrix(4), example_3x6(), contingency_matrix(2, 3)}) {
    for (const auto& c : enumerate_chambers(a).chambers)
      EXPECT_EQ(chamber_polynomial_todd(a, c).degree(), static_cast<int>(a.cols() - analyze(a).rank));
  }
}
