#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace vpart;

TEST(Analyze, RunningExampleIsUnimodularAndPointed) {
  const auto p = analyze(example_3x5());
  EXPECT_EQ(p.rank, 3u);
  EXPECT_EQ(p.kernel.size(), 2u);
  EXPECT_TRUE(p.unimodular);
  EXPECT_TRUE(p.standard_unimodular);
  EXPECT_TRUE(p.pointed);
}

TEST(Analyze, RankDeficientNetwork) {
  const auto p = analyze(kostant_matrix(4));
  EXPECT_EQ(p.rank, 3u);
  EXPECT_EQ(p.row_basis, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(p.unimodular);
  EXPECT_TRUE(p.pointed);
}

TEST(Analyze, NonUnimodularAndNonPointed) {
  const auto p = analyze(make_int_matrix({{1, 1, 1}, {0, 1, 2}}));
  EXPECT_FALSE(p.unimodular);
  const auto q = analyze(make_int_matrix({{1, -1}}));
  EXPECT_TRUE(q.unimodular);
  EXPECT_FALSE(q.pointed);
  EXPECT_FALSE(positive_row_functional(make_int_matrix({{1, -1}})).has_value());
}

TEST(Analyze, GeneralizedUnimodular) {
  // All nonzero maximal minors equal 2 in absolute value.
  const auto p = analyze(make_int_matrix({{2, 0, 2}, {0, 1, 1}}));
  EXPECT_TRUE(p.unimodular);
  EXPECT_FALSE(p.standard_unimodular);
  EXPECT_EQ(p.minor_abs, 2);
}

TEST(Analyze, PositiveFunctional) {
  const auto a = example_3x6();
  const auto y = positive_row_functional(a);
  ASSERT_TRUE(y.has_value());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    BigInt s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += (*y)[i] * a(i, j);
    EXPECT_GT(s, 0);
  }
}

TEST(Circuits, RunningExample) {
  const auto cs = circuits(example_3x5());
  // Kernel spanned by (1,1,0,-1,0) and (1,0,1,0,-1); circuits up to sign.
  ASSERT_EQ(cs.size(), 3u);
  for (const auto& c : cs) {
    auto nz = std::find_if(c.c.begin(), c.c.end(), [](const BigInt& x) { return x != 0; });
    EXPECT_GT(*nz, 0);
    for (const auto& x : c.c) EXPECT_LE(abs(x), 1);
  }
  // Sorted by support.
  EXPECT_EQ(cs[0].c, (std::vector<BigInt>{1, 1, 0, -1, 0}));
  EXPECT_EQ(cs[1].c, (std::vector<BigInt>{1, 0, 1, 0, -1}));
  EXPECT_EQ(cs[2].c, (std::vector<BigInt>{0, 1, -1, -1, 1}));
}

TEST(Circuits, KernelAndMinimalSupport) {
  const auto a = kostant_matrix(4);
  const auto cs = circuits(a);
  // Circuits of K4 are the cycles of the complete graph on 4 nodes: 4 triangles + 3 squares.
  EXPECT_EQ(cs.size(), 7u);
  for (const auto& c : cs) {
    for (std::size_t i = 0; i < a.rows(); ++i) {
      BigInt s = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * c.c[j];
      EXPECT_EQ(s, 0);
    }
  }
}

TEST(BasicCircuit, OnePlusAtIndex) {
  const auto a = example_3x5();
  const auto c = basic_circuit(a, {0, 1, 2}, 3);
  EXPECT_EQ(c.c, (std::vector<BigInt>{-1, -1, 0, 1, 0}));
  EXPECT_EQ(c.support, (std::vector<std::size_t>{0, 1, 3}));
  try {
    basic_circuit(a, {0, 1, 2}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexInBasis);
  }
  EXPECT_THROW(basic_circuit(a, {0, 0, 2}, 3), Error);
}

TEST(BasicSolution, SolvesAndRejectsOutOfSpan) {
  const auto a = example_3x6();
  const auto v = basic_solution(a, {0, 3, 5}, {1, 3, -2});
  EXPECT_EQ(v, (std::vector<Rational>{1, 0, 0, 4, 0, 2}));
  const auto k = kostant_matrix(3);
  try {
    basic_solution(k, {0, 1}, {1, 1, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RhsOutsideSpan);
  }
}

TEST(BasicSolution, SymbolicMatchesNumeric) {
  const auto a = kostant_matrix(4);
  const ColumnBasis sigma{0, 3, 5};
  const auto l = symbolic_basic_solution(a, sigma);
  const std::vector<Rational> b{2, 1, 0, -3};
  const auto v = basic_solution(a, sigma, b);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += l(j, i) * b[i];
    EXPECT_EQ(s, v[j]);
  }
}

TEST(BasisSolver, NonBasisDetected) {
  BasisSolver s(example_3x5());
  EXPECT_TRUE(s.is_basis({0, 1, 2}));
  EXPECT_FALSE(s.is_basis({0, 1, 3}));
  EXPECT_THROW(s.require_inverse({0, 1, 3}), Error);
}

TEST(Circuits, RandomNetworksHaveUnitCircuits) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    const auto a = vtest::random_network(rng, 5, 8);
    EXPECT_TRUE(analyze(a).unimodular);
    for (const auto& c : circuits(a))
      for (const auto& x : c.c) EXPECT_LE(abs(x), 1);
  }
}
