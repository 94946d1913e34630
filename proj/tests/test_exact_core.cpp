#include <gtest/gtest.h>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

Poly P(const std::string& s, int n = 1) { return parse_poly(s, n); }

}  // namespace

TEST(Poly, DifferenceOfSquares) { EXPECT_EQ(P("x+1") * P("x-1"), P("x^2-1")); }

TEST(Poly, Unit) {
  Poly p = P("3*x^2 - 2/5*x + 7");
  EXPECT_EQ(p * P("1"), p);
}

TEST(Poly, Binomial) { EXPECT_EQ(P("x+y", 2).pow(2), P("x^2 + 2*x*y + y^2", 2)); }

TEST(Poly, MismatchedVariables) { EXPECT_THROW(P("x") * P("x", 2), VariableError); }

TEST(Poly, Partials) {
  EXPECT_EQ(P("x^3").partial(0), P("3*x^2"));
  EXPECT_EQ(P("x^3", 2).partial(1), P("0", 2));
  EXPECT_EQ(P("x^2*y + x*y^2", 2).partial(0), P("2*x*y + y^2", 2));
}

TEST(Poly, CanonicalTextRoundTrip) {
  Rng r(7);
  for (int t = 0; t < 50; ++t) {
    Poly p = r.poly(3, 4, 5);
    EXPECT_EQ(parse_poly(p.str(), 3), p) << p.str();
  }
}

TEST(Poly, ZeroCoefficientsDisappear) {
  Poly p = P("x - x + 0*y^2", 2);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.str(), "0");
}

TEST(Poly, RationalsStayCanonical) { EXPECT_EQ(P("2/4*x").coeff(Mono::unit(0)), Rat(1, 2)); }

TEST(Parse, ErrorCarriesOffset) {
  try {
    parse_poly("x + * y", 2);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.pos, 4u);
  }
  EXPECT_THROW(parse_poly("x + z", 2), ParseError);
  EXPECT_THROW(parse_poly("1/0", 1), ParseError);
}

TEST(Linalg, Identity) {
  SparseMat m(2, 2);
  m.add(0, 0, 1);
  m.add(1, 1, 1);
  auto rk = rank_and_kernel(m);
  EXPECT_EQ(rk.rank, 2);
  EXPECT_TRUE(rk.kernel.empty());
}

TEST(Linalg, SingleRelation) {
  SparseMat m(1, 2);
  m.add(0, 0, 1);
  m.add(0, 1, 1);
  auto rk = rank_and_kernel(m);
  EXPECT_EQ(rk.rank, 1);
  ASSERT_EQ(rk.kernel.size(), 1u);
  // Up to scale, (1, -1).
  EXPECT_EQ(rk.kernel[0][0], -rk.kernel[0][1]);
  EXPECT_NE(rk.kernel[0][0], 0);
}

TEST(Linalg, ZeroMap) {
  SparseMat m(3, 4);
  auto rk = rank_and_kernel(m);
  EXPECT_EQ(rk.rank, 0);
  EXPECT_EQ(rk.kernel.size(), 4u);
}

// Kernel vectors are killed, and rank + nullity = cols.
TEST(Linalg, RandomRankNullity) {
  Rng r(11);
  for (int t = 0; t < 40; ++t) {
    int rows = r.uniform(1, 7), cols = r.uniform(1, 7);
    SparseMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (r.uniform(0, 2) == 0) m.add(i, j, r.small_rat());
    auto rk = rank_and_kernel(m);
    EXPECT_EQ(rk.rank + static_cast<int>(rk.kernel.size()), cols);
    for (const auto& v : rk.kernel)
      for (const auto& x : m.apply(v)) EXPECT_EQ(x, 0);
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Linalg, SolveConsistentAndNot) {
  SparseMat m(2, 2);
  m.add(0, 0, 1);
  m.add(1, 0, 2);
  auto s = solve(m, {Rat(3), Rat(6)});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(m.apply(*s), (std::vector<Rat>{3, 6}));
  EXPECT_FALSE(solve(m, {Rat(1), Rat(1)}).has_value());
}
