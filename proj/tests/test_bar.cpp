#include <gtest/gtest.h>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

const CoeffKind O1 = CoeffKind::O(1);
const Mono one{};
const Mono e1 = Mono::unit(0);

Cochain letter(int arity_slots_order) {
  std::vector<Mono> s(arity_slots_order, e1);
  return Cochain::basis(O1, s, one);
}

BarChain unit_word(int n) {
  BarChain u(BarSpace::plain(n));
  u.add_term(BarKey{}, 1);
  return u;
}

}  // namespace

TEST(Bar, SingleLetterIsInternalDifferential) {
  Rng r(1);
  for (int t = 0; t < 10; ++t) {
    Cochain a = r.cochain(O1, r.uniform(1, 3), 2, 2, 2);
    EXPECT_EQ(bar_d(word(1, {a})), word(1, {hochschild_d(a) * sign_rat(a.arity() - 1)}));
  }
}

TEST(Bar, LengthZeroTwoSidedWord) {
  TwistPtr tw = zero_twist(1);
  BarSpace sp = BarSpace::two_sided(tw);
  Cochain n = Cochain::constant(sp.n_kind(), parse_op("dx", tw));
  Cochain m = Cochain::constant(sp.m_kind(), parse_op("dx^2", tw));
  BarChain w = two_sided(sp, n, {}, m);
  // The right end moves past n, of shifted degree -1.
  BarChain expect = two_sided(sp, hochschild_d(n), {}, m) - two_sided(sp, n, {}, hochschild_d(m));
  EXPECT_EQ(bar_d(w), expect) << bar_d(w).str() << " vs " << expect.str();
}

// (a)(b) = (a|b) + (-1)^{|a||b|} (b|a) + (a{b}) for single letters.
TEST(Bar, ProductOfLettersFromCorestriction) {
  Rng r(2);
  for (int t = 0; t < 20; ++t) {
    Cochain a = r.cochain(O1, r.uniform(1, 3), 2, 2, 2), b = r.cochain(O1, r.uniform(1, 3), 2, 2, 2);
    BarChain expect = word(1, {a, b}) + word(1, {b, a}) * sign_rat((a.arity() - 1) * (b.arity() - 1)) +
                      word(1, {brace(a, {b})});
    EXPECT_EQ(gv_mul(word(1, {a}), word(1, {b}), 3), expect);
  }
}

TEST(Bar, UnitAndAssociativity) {
  Rng r(3);
  for (int t = 0; t < 20; ++t) {
    Cochain a = r.cochain(O1, r.uniform(1, 2), 2, 1, 2), b = r.cochain(O1, r.uniform(1, 2), 2, 1, 2),
            c = r.cochain(O1, r.uniform(1, 2), 2, 1, 2);
    BarChain A = word(1, {a}), B = word(1, {b}), C = word(1, {c});
    EXPECT_EQ(gv_mul(unit_word(1), A, 3), A);
    EXPECT_EQ(gv_mul(gv_mul(A, B, 3), C, 3), gv_mul(A, gv_mul(B, C, 3), 3));
  }
}

TEST(Bar, OverflowIsSignalled) {
  BarChain a = word(1, {letter(1)});
  BarChain aa = gv_mul(a, a, 2);
  EXPECT_EQ(aa.max_length(), 2);
  EXPECT_THROW(gv_mul(aa, a, 2), TruncationOverflow);
}

TEST(Bar, DifferentialIsAdjointOfMu) {
  Rng r(4);
  BarChain mu = word(2, {mu_cochain(2)});
  for (int t = 0; t < 15; ++t) {
    BarChain u = suite_detail::single_term(suite_detail::random_plain_word(r, 2, r.uniform(1, 2), 2));
    int du = plain_degree(u.terms().begin()->first);
    EXPECT_TRUE(bar_d(bar_d(u)).is_zero());
    EXPECT_EQ(bar_d(u), gv_mul(mu, u, 8) - gv_mul(u, mu, 8) * sign_rat(du));
  }
}

TEST(Bar, TwoSidedSquareZero) {
  Rng r(5);
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  BarSpace sp = BarSpace::two_sided(tw);
  for (int t = 0; t < 20; ++t) {
    Cochain n = r.cochain(sp.n_kind(), r.uniform(0, 1), 2, 0, 2), m = r.cochain(sp.m_kind(), r.uniform(0, 1), 2, 2, 2);
    std::vector<Cochain> ls;
    for (int l = r.uniform(0, 2); l > 0; --l) ls.push_back(r.cochain(CoeffKind::O(2), r.uniform(1, 2), 2, 1, 2));
    BarChain w = two_sided(sp, n, ls, m);
    EXPECT_TRUE(bar_d(bar_d(w)).is_zero()) << w.str();
  }
}

TEST(Bar, SmallWindowCohomology) {
  ComplexData cd = two_sided_build(BarWindow{1, 1, 2, 2, 0}, zero_twist(1));
  EXPECT_TRUE(cd.d_squared_zero);
  EXPECT_TRUE(cd.closed);
  EXPECT_EQ(cd.basis[0].size(), 4u);
  EXPECT_EQ(cd.basis[1].size(), 2u);
  EXPECT_EQ(cd.cohomology[0], 2);
  EXPECT_EQ(cd.cohomology[1], 0);
}

TEST(Bar, WindowDimensionsAtOrderThree) {
  ComplexData cd = two_sided_build(BarWindow{1, 3, 3, 3, 0}, zero_twist(1));
  std::vector<int> dims, hs;
  for (const auto& [deg, ks] : cd.basis) {
    dims.push_back(static_cast<int>(ks.size()));
    hs.push_back(cd.cohomology[deg]);
  }
  EXPECT_EQ(dims, (std::vector<int>{26, 39, 21, 4}));
  EXPECT_EQ(hs, (std::vector<int>{4, 0, 0, 0}));
}
