#include <gtest/gtest.h>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

TwistPtr Z1 = zero_twist(1);
const CoeffKind D1 = CoeffKind::TDO(Z1);
const Mono one{};
const Mono e1 = Mono::unit(0);
const Mono e2 = e1 + e1;

WeylOp op(const std::string& s, const TwistPtr& tw = Z1) { return parse_op(s, tw); }

}  // namespace

TEST(DD, WorkedValues) {
  EXPECT_TRUE(d_D(op("x^2 + 1")).is_zero());
  EXPECT_EQ(d_D(op("dx")), Cochain::basis(D1, {e1}, one));
  EXPECT_EQ(d_D(op("dx^2")), Cochain::basis(D1, {e2}, one) + Cochain::basis(D1, {e1}, one, e1, 2));
  // [d^2, g] = g'' + 2 g' d on monomials
  for (int k = 0; k <= 4; ++k) {
    Poly g = parse_poly("x", 1).pow(k);
    WeylOp G = WeylOp::function(Z1, g);
    EXPECT_EQ(eval_polydiff(d_D(op("dx^2")), {g}), op("dx^2") * G - G * op("dx^2"));
  }
}

TEST(Phi, WorkedValues) {
  Cochain pd = phi(op("dx"));
  EXPECT_EQ(pd, Cochain::basis(D1, {e1}, one) + Cochain::basis(D1, {one}, one, e1));
  Cochain pd2 = Cochain::basis(D1, {e2}, one) + Cochain::basis(D1, {e1}, one, e1, 2) + Cochain::basis(D1, {one}, one, e2);
  EXPECT_EQ(phi(op("dx^2")), pd2);
  EXPECT_EQ(diffod_mul(pd, pd), pd2);
  EXPECT_EQ(diffod_mul(one_tensor(op("x")), pd), phi(op("x*dx")));
  EXPECT_EQ(diffod_mul(one_tensor(op("x")), pd), Cochain::basis(D1, {e1}, e1) + Cochain::basis(D1, {one}, e1, e1));
  Cochain a = phi(op("x*dx^2 + 3*dx"));
  EXPECT_EQ(diffod_mul(one_tensor(op("1")), a), a);
}

TEST(Phi, MultiplicativeTwisted) {
  Rng r(1);
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  for (int t = 0; t < 30; ++t) {
    WeylOp p = r.weyl(tw, 3, 2, 3), q = r.weyl(tw, 3, 2, 3);
    EXPECT_EQ(phi(p * q), diffod_mul(phi(p), phi(q)));
    EXPECT_TRUE(hochschild_d(d_D(p)).is_zero());
  }
}

TEST(Psi, WorkedValues) {
  BarChain u = psi(op("1"), op("1"));
  ASSERT_EQ(u.terms().size(), 1u);
  EXPECT_EQ(u.terms().begin()->first.degree(), 0);
  EXPECT_EQ(two_sided_mul(psi(op("dx"), op("1")), psi(op("1"), op("dx")), 8), psi(op("dx"), op("dx")));
  EXPECT_EQ(two_sided_mul(u, psi(op("x*dx"), op("dx^2")), 8), psi(op("x*dx"), op("dx^2")));
}

TEST(Chi, CyclesOnGenerators) {
  for (const char* s : {"x^2 + x", "dx", "dx^2", "x*dx^3"}) EXPECT_TRUE(bar_d(chi(op(s))).is_zero()) << s;
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  for (const char* s : {"dx", "dy", "dx*dy", "x*dy^2"}) EXPECT_TRUE(bar_d(chi(op(s, tw))).is_zero()) << s;
}

// chi(d): the two absorption terms of d(psi phi(d)) cancel against the
// boundary of the length-one word.
TEST(Chi, DerivationCocycleComputation) {
  BarChain c = chi(op("dx"));
  BarChain head = psi_tensor(phi(op("dx")));
  BarChain tail = c - head;
  EXPECT_FALSE(bar_d(head).is_zero());
  EXPECT_EQ(bar_d(head), -bar_d(tail));
  EXPECT_EQ(tail.max_length(), 1);
}

TEST(Chi, MultiplicativeAndUniqueLift) {
  Rng r(2);
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  for (int t = 0; t < 10; ++t) {
    WeylOp p = r.weyl(tw, 2, 2, 2), q = r.weyl(tw, 2, 2, 2);
    EXPECT_EQ(two_sided_mul(chi(p), chi(q), 64), chi(p * q));
    ChiLift cl = chi_lift(p);
    EXPECT_TRUE(cl.solvable);
    EXPECT_TRUE(cl.unique);
    EXPECT_EQ(cl.chain, chi(p));
  }
}

TEST(Psi, RejectsTwistedLeftEnd) {
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  EXPECT_ANY_THROW(psi(op("dx", tw), op("1", tw)));
}

TEST(Window, WeylCountAndCentralizer) {
  EXPECT_EQ(weyl_window_count(1, 1, 0), 2);
  EXPECT_EQ(weyl_window_count(1, 2, 0), 3);
  EXPECT_EQ(weyl_window_count(2, 2, 0), 14);
  EXPECT_EQ(weyl_window_count(1, 2, -1), 2);
  EXPECT_EQ(centralizer_dim(zero_twist(2), 2, 1), 2);
  EXPECT_EQ(centralizer_dim(zero_twist(1), 2, -1), 0);
}

TEST(Window, DiffComplexNoHigherCohomology) {
  for (int w = -2; w <= 2; ++w) {
    DiffCohomology h = diff_complex_cohomology(CoeffKind::TDO(zero_twist(1)), DiffWindow{1, 2, 3, w});
    EXPECT_TRUE(h.d_squared_zero);
    EXPECT_EQ(h.cohomology[0], w >= 0 ? 1 : 0);
    EXPECT_EQ(h.cohomology[1], 0);
    EXPECT_EQ(h.cohomology[2], 0);
  }
  EXPECT_ANY_THROW(diff_complex_cohomology(CoeffKind::O(1), DiffWindow{}));
}
