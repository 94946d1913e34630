#include <gtest/gtest.h>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

Poly P(const std::string& s, int n) { return parse_poly(s, n); }
const Mono one{};
const Mono e1 = Mono::unit(0);

}  // namespace

TEST(Forms, WedgeDf) {
  EXPECT_EQ(wedge_df(PolyForm::function(P("1", 1)), P("x^2", 1)), PolyForm::basis(1, e1, 1, 2));
  EXPECT_EQ(wedge_df(PolyForm::basis(2, one, 1), P("x*y", 2)), PolyForm::basis(2, e1, 3, -1));
}

TEST(Forms, TwistedDeRham) {
  PolyForm w = PolyForm::function(P("x^2*y + y", 2));
  EXPECT_EQ(twisted_dr_d(w, P("0", 2)), de_rham_d(w));
  EXPECT_EQ(twisted_dr_d(PolyForm::function(P("1", 1)), P("x^2", 1)), PolyForm::basis(1, e1, 1, 2));
  EXPECT_TRUE(twisted_dr_d(PolyForm::basis(1, e1, 1), P("x^3", 1)).is_zero());
}

TEST(Polyvectors, Contraction) {
  EXPECT_EQ(contract_df(PolyVector::basis(1, one, 1), P("x^2", 1)), PolyVector::function(P("2*x", 1)));
  // left convention: removing d_1 from d_1 ^ d_2 carries sign +
  EXPECT_EQ(contract_df(PolyVector::basis(2, one, 3), P("x", 2)), PolyVector::basis(2, one, 2));
  EXPECT_EQ(contract_df(PolyVector::basis(2, one, 3), P("y", 2)), PolyVector::basis(2, one, 1, -1));
  EXPECT_TRUE(contract_df(PolyVector::basis(2, e1, 3), P("5", 2)).is_zero());
}

TEST(Polyvectors, Divergence) {
  EXPECT_TRUE(bv_delta(PolyVector::basis(1, one, 1)).is_zero());
  EXPECT_EQ(bv_delta(PolyVector::basis(1, e1, 1)), PolyVector::function(P("1", 1)));
  // delta(f d1^d2) = (d1 f) d2 - (d2 f) d1
  Poly f = P("x^2*y + y^3", 2);
  PolyVector v(2);
  for (const auto& [m, c] : f.terms()) v.add_term(AltKey{m, 3}, c);
  PolyVector expect(2);
  Poly fx = f.partial(0), fy = f.partial(1);
  for (const auto& [m, c] : fx.terms()) expect.add_term(AltKey{m, 2}, c);
  for (const auto& [m, c] : fy.terms()) expect.add_term(AltKey{m, 1}, -c);
  EXPECT_EQ(bv_delta(v), expect);
}

TEST(Polyvectors, Transport) {
  EXPECT_EQ(volume_transport(PolyVector::basis(1, one, 1)), PolyForm::function(P("1", 1)));
  EXPECT_EQ(volume_transport(PolyVector::function(P("1", 1))), PolyForm::basis(1, one, 1));
  EXPECT_EQ(volume_transport(PolyVector::basis(2, one, 1)), PolyForm::basis(2, one, 2));
  PolyVector xd = PolyVector::basis(1, e1, 1);
  EXPECT_EQ(volume_transport(bv_delta(xd)), de_rham_d(volume_transport(xd)));
  EXPECT_EQ(de_rham_d(volume_transport(xd)), PolyForm::basis(1, one, 1));
}

TEST(Polyvectors, SquaresAndTransportIdentities) {
  Rng r(1);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 20; ++t) {
      Poly f = r.poly(n, 3, 3);
      PolyVector v(n);
      PolyForm w(n);
      for (int k = 0; k < 3; ++k) {
        auto mask = static_cast<std::uint32_t>(r.uniform(0, (1 << n) - 1));
        v.add_term(AltKey{r.mono(n, 3), mask}, r.small_rat());
        w.add_term(AltKey{r.mono(n, 3), mask}, r.small_rat());
      }
      EXPECT_TRUE(twisted_dr_d(twisted_dr_d(w, f), f).is_zero());
      PolyVector s = contract_df(v, f) + bv_delta(v);
      EXPECT_TRUE((contract_df(s, f) + bv_delta(s)).is_zero());
      EXPECT_EQ(volume_transport(bv_delta(v)), de_rham_d(volume_transport(v)));
      EXPECT_EQ(volume_transport(contract_df(v, f)), wedge_df(volume_transport(v), f));
    }
}

TEST(Polyvectors, PolarizationIsBiderivation) {
  PolyVector a = PolyVector::basis(2, e1 + e1, 1), b = PolyVector::function(P("x*y", 2));
  EXPECT_FALSE(bv_bracket(a, b).is_zero());
  Rng r(2);
  for (int t = 0; t < 30; ++t) {
    auto homog = [&](int k) {
      PolyVector v(3);
      for (int i = 0; i < 2; ++i) {
        std::uint32_t m;
        do m = static_cast<std::uint32_t>(r.uniform(0, 7));
        while (std::popcount(m) != k);
        v.add_term(AltKey{r.mono(3, 2), m}, r.small_rat());
      }
      return v;
    };
    int ka = r.uniform(0, 3), kb = r.uniform(0, 3);
    PolyVector x = homog(ka), y = homog(kb), z = homog(r.uniform(0, 3));
    EXPECT_EQ(bv_bracket(x, wedge(y, z)), wedge(bv_bracket(x, y), z) + wedge(y, bv_bracket(x, z)) * sign_rat(kb * (ka + 1)));
  }
}

TEST(Cohomology, KoszulAndTwisted) {
  auto k = twisted_cohomology_dims(P("x^2", 1), Flavor::Koszul, 8);
  EXPECT_EQ(k[0].dim, 0);
  EXPECT_EQ(k[1].dim, 1);
  auto z = twisted_cohomology_dims(P("0", 2), Flavor::TwistedDR, 6);
  EXPECT_EQ(z[0].dim, 1);
  EXPECT_EQ(z[1].dim, 0);
  EXPECT_EQ(z[2].dim, 0);
  auto c = twisted_cohomology_dims(P("x^3+y^3", 2), Flavor::TwistedDR, 10);
  EXPECT_EQ(c[0].dim, 0);
  EXPECT_EQ(c[1].dim, 0);
  EXPECT_EQ(c[2].dim, 4);
  EXPECT_TRUE(c[2].stable);
}

TEST(Jacobian, Dimensions) {
  EXPECT_EQ(jacobian_ring_dim(P("x^2", 1), 10), 1);
  EXPECT_EQ(jacobian_ring_dim(P("x^3", 1), 10), 2);
  EXPECT_EQ(jacobian_ring_dim(P("x^3+y^3", 2), 10), 4);
  EXPECT_FALSE(jacobian_ring_dim(P("x^2", 2), 10).has_value());
}
