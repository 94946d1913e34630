#include <gtest/gtest.h>

#include <qlag/qlag.hpp>

using namespace qlag;

namespace {

TwistPtr Z1 = zero_twist(1);
const CoeffKind O1 = CoeffKind::O(1);
const CoeffKind D1 = CoeffKind::TDO(Z1);
const Mono one{};
const Mono e1 = Mono::unit(0);

Poly P(const std::string& s, int n = 1) { return parse_poly(s, n); }
WeylOp op(const std::string& s, const TwistPtr& tw = Z1) { return parse_op(s, tw); }
WeylOp fn(const std::string& s) { return WeylOp::function(Z1, P(s)); }

std::vector<Poly> monos(int deg) {
  std::vector<Poly> out;
  for (const Mono& m : monos_up_to(1, deg)) out.push_back(Poly(1, m));
  return out;
}

}  // namespace

TEST(Eval, WorkedValues) {
  EXPECT_EQ(eval_polydiff(Cochain::basis(O1, {}, e1 + e1), {}), fn("x^2"));
  Cochain id = Cochain::basis(O1, {one}, one);
  for (const auto& g : monos(3)) EXPECT_EQ(eval_polydiff(id, {g}), WeylOp::function(Z1, g));
  // d (x) d with D coefficient: g -> g' d
  Cochain dd = Cochain::basis(D1, {e1}, one, e1);
  EXPECT_EQ(eval_polydiff(dd, {P("x^3")}), op("3*x^2*dx"));
}

TEST(Canonical, MovesFunctionsIntoCoefficient) {
  // x d (x) 1  ->  d (x) x
  Cochain a = to_canonical({RawTensor{{op("x*dx")}, op("1"), 1}}, 1, D1);
  EXPECT_EQ(a, Cochain::basis(D1, {e1}, e1));
  // f (x) p  ->  1 (x) f p
  Cochain b = to_canonical({RawTensor{{op("x^2")}, op("dx"), 1}}, 1, D1);
  EXPECT_EQ(b, Cochain::basis(D1, {one}, e1 + e1, e1));
  // d x (x) 1  ->  d (x) x + 1 (x) 1
  Cochain c = to_canonical({RawTensor{{op("dx*x")}, op("1"), 1}}, 1, D1);
  EXPECT_EQ(c, Cochain::basis(D1, {e1}, e1) + Cochain::basis(D1, {one}, one));
  for (const auto& g : monos(4)) EXPECT_EQ(eval_polydiff(c, {g}), WeylOp::function(Z1, weyl_apply(op("dx*x"), g)));
}

TEST(Hochschild, WorkedValues) {
  Cochain id = Cochain::basis(O1, {one}, one);
  EXPECT_EQ(hochschild_d(id), Cochain::basis(O1, {one, one}, one));
  EXPECT_TRUE(hochschild_d(Cochain::basis(O1, {}, e1 + e1)).is_zero());
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  EXPECT_TRUE(hochschild_d(Cochain::constant(CoeffKind::TDO(tw), WeylOp::function(tw, P("x*y", 2)))).is_zero());
}

TEST(Hochschild, SquareZeroAllKinds) {
  Rng r(1);
  TwistPtr tw = make_twist(parse_one_form("x^2*dy", 2));
  for (const auto& kind : {CoeffKind::O(2), CoeffKind::TDO(zero_twist(2)), CoeffKind::TDO(tw),
                           CoeffKind::TDO_op(zero_twist(2)), CoeffKind::TDO_op(zero_twist(2), true)})
    for (int t = 0; t < 15; ++t) {
      Cochain A = r.cochain(kind, r.uniform(0, 3), 2, 2, 3);
      EXPECT_TRUE(hochschild_d(hochschild_d(A)).is_zero()) << A.str();
    }
}

TEST(Hochschild, AgreesWithEvaluationFormula) {
  Rng r(2);
  for (const auto& kind : {O1, D1, CoeffKind::TDO_op(Z1)})
    for (int t = 0; t < 10; ++t) {
      Cochain A = r.cochain(kind, r.uniform(0, 2), 2, 2, 3);
      Cochain dA = hochschild_d(A);
      for (const auto& g : suite_detail::monomial_tuples(1, A.arity() + 1, 3))
        EXPECT_EQ(eval_polydiff(dA, g), ref::hochschild_d(A, g)) << A.str();
    }
}

TEST(Cup, WorkedValues) {
  Cochain p = Cochain::basis(O1, {}, e1), q = Cochain::basis(O1, {}, e1 + e1);
  EXPECT_EQ(cup(p, q), Cochain::basis(O1, {}, e1 + e1 + e1));
  Cochain id = Cochain::basis(O1, {one}, one);
  for (const auto& g1 : monos(2))
    for (const auto& g2 : monos(2))
      EXPECT_EQ(eval_polydiff(cup(id, id), {g1, g2}), WeylOp::function(Z1, -(g1 * g2)));
  Cochain m = mu_cochain(1);
  EXPECT_EQ(eval_polydiff(cup(m, p), {P("x"), P("x^2")}), fn("x^4"));
}

TEST(Cup, KindMismatch) {
  EXPECT_THROW(cup(Cochain::basis(O1, {one}, one), Cochain::basis(D1, {one}, one)), KindMismatch);
}

TEST(Cup, OppositeCoefficientOrder) {
  CoeffKind Dop = CoeffKind::TDO_op(Z1);
  Cochain a = Cochain::constant(Dop, op("dx")), b = Cochain::constant(Dop, op("x"));
  // x . d computed in D^op is d x in D
  EXPECT_EQ(cup(b, a), Cochain::constant(Dop, op("dx") * op("x")));
}

TEST(Brace, WorkedValues) {
  Rng r(4);
  Cochain A = r.cochain(O1, 2, 2, 2, 3);
  EXPECT_EQ(brace(A, {}), A);
  Cochain m = mu_cochain(1);
  Cochain B = Cochain::basis(O1, {e1}, one);
  // m{B}(a1, a2) = B(a1) a2 + a1 B(a2)
  for (const auto& a1 : monos(2))
    for (const auto& a2 : monos(2))
      EXPECT_EQ(eval_polydiff(brace(m, {B}), {a1, a2}), WeylOp::function(Z1, a1.partial(0) * a2 + a1 * a2.partial(0)));
  Cochain A1 = Cochain::basis(O1, {e1}, one);
  Cochain mb = brace(A1, {m});
  EXPECT_EQ(mb.arity(), 2);
  for (const auto& a1 : monos(2))
    for (const auto& a2 : monos(2))
      EXPECT_EQ(eval_polydiff(mb, {a1, a2}), WeylOp::function(Z1, (a1 * a2).partial(0)));
}

TEST(Brace, TooManyArgumentsIsZero) {
  Cochain A = Cochain::basis(O1, {e1}, one);
  Cochain id = Cochain::basis(O1, {one}, one);
  Cochain z = brace(A, {id, id});
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.arity(), 1);
}

TEST(Brace, ModuleWorkedValues) {
  Cochain B = Cochain::basis(D1, {e1}, one);
  Cochain id = Cochain::basis(O1, {one}, one);
  EXPECT_EQ(brace_module(B, {}), B);
  EXPECT_EQ(brace_module(B, {id}), B);
  EXPECT_TRUE(brace_module(Cochain::constant(D1, op("dx")), {id}).is_zero());
  EXPECT_THROW(brace_module(B, {B}), KindMismatch);
}

TEST(Brace, EvaluationFormulaAndGvRelation) {
  Rng r(6);
  for (int t = 0; t < 20; ++t) {
    Cochain A = r.cochain(O1, r.uniform(1, 3), 2, 2, 2), B = r.cochain(O1, r.uniform(1, 2), 2, 1, 2),
            C = r.cochain(O1, r.uniform(1, 2), 2, 1, 2);
    Cochain br = brace(A, {B});
    EXPECT_EQ(br.arity(), A.arity() + B.arity() - 1);
    if (br.arity() <= 3)
      for (const auto& g : suite_detail::monomial_tuples(1, br.arity(), 2))
        EXPECT_EQ(eval_polydiff(br, g), ref::brace(A, {B}, g));
    Cochain lhs = brace(brace(A, {B}), {C});
    Cochain rhs = brace(A, {brace(B, {C})}) + brace(A, {B, C}) +
                  brace(A, {C, B}) * sign_rat((B.arity() - 1) * (C.arity() - 1));
    EXPECT_EQ(lhs, rhs);
  }
}

// Cup commutator of d-closed cochains is d of a brace.
TEST(Brace, HomotopyWitness) {
  Rng r(8);
  for (int t = 0; t < 10; ++t) {
    int i = r.uniform(1, 2), j = r.uniform(1, 2);
    Cochain A = suite_detail::random_closed(r, 2, i), B = suite_detail::random_closed(r, 2, j);
    ASSERT_TRUE(hochschild_d(A).is_zero());
    ASSERT_TRUE(hochschild_d(B).is_zero());
    Cochain comm = cup(A, B) - cup(B, A) * sign_rat(i * j);
    EXPECT_EQ(hochschild_d(brace(A, {B})), comm * sign_rat(j + 1));
    EXPECT_TRUE(suite_detail::in_image_of_d(comm));
  }
  // Not everything is exact: 1 (x) d is closed but not a coboundary.
  EXPECT_FALSE(suite_detail::in_image_of_d(Cochain::basis(O1, {e1}, one)));
}

TEST(Cup, AssociativeAndLeibniz) {
  Rng r(9);
  for (const auto& kind : {O1, D1, CoeffKind::TDO_op(Z1)})
    for (int t = 0; t < 15; ++t) {
      int i = r.uniform(0, 2), j = r.uniform(0, 2);
      Cochain A = r.cochain(kind, i, 2, 2, 2), B = r.cochain(kind, j, 2, 2, 2), C = r.cochain(kind, 1, 1, 1, 2);
      EXPECT_EQ(cup(cup(A, B), C), cup(A, cup(B, C)));
      EXPECT_EQ(suite_detail::d_std(cup(A, B)),
                cup(suite_detail::d_std(A), B) * sign_rat(j) + cup(A, suite_detail::d_std(B)));
    }
}
