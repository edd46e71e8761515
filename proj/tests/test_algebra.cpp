#include <gtest/gtest.h>

#include <random>

#include "sphgeo/algebra.hpp"

using namespace sphgeo;

namespace {

using PQ = Poly<Rational>;
using RQ = RatFunc<Rational>;

Rational q(long a, long b = 1) { return make_rational(a, b); }

PQ z() { return PQ::x(); }

}  // namespace

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("1/2"), q(1, 2));
  EXPECT_EQ(parse_rational("-6/4"), q(-3, 2));
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("1.5e-2"), q(3, 200));
  EXPECT_EQ(parse_rational("7"), q(7));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::domain_error);
  EXPECT_THROW(parse_rational("0.1x"), std::invalid_argument);
}

TEST(Rational, SquareRoots) {
  EXPECT_EQ(*rational_sqrt(q(9, 4)), q(3, 2));
  EXPECT_FALSE(rational_sqrt(q(2)).has_value());
  EXPECT_FALSE(rational_sqrt(q(-1)).has_value());
}

TEST(Poly, GcdOfCommonFactor) {
  const PQ a = z() * z() - PQ::constant(1);
  const PQ b = z() - PQ::constant(1);
  EXPECT_EQ(gcd(a, b), b);
}

TEST(Poly, DerivativeOfCube) {
  const PQ p = PQ::monomial(1, 3);
  EXPECT_EQ(p.derivative(), PQ::monomial(3, 2));
}

TEST(Poly, RootOfDifferenceOfSquares) {
  const Rational eps = q(3, 10);
  const PQ p = z() * z() - PQ::constant(eps * eps);
  EXPECT_EQ(p.evaluate(eps), 0);
  EXPECT_EQ(p.evaluate(-eps), 0);
}

TEST(Poly, DivmodDegreeAndIdentity) {
  const PQ a({q(1), q(-2), q(0), q(5), q(7)});
  const PQ b({q(3), q(1, 2), q(2)});
  auto [quo, rem] = divmod(a, b);
  EXPECT_LT(rem.degree(), b.degree());
  EXPECT_EQ(quo * b + rem, a);
  EXPECT_THROW(divmod(a, PQ()), std::domain_error);
}

TEST(Poly, MakeMonicKeepsRoots) {
  const PQ p = (z() - PQ::constant(2)) * (z() + PQ::constant(q(1, 3))) * PQ::constant(q(-7, 5));
  const PQ m = make_monic(p);
  EXPECT_EQ(m.leading(), 1);
  EXPECT_EQ(m.evaluate(2), 0);
  EXPECT_EQ(m.evaluate(q(-1, 3)), 0);
  EXPECT_EQ(m.degree(), p.degree());
}

TEST(Poly, DescartesBound) {
  EXPECT_EQ(descartes_bound(PQ({q(1), q(0), q(1)})), 0);
  EXPECT_EQ(descartes_bound(PQ({q(1), q(-3), q(0), q(1)})), 2);
  EXPECT_THROW(descartes_bound(PQ()), std::domain_error);
}

TEST(QuadExt, FieldAxiomsOnRandomElements) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> dist(-20, 20);
  auto field = make_quad_field(q(5, 4) + q(1, 3));
  auto rnd = [&]() {
    return QuadExt(q(dist(rng), 1 + (dist(rng) + 20) % 7), q(dist(rng), 1 + (dist(rng) + 20) % 5), field);
  };
  for (int trial = 0; trial < 200; ++trial) {
    const QuadExt x = rnd(), y = rnd(), w = rnd();
    EXPECT_EQ((x * y) * w, x * (y * w));
    EXPECT_EQ(x * (y + w), x * y + x * w);
    EXPECT_EQ(x + y, y + x);
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inverse(), QuadExt(1));
    }
  }
}

TEST(QuadExt, SignAndCollapse) {
  auto f2 = make_quad_field(q(2));
  const QuadExt s = QuadExt::root(f2);
  EXPECT_EQ(s * s, QuadExt(2));
  EXPECT_TRUE((s * s).is_rational());
  EXPECT_EQ((QuadExt(q(1)) - s).sign(), -1);
  EXPECT_EQ((QuadExt(q(3, 2)) - s).sign(), 1);
  auto f9 = make_quad_field(q(9, 4));
  EXPECT_TRUE(QuadExt::root(f9).is_rational());
  EXPECT_EQ(QuadExt::root(f9), QuadExt(q(3, 2)));
  auto f3 = make_quad_field(q(3));
  EXPECT_THROW(QuadExt::root(f2) + QuadExt::root(f3), std::domain_error);
}

TEST(RatFunc, ReducedWithMonicDenominator) {
  const RQ f(z() * z() - PQ::constant(1), (z() - PQ::constant(1)) * PQ::constant(3));
  EXPECT_EQ(f.den(), PQ::constant(1));
  EXPECT_EQ(f.num(), (z() + PQ::constant(1)) * PQ::constant(q(1, 3)));
  const RQ g = RQ(PQ::constant(1), z()) + RQ(PQ::constant(-1), z());
  EXPECT_TRUE(g.is_zero());
  EXPECT_THROW(RQ(PQ::constant(1), PQ()), std::domain_error);
}

TEST(PartialFractions, ConstructedExample) {
  const PQ zm1 = z() - PQ::constant(1), zp1 = z() + PQ::constant(1);
  const RQ f = RQ(PQ::constant(1), zm1 * zm1) + RQ(PQ::constant(2), zm1) - RQ(PQ::constant(2), zp1);
  const auto pf = partial_fractions<Rational>(f, {q(1), q(-1)});
  EXPECT_EQ(pf.beta, (std::vector<Rational>{q(1), q(0)}));
  EXPECT_EQ(pf.delta, (std::vector<Rational>{q(2), q(-2)}));
  EXPECT_TRUE(pf.regular_at_infinity);
  EXPECT_EQ(pf.beta_inf, q(1) + q(2) + q(2));
}

TEST(PartialFractions, Errors) {
  const PQ zm1 = z() - PQ::constant(1);
  EXPECT_THROW(partial_fractions<Rational>(RQ(PQ::constant(1), zm1 * zm1 * zm1), {q(1)}), NonFuchsianError);
  EXPECT_THROW(partial_fractions<Rational>(RQ(PQ::constant(1), zm1 * z()), {q(1)}), NonFuchsianError);
  const auto pf = partial_fractions<Rational>(RQ(PQ::constant(1), zm1), {q(1)});
  EXPECT_FALSE(pf.regular_at_infinity);
}

TEST(PartialFractions, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(-9, 9);
  auto field = make_quad_field(q(7, 3));
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<QuadExt> poles = {QuadExt(q(dist(rng), 2)), QuadExt(q(1), q(1), field), QuadExt(q(1), q(-1), field),
                                  QuadExt(q(11, 3))};
    if (poles[0] == poles[3]) poles[0] = QuadExt(q(17));
    std::vector<QuadExt> beta, delta;
    QuadExt sum;
    for (std::size_t j = 0; j < poles.size(); ++j) {
      beta.push_back(QuadExt(q(dist(rng), 16)));
      if (j + 1 < poles.size()) {
        delta.push_back(QuadExt(q(dist(rng), 3), q(dist(rng), 5), field));
        sum += delta.back();
      } else {
        delta.push_back(-sum);
      }
    }
    const auto f = reconstruct(poles, beta, delta);
    const auto pf = partial_fractions(f, poles);
    EXPECT_EQ(pf.beta, beta);
    EXPECT_EQ(pf.delta, delta);
    EXPECT_TRUE(pf.regular_at_infinity);
    EXPECT_EQ(reconstruct(poles, pf.beta, pf.delta), f);
  }
}

TEST(IncrementalSolver, DetectsInconsistencyEarly) {
  IncrementalSolver<Rational> s(2);
  EXPECT_TRUE(s.add({q(1), q(1)}, q(3)));
  EXPECT_TRUE(s.add({q(1), q(-1)}, q(1)));
  EXPECT_TRUE(s.add({q(2), q(0)}, q(4)));
  EXPECT_EQ(*s.solution(), (std::vector<Rational>{q(2), q(1)}));
  EXPECT_FALSE(s.add({q(0), q(1)}, q(5)));
  EXPECT_FALSE(s.solution().has_value());
}
