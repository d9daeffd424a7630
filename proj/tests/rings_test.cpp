#include <gtest/gtest.h>

#include "hkt/error.hpp"
#include "hkt/linalg/integer.hpp"
#include "hkt/rings/finite_ring.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;
using namespace hkt::rings;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

}  // namespace

TEST(RingArithmetic, DualNumbersProduct) {
  Ring r = parse_ring("GF(3)[t]/(t^2)");
  Element t = r.gen("t");
  EXPECT_EQ((r.one() + t) * (r.one() - t), r.one());
  EXPECT_EQ(code_of([&] { t.inverse(); }), Errc::NotAUnit);
  EXPECT_EQ((r.one() + t).inverse(), r.one() - t);
}

TEST(RingArithmetic, GaussianIntegers) {
  Ring r = parse_ring("Q(i)");
  Element i = r.gen("i");
  EXPECT_EQ((r.one() + i) * (r.one() - i), r.scalar(2));
  EXPECT_EQ((r.one() + i).inverse() * (r.one() + i), r.one());
  EXPECT_EQ(parse_element(r, "(1+i)^2").to_string(), "2*i");
}

TEST(RingArithmetic, NormalFormsAreCanonical) {
  Ring r = parse_ring("GF(9)");
  Element u = r.gen("u");
  EXPECT_EQ(u * u, -r.one());
  EXPECT_EQ(u.pow(3), -u);
  Ring s = parse_ring("GF(3)[u]/(u^2+1)");
  EXPECT_EQ(r, s);
  EXPECT_TRUE(s.is_field());
  Ring q = parse_ring("Q[X,Y]");
  EXPECT_EQ(parse_element(q, "(X-Y)*(X+Y)"), parse_element(q, "X^2-Y^2"));
  EXPECT_EQ(parse_element(q, "X-Y").to_string(), "X-Y");
}

TEST(RingArithmetic, PolynomialUnits) {
  Ring r = parse_ring("GF(3)[t]/(t^2)[X]");
  Element x = parse_element(r, "1 + t*X");
  EXPECT_EQ(x * x.inverse(), r.one());
  EXPECT_FALSE(parse_element(r, "1 + X").is_unit());
}

TEST(RingArithmetic, CharacteristicTwoRejected) {
  EXPECT_EQ(code_of([] { parse_ring("GF(2)"); }), Errc::CharacteristicTwo);
  EXPECT_EQ(code_of([] { parse_ring("GF(4)[t]"); }), Errc::CharacteristicTwo);
}

TEST(Involution, FrobeniusOnF9) {
  auto r = parse_descriptor("GF(9)/GF(3), sigma=frobenius");
  Element u = r.ring().gen("u");
  EXPECT_EQ(r.apply(u), -u);
  auto s = parse_descriptor("GF(9) with sigma: u -> -u");
  EXPECT_EQ(s.apply(u), r.apply(u));
  EXPECT_EQ(sample_involution_properties(r, 7, 1000), 0);
}

TEST(Involution, SignInvolutionOnPolynomials) {
  auto r = parse_descriptor("Q[t] with sigma: t -> -t");
  EXPECT_EQ(r.apply(parse_element(r.ring(), "t^3+t^2")), parse_element(r.ring(), "-t^3+t^2"));
  EXPECT_EQ(sample_involution_properties(r, 11, 1000), 0);
}

TEST(Involution, Rejections) {
  EXPECT_EQ(code_of([] { parse_descriptor("Q[X,Y], sigma: X -> X, Y -> X"); }), Errc::NotInvolutive);
  EXPECT_EQ(code_of([] { parse_descriptor("GF(3)[t]/(t^2), sigma: t -> 1+t"); }), Errc::NotAHomomorphism);
  EXPECT_EQ(code_of([] { parse_descriptor("GF(9), sigma: u -> u+1"); }), Errc::NotAHomomorphism);
}

TEST(Involution, ProductSwap) {
  auto r = parse_descriptor("GF(3)xGF(3), sigma=swap");
  Element e = r.ring().gen("e");
  EXPECT_EQ(r.apply(e), r.ring().one() - e);
  EXPECT_EQ(e * e, e);
}

TEST(Involution, EquivariantMaps) {
  auto a = parse_descriptor("Q[s], sigma: s -> -s");
  auto b = parse_descriptor("Q[v,t], sigma: t -> -t");
  RingMap mu = parse_ring_map(a.ring(), b.ring(), "s -> v*t");
  EXPECT_TRUE(check_equivariant_map(mu, a, b));
  auto q = parse_descriptor("Q");
  auto src = parse_descriptor("Q[t], sigma: t -> -t");
  RingMap pt(src.ring(), q.ring(), {q.ring().zero()});
  EXPECT_TRUE(check_equivariant_map(pt, src, q));
  RingMap ev1(src.ring(), q.ring(), {q.ring().one()});
  EXPECT_FALSE(check_equivariant_map(ev1, src, q));
  EXPECT_TRUE(check_equivariant_map(RingMap::identity(a.ring()), a, a));
  EXPECT_EQ(code_of([&] { check_equivariant_map(mu, b, a); }), Errc::DomainMismatch);
}

TEST(Involution, IsoPair) {
  Ring r = parse_ring("Q[X,Y]");
  RingMap sw = parse_ring_map(r, r, "X -> Y, Y -> X");
  EXPECT_NO_THROW(RingIsoPair::make(sw, sw));
  RingMap bad = parse_ring_map(r, r, "X -> 2*X");
  EXPECT_EQ(code_of([&] { RingIsoPair::make(bad, bad); }), Errc::IncompatibleTwistData);
}

TEST(Parser, ErrorsCarryPosition) {
  try {
    parse_ring("GF(3)[t]/(t^2 + s)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 17);
  }
  try {
    parse_descriptor("GF(3),\n  sigma=bogus");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(FiniteRing, ChainStructure) {
  auto a = FiniteRing::from(parse_descriptor("GF(3)[t]/(t^3), sigma: t -> -t"));
  ASSERT_TRUE(a->is_local());
  EXPECT_EQ(a->factors()[0].length, 3);
  EXPECT_EQ(a->factors()[0].residue_dim, 1);
  EXPECT_EQ(socle(*a).size(), 1u);
  auto k = residue_field(a);
  EXPECT_EQ(k.target->size(), 3u);
  auto prod = FiniteRing::from(parse_descriptor("GF(3)xGF(3), sigma=swap"));
  EXPECT_EQ(prod->factors().size(), 2u);
  auto f9 = FiniteRing::from(parse_descriptor("GF(9), sigma=frobenius"));
  EXPECT_EQ(f9->factors()[0].residue_dim, 2);
  EXPECT_EQ(f9->units().size(), 8u);
}

TEST(FiniteRing, QuotientTower) {
  auto a = FiniteRing::from(parse_descriptor("GF(3)[t]/(t^3)"));
  Code t = *a->parse("t");
  auto p = quotient(a, {a->mul(t, t)});
  EXPECT_EQ(p.target->size(), 9u);
  EXPECT_EQ(p.target->factors()[0].length, 2);
  EXPECT_TRUE(p.is_equivariant());
}

TEST(IntegerLattice, SmithOfSmallMatrix) {
  linalg::IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = linalg::smith_normal_form(m, 3);
  EXPECT_EQ(s.diagonal, (linalg::IntVec{2, 6, 12}));
  auto uav = linalg::int_mul(linalg::int_mul(s.U, m, 3), s.V, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(uav[i][j], i == j ? s.diagonal[i] : 0);
  auto vv = linalg::int_mul(s.V, s.Vinv, 3);
  EXPECT_EQ(vv, linalg::int_identity(3));
}
