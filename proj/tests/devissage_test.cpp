#include <gtest/gtest.h>

#include <functional>

#include "hkt/devissage/devissage.hpp"
#include "hkt/error.hpp"
#include "hkt/modforms/duality.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;
using namespace hkt::devissage;
using linalg::FpMatrix;
using rings::FiniteRing;

namespace {

FiniteRingPtr ring(const std::string& d) { return FiniteRing::from(rings::parse_descriptor(d)); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

// F_3[x, y]/(x, y)^2: local with a two-dimensional socle, not a chain ring.
FiniteRingPtr square_zero_plane() {
  FpMatrix x(3, 3, 3), y(3, 3, 3);
  x.set(1, 0, 1);
  y.set(2, 0, 1);
  return std::make_shared<const FiniteRing>(3, std::vector<FpMatrix>{FpMatrix::identity(3, 3), x, y},
                                            linalg::FpVec{1, 0, 0}, FpMatrix::identity(3, 3),
                                            std::vector<std::string>{"1", "x", "y"});
}

}  // namespace

TEST(Setup, GorensteinDetection) {
  EXPECT_TRUE(is_gorenstein(ring("GF(3)")));
  EXPECT_TRUE(is_gorenstein(ring("GF(3)[t]/(t^3)")));
  EXPECT_TRUE(is_gorenstein(ring("GF(9), sigma=frobenius")));
  // rings that are not products of chain rings are refused before any socle test
  EXPECT_EQ(code_of([] { square_zero_plane(); }), Errc::Unsupported);
  EXPECT_EQ(code_of([] { local_setup(ring("GF(3)xGF(3), sigma=swap")); }), Errc::NotLocal);
}

TEST(Map, SocleValuedRankOne) {
  for (std::string d : {"GF(3)[t]/(t^2)", "GF(3)[t]/(t^2), sigma: t -> -t"}) {
    auto s = local_setup(ring(d));
    int eps = s.ring->sigma_is_identity() ? 1 : -1;  // sigma(t) = -t makes the socle anti-invariant
    auto g = s.flat.invariant_generator(eps);
    ASSERT_TRUE(g) << d;
    auto f = modforms::diagonal_form(s.pi.target, s.flat.coefficient, {*g}, eps);
    auto t = devissage_map(s, f);
    EXPECT_EQ(t.length(), 1);
    EXPECT_TRUE(t.is_nondegenerate());
    // the value b(1, 1) lies in the socle
    EXPECT_EQ(s.ring->mul(t.entry(0, 0), *s.ring->parse("t")), 0u) << d;
    EXPECT_NE(t.entry(0, 0), 0u);
  }
}

TEST(Map, FieldIsIdentity) {
  auto s = local_setup(ring("GF(9), sigma=frobenius"));
  auto g = *s.flat.invariant_generator(1);
  auto f = modforms::diagonal_form(s.pi.target, s.flat.coefficient, {g, g}, 1);
  auto t = devissage_map(s, f);
  EXPECT_EQ(t.rank(), 2u);
  EXPECT_EQ(t.entry(0, 0), s.flat.evaluate_at_one(g));
  EXPECT_EQ(t.entry(0, 1), 0u);
}

TEST(Map, SumsAndMetabolics) {
  auto s = local_setup(ring("GF(3)[t]/(t^3)"));
  auto c = s.flat.coefficient;
  auto g = *s.flat.invariant_generator(1);
  auto x = modforms::diagonal_form(s.pi.target, c, {g}, 1);
  auto y = modforms::diagonal_form(s.pi.target, c, {c->neg(g)}, 1);
  auto lhs = devissage_map(s, modforms::orthogonal_sum(x, y));
  auto rhs = modforms::orthogonal_sum(devissage_map(s, x), devissage_map(s, y));
  EXPECT_TRUE(modforms::isometric(lhs, rhs));
  EXPECT_TRUE(modforms::is_metabolic(lhs));
  EXPECT_FALSE(modforms::is_metabolic(devissage_map(s, x)));
}

TEST(ClassMap, DetectsNonInjective) {
  // Z/2 -> 0 and 0 -> Z/2
  PresentationData z2{{2}, {{0}, {1}}, {2}};
  PresentationData zero{{}, {{}}, {}};
  auto a = check_class_map(z2, zero, {0, 0});
  EXPECT_TRUE(a.well_defined);
  EXPECT_TRUE(a.surjective);
  EXPECT_FALSE(a.injective);
  auto b = check_class_map(zero, z2, {0});
  EXPECT_TRUE(b.injective);
  EXPECT_FALSE(b.surjective);
  // Z/4 -> Z/2 sending the generator to 1 is well defined but not injective
  PresentationData z4{{4}, {{0}, {1}, {2}, {3}}, {4}};
  auto c = check_class_map(z4, z2, {0, 1, 0, 1});
  EXPECT_TRUE(c.well_defined);
  EXPECT_FALSE(c.injective);
  // Z/2 -> Z/4, 1 -> 1 is not a homomorphism
  auto d = check_class_map(z2, z4, {0, 1});
  EXPECT_FALSE(d.well_defined);
  auto e = check_class_map(z4, z4, {0, 3, 2, 1});
  EXPECT_TRUE(e.isomorphism());
  EXPECT_EQ(e.matrix, (linalg::IntMatrix{{3}}));
}

TEST(Verify, Field) {
  auto r = verify_devissage(ring("GF(3)"), 1, 3);
  EXPECT_TRUE(r.map.isomorphism()) << r.to_text();
  EXPECT_EQ(r.source.group_string(), r.target.group_string());
}

TEST(Verify, DualNumbers) {
  for (std::string d : {"GF(3)[t]/(t^2)", "GF(3)[t]/(t^2), sigma: t -> -t"}) {
    auto r = verify_devissage(ring(d), 1, 4);
    EXPECT_EQ(r.verdict(), "ISOMORPHISM (stable)") << d << "\n" << r.to_text();
  }
}

TEST(Verify, CubeTruncation) {
  for (std::string d : {"GF(3)[t]/(t^3)", "GF(3)[t]/(t^3), sigma: t -> -t"}) {
    auto r = verify_devissage(ring(d), 1, 3);
    EXPECT_EQ(r.verdict(), "ISOMORPHISM (stable)") << d << "\n" << r.to_text();
  }
}

TEST(Verify, SkewForms) {
  auto r = verify_devissage(ring("GF(3)[t]/(t^2), sigma: t -> -t"), -1, 4);
  EXPECT_TRUE(r.map.isomorphism()) << r.to_text();
}

TEST(Factorization, CubeOverSquare) {
  for (std::string d : {"GF(3)[t]/(t^3)", "GF(3)[t]/(t^3), sigma: t -> -t"}) {
    auto a = ring(d);
    auto r = verify_localcase_factorization(a, {*a->parse("t^2")}, 1, 3);
    EXPECT_TRUE(r.verified()) << d << "\n" << r.to_text();
    EXPECT_GT(r.classes_checked, 0u);
  }
}

TEST(Factorization, TrivialIdeals) {
  auto a = ring("GF(3)[t]/(t^2)");
  auto zero = verify_localcase_factorization(a, {}, 1, 3);
  EXPECT_TRUE(zero.verified()) << zero.to_text();
  for (std::size_t c = 0; c < zero.p_class_map.size(); ++c) EXPECT_EQ(zero.p_class_map[c], c);
  auto max = verify_localcase_factorization(a, {*a->parse("t")}, 1, 3);
  EXPECT_TRUE(max.verified()) << max.to_text();
}
