#include <gtest/gtest.h>

#include <functional>

#include "hkt/error.hpp"
#include "hkt/modforms/duality.hpp"
#include "hkt/rings/parse.hpp"
#include "hkt/transfer/transfer.hpp"

using namespace hkt;
using namespace hkt::transfer;
using linalg::FpVec;
using modforms::DualityCoefficient;
using rings::FiniteRing;
using rings::FiniteRingPtr;

namespace {

FiniteRingPtr ring(const std::string& d) { return FiniteRing::from(rings::parse_descriptor(d)); }

FiniteRingMap inclusion(const FiniteRingPtr& r, const FiniteRingPtr& s) {
  auto m = rings::parse_ring_map(r->symbolic()->ring(), s->symbolic()->ring(), "");
  return FiniteRingMap::from_symbolic(m, r, s);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

struct F9 {
  FiniteRingPtr k = ring("GF(3)");
  FiniteRingPtr s = ring("GF(9), sigma=frobenius");
  FlatCoefficient flat = flat_coefficient(inclusion(k, s), DualityCoefficient::standard(k));
  Code lambda = *flat.invariant_generator();
};

}  // namespace

TEST(Flat, FieldExtension) {
  F9 f;
  EXPECT_EQ(f.flat.coefficient->module().dim, 2u);
  EXPECT_EQ(f.flat.coefficient->size(), 9u);  // free of rank 1 over F_9
  EXPECT_FALSE(f.flat.coefficient->is_regular());
}

TEST(Flat, IdentityIsEvaluation) {
  auto a = ring("GF(3)[t]/(t^2), sigma: t -> -t");
  auto flat = flat_coefficient(FiniteRingMap::identity(a), DualityCoefficient::standard(a));
  auto iso = evaluation_iso(flat);
  EXPECT_EQ(iso.matrix.rows(), 2u);
}

TEST(Flat, QuotientGivesSocle) {
  auto a = ring("GF(3)[t]/(t^2)");
  auto flat = flat_coefficient(rings::residue_field(a), DualityCoefficient::standard(a));
  EXPECT_EQ(flat.coefficient->module().dim, 1u);
  // the unique nonzero values at 1 are multiples of t
  Code v = flat.evaluate_at_one(1);
  EXPECT_EQ(a->name(v).find('t') != std::string::npos, true) << a->name(v);
}

TEST(Flat, Errors) {
  auto a = ring("GF(3)[t]/(t^2)");
  auto b = ring("GF(3)[t]/(t^2), sigma: t -> -t");
  auto c = DualityCoefficient::standard(a);
  EXPECT_EQ(code_of([&] { flat_coefficient(FiniteRingMap::make(a, b, linalg::FpMatrix::identity(3, 2)), c); }),
            Errc::NotEquivariant);
  EXPECT_EQ(code_of([&] { flat_coefficient(FiniteRingMap::identity(a), c, {0}); }), Errc::NotFinite);
  F9 f;
  auto plain = modforms::diagonal_form(f.s, DualityCoefficient::standard(f.s), {1}, 1);
  EXPECT_EQ(code_of([&] { transfer_form(f.flat, plain); }), Errc::CoefficientMismatch);
}

TEST(Transfer, TraceFormOverF3) {
  F9 f;
  auto one = modforms::diagonal_form(f.s, f.flat.coefficient, {f.lambda}, 1);
  auto t = transfer_form(f.flat, one);
  EXPECT_EQ(t.rank(), 2u);
  EXPECT_TRUE(t.is_nondegenerate());
  // b(x, y) = lambda(sigma(x) y) on the chosen generators
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(t.entry(i, j), t.entry(j, i));
}

TEST(Transfer, CarriesLagrangians) {
  F9 f;
  auto hyp = modforms::make_form(modforms::FLModule(f.s, {{0, 1}, {0, 1}}), f.flat.coefficient,
                                 std::vector<Code>{0, f.lambda, f.lambda, 0}, 1);
  auto lag = modforms::find_lagrangian(hyp);
  ASSERT_TRUE(lag);
  auto t = hkt::transfer::transfer(f.flat, hyp);
  std::vector<modforms::FLModule::Elem> carried;
  for (const auto& x : *lag) {
    carried.push_back(t.carry(x));
    // R-span of the image of an S-generator also needs the S-multiples
    for (std::size_t j = 0; j < f.s->dim(); ++j) carried.push_back(t.carry(hyp.module().act(f.s->basis(j), x)));
  }
  EXPECT_TRUE(modforms::is_lagrangian(t.form, carried));
  EXPECT_TRUE(modforms::is_metabolic(t.form));
}

TEST(Transfer, OrthogonalSums) {
  F9 f;
  std::vector<HermitianForm> forms;
  for (Code a : {f.lambda, f.flat.coefficient->neg(f.lambda)})
    forms.push_back(modforms::diagonal_form(f.s, f.flat.coefficient, {a}, 1));
  for (const auto& x : forms)
    for (const auto& y : forms) {
      auto lhs = transfer_form(f.flat, modforms::orthogonal_sum(x, y));
      auto rhs = modforms::orthogonal_sum(transfer_form(f.flat, x), transfer_form(f.flat, y));
      EXPECT_TRUE(modforms::isometric(lhs, rhs));
    }
}

TEST(Transfer, EtaIntertwinesAdjoints) {
  auto a = ring("GF(3)[t]/(t^2), sigma: t -> -t");
  auto flat = flat_coefficient(rings::residue_field(a), DualityCoefficient::standard(a));
  auto k = flat.pi.target;
  // sigma_I acts by -1 on the socle, so the form is skew over k
  EXPECT_FALSE(flat.invariant_generator(1));
  Code g = *flat.invariant_generator(-1);
  auto f = modforms::diagonal_form(k, flat.coefficient, {g, g}, -1);
  auto m = f.module().as_module();
  auto e = eta(flat, m);
  ASSERT_TRUE(linalg::inverse(e));
  auto ds = modforms::dual_module(m, *flat.coefficient);
  auto dr = modforms::dual_module(restrict_module(m, flat.pi), *flat.base);
  const auto& mod = f.module();
  for (std::size_t y = 0; y < m.dim; ++y) {
    FpVec ey(m.dim, 0);
    ey[y] = 1;
    std::vector<FpVec> cs, cr;
    for (std::size_t x = 0; x < m.dim; ++x) {
      FpVec ex(m.dim, 0);
      ex[x] = 1;
      Code v = f.eval(mod.from_fp(ex), mod.from_fp(ey));
      cs.push_back(flat.coefficient->vec(v));
      cr.push_back(flat.base->vec(flat.evaluate_at_one(v)));
    }
    auto adj_s = modforms::hom_coords(ds.basis, linalg::FpMatrix::from_columns(3, flat.coefficient->module().dim, cs));
    auto adj_r = modforms::hom_coords(dr.basis, linalg::FpMatrix::from_columns(3, flat.base->module().dim, cr));
    EXPECT_EQ(e.apply(adj_s), adj_r);
  }
}

TEST(Gamma, TowerBijective) {
  for (std::string d : {"GF(3)[t]/(t^3)", "GF(3)[t]/(t^3), sigma: t -> -t"}) {
    auto a = ring(d);
    auto p = rings::quotient(a, {*a->parse("t^2")});
    auto q = rings::residue_field(p.target);
    auto g = compose_flats_gamma(p, q, DualityCoefficient::standard(a));
    EXPECT_EQ(g.iso.matrix.rows(), 1u);
    EXPECT_EQ(g.iso.matrix.cols(), 1u);
  }
}

TEST(Gamma, ZeroIdealIsEvaluation) {
  auto a = ring("GF(3)[t]/(t^2)");
  auto q = rings::residue_field(a);
  auto g = compose_flats_gamma(FiniteRingMap::identity(a), q, DualityCoefficient::standard(a));
  // gamma(f)(x) = f(x)(1) agrees with the evaluation of the inner coefficient
  for (Code f = 0; f < g.outer.coefficient->size(); ++f) {
    auto lhs = g.direct.map_of(g.iso(f));
    auto rhs = g.inner.evaluation() * g.outer.map_of(f);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Gamma, TransferSquareCommutes) {
  auto a = ring("GF(3)[t]/(t^3), sigma: t -> -t");
  auto p = rings::quotient(a, {*a->parse("t^2")});
  auto q = rings::residue_field(p.target);
  auto g = compose_flats_gamma(p, q, DualityCoefficient::standard(a));
  auto k = q.target;
  const auto& c = g.outer.coefficient;
  for (Code x = 1; x < c->size(); ++x) {
    if (c->inv(x) != x) continue;
    for (Code y = 1; y < c->size(); ++y) {
      if (c->inv(y) != y) continue;
      auto f = modforms::diagonal_form(k, c, {x, y}, 1);
      auto two_step = transfer_form(g.inner, transfer_form(g.outer, f));
      auto direct = transfer_form(g.direct, modforms::coefficient_change(g.iso, f));
      EXPECT_TRUE(modforms::isometric(two_step, direct));
    }
  }
}
