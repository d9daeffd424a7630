#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "hkt/error.hpp"
#include "hkt/modforms/duality.hpp"
#include "hkt/modforms/witt.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;
using namespace hkt::modforms;
using rings::parse_descriptor;

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

FiniteRingPtr ring(const std::string& d) { return FiniteRing::from(parse_descriptor(d)); }

Code el(const FiniteRingPtr& a, const std::string& s) { return *a->parse(s); }

HermitianForm diag(const FiniteRingPtr& a, std::vector<std::string> d, int eps = 1) {
  std::vector<Code> c;
  for (auto& s : d) c.push_back(el(a, s));
  return diagonal_form(a, DualityCoefficient::standard(a), c, eps);
}

HermitianForm gram_form(const FiniteRingPtr& a, std::vector<CyclicType> shape, std::vector<std::vector<std::string>> g,
                        int eps = 1) {
  return make_form(FLModule(a, shape), DualityCoefficient::standard(a), g, eps);
}

}  // namespace

TEST(Modules, DecomposeRecoversShape) {
  auto a = ring("GF(3)[t]/(t^3)");
  FLModule m(a, {{0, 3}, {0, 1}, {0, 1}});
  auto pieces = decompose(m.as_module());
  ASSERT_EQ(pieces.size(), 3u);
  EXPECT_EQ(pieces[0].exponent, 3);
  EXPECT_EQ(pieces[1].exponent, 1);
  EXPECT_EQ(pieces[2].exponent, 1);
  auto prod = ring("GF(3)xGF(3), sigma=swap");
  auto pp = decompose(FLModule(prod, {{1, 1}, {0, 1}, {1, 1}}).as_module());
  ASSERT_EQ(pp.size(), 3u);
  EXPECT_EQ(pp[0].factor, 0);
  EXPECT_EQ(pp[1].factor, 1);
}

TEST(Duality, DualModuleDimensions) {
  auto r = ring("GF(3)[t]/(t^2)");
  auto c = DualityCoefficient::standard(r);
  // Hom_R(k, R) is the socle (t): one-dimensional over k
  EXPECT_EQ(dual_module(FLModule(r, {{0, 1}}).as_module(), *c).module.dim, 1u);
  EXPECT_EQ(dual_module(FiniteModule::regular(r), *c).module.dim, 2u);
  EXPECT_EQ(dual_module(FiniteModule::zero(r), *c).module.dim, 0u);
}

TEST(Duality, DoubleDualCan) {
  auto f3 = ring("GF(3)");
  auto c3 = DualityCoefficient::standard(f3);
  auto can = double_dual_can(FLModule(f3, {{0, 1}, {0, 1}}).as_module(), *c3);
  EXPECT_EQ(linalg::rank(can), 2u);
  auto r = ring("GF(3)[t]/(t^2)");
  auto cr = DualityCoefficient::standard(r);
  EXPECT_NO_THROW(double_dual_can(FLModule(r, {{0, 1}}).as_module(), *cr));
  // A coefficient that is not injective over R: I = R/(t).
  FLModule kmod(r, {{0, 1}});
  DualityCoefficient k(kmod.as_module(), FpMatrix::identity(3, 1), "R/(t)");
  EXPECT_EQ(code_of([&] { double_dual_can(FiniteModule::regular(r), k); }), Errc::NotStrongDuality);
}

TEST(Duality, CanDualIdentity) {
  for (std::string d : {"GF(3)", "GF(9), sigma=frobenius", "GF(3)[t]/(t^2)", "GF(3)[t]/(t^3), sigma: t -> -t",
                        "GF(3)xGF(3), sigma=swap"}) {
    auto a = ring(d);
    auto c = DualityCoefficient::standard(a);
    for (const auto& t : FLModule::types(*a)) {
      FLModule m(a, {t, t});
      EXPECT_TRUE(can_dual_identity_holds(m.as_module(), *c)) << d;
    }
  }
}

TEST(Duality, RestrictScalarsHom) {
  auto f9 = ring("GF(9), sigma=frobenius");
  auto sig = rings::FiniteRingMap::make(f9, f9, f9->sigma_matrix());
  auto reg = FiniteModule::regular(f9);
  TwistData d{sig, reg, reg, reg, reg, f9->sigma_matrix(), f9->sigma_matrix()};
  auto m = restrict_scalars_hom(d);
  EXPECT_EQ(linalg::rank(m), 2u);
  auto f3 = ring("GF(3)");
  auto reg3 = FiniteModule::regular(f3);
  TwistData id{rings::FiniteRingMap::identity(f3), reg3, reg3, reg3, reg3, FpMatrix::identity(3, 1), FpMatrix::identity(3, 1)};
  EXPECT_TRUE(restrict_scalars_hom(id).is_identity());
  TwistData bad = id;
  bad.m_prime = FLModule(f3, {{0, 1}, {0, 1}}).as_module();
  EXPECT_EQ(code_of([&] { restrict_scalars_hom(bad); }), Errc::IncompatibleTwistData);
}

TEST(Forms, Validation) {
  auto f3 = ring("GF(3)");
  EXPECT_NO_THROW(diag(f3, {"0"}, -1));
  EXPECT_EQ(code_of([&] { diag(f3, {"1"}, -1); }), Errc::NotEpsilonSymmetric);
  EXPECT_EQ(code_of([&] { gram_form(f3, {{0, 1}, {0, 1}}, {{"0", "1"}, {"0", "0"}}); }), Errc::NotEpsilonSymmetric);
  auto r = ring("GF(3)[t]/(t^2)");
  // entry 1 on k x R is not killed by t
  EXPECT_EQ(code_of([&] { gram_form(r, {{0, 2}, {0, 1}}, {{"0", "1"}, {"1", "0"}}); }), Errc::NotSesquilinear);
}

TEST(Forms, Nondegeneracy) {
  auto f3 = ring("GF(3)");
  EXPECT_TRUE(gram_form(f3, {{0, 1}, {0, 1}}, {{"0", "1"}, {"1", "0"}}).is_nondegenerate());
  EXPECT_FALSE(diag(f3, {"0", "0"}).is_nondegenerate());
  auto r = ring("GF(3)[t]/(t^2)");
  EXPECT_FALSE(gram_form(r, {{0, 2}}, {{"t"}}).is_nondegenerate());
  EXPECT_TRUE(gram_form(r, {{0, 2}}, {{"1"}}).is_nondegenerate());
  EXPECT_TRUE(gram_form(r, {{0, 1}}, {{"t"}}).is_nondegenerate());
}

TEST(Forms, SumsIsometryMetabolic) {
  auto f3 = ring("GF(3)");
  auto one = diag(f3, {"1"});
  auto s = orthogonal_sum(one, one);
  EXPECT_EQ(s.gram_string(), "[[1,0],[0,1]]");
  EXPECT_EQ(orthogonal_sum(one, zero_form(f3, one.coefficient(), 1)).gram_string(), "[[1]]");
  auto hyp = gram_form(f3, {{0, 1}, {0, 1}}, {{"0", "1"}, {"1", "0"}});
  EXPECT_TRUE(isometric(orthogonal_sum(one, diag(f3, {"-1"})), hyp));
  EXPECT_TRUE(is_metabolic(hyp));
  EXPECT_FALSE(is_metabolic(one));
  EXPECT_FALSE(is_metabolic(s));
  EXPECT_FALSE(isometric(one, diag(f3, {"-1"})));
  EXPECT_TRUE(isometric(s, s));
  auto f5 = ring("GF(5)");
  EXPECT_TRUE(isometric(diag(f5, {"1", "1"}), diag(f5, {"2", "2"})));
  EXPECT_FALSE(isometric(diag(f5, {"1", "1"}), diag(f5, {"1", "2"})));
}

TEST(Forms, SumWithNegativeIsMetabolic) {
  auto r = ring("GF(3)[t]/(t^3), sigma: t -> -t");
  WittComputation w(r, DualityCoefficient::standard(r), 1, 2);
  for (std::size_t c = 0; c < w.classes().size(); ++c) {
    auto f = w.class_form(c);
    auto s = orthogonal_sum(f, negate(f));
    auto l = find_lagrangian(s);
    ASSERT_TRUE(l.has_value()) << f.gram_string();
    EXPECT_TRUE(is_lagrangian(s, *l));
  }
}

TEST(Forms, CoefficientChange) {
  auto f3 = ring("GF(3)");
  auto c = DualityCoefficient::standard(f3);
  auto id = CoefficientIso::make(c, c, FpMatrix::identity(3, 1));
  auto one = diag(f3, {"1"});
  EXPECT_EQ(coefficient_change(id, one).gram_string(), "[[1]]");
  FpMatrix two(3, 1, 1);
  two.set(0, 0, 2);
  auto dbl = CoefficientIso::make(c, c, two);
  EXPECT_EQ(coefficient_change(dbl, one).gram_string(), "[[-1]]");
  auto f9 = ring("GF(9), sigma=frobenius");
  auto c9 = DualityCoefficient::standard(f9);
  Code u = el(f9, "u");
  EXPECT_EQ(code_of([&] { CoefficientIso::make(c9, c9, f9->mult_matrix_of(u)); }), Errc::NotACoefficientIso);
  // isometric forms stay isometric
  auto f5 = ring("GF(5)");
  auto c5 = DualityCoefficient::standard(f5);
  FpMatrix m2(5, 1, 1);
  m2.set(0, 0, 2);
  auto a2 = CoefficientIso::make(c5, c5, m2);
  auto x = diag(f5, {"1", "1"}), y = diag(f5, {"2", "2"});
  EXPECT_TRUE(isometric(coefficient_change(a2, x), coefficient_change(a2, y)));
}

TEST(Witt, FieldExamples) {
  auto f3 = ring("GF(3)");
  auto w3 = witt_group(f3, DualityCoefficient::standard(f3), 1, 4);
  EXPECT_EQ(w3.invariant_factors, (std::vector<std::int64_t>{4}));
  EXPECT_TRUE(w3.stable);
  auto f9 = ring("GF(9), sigma=frobenius");
  auto w9 = witt_group(f9, DualityCoefficient::standard(f9), 1, 3);
  EXPECT_EQ(w9.invariant_factors, (std::vector<std::int64_t>{2}));
  EXPECT_TRUE(w9.stable);
  auto skew = witt_group(f3, DualityCoefficient::standard(f3), -1, 4);
  EXPECT_TRUE(skew.invariant_factors.empty());
  EXPECT_TRUE(skew.stable);
  auto f5 = ring("GF(5)");
  auto w5 = witt_group(f5, DualityCoefficient::standard(f5), 1, 3);
  EXPECT_EQ(w5.invariant_factors, (std::vector<std::int64_t>{2, 2}));
}

TEST(Witt, ProductWithSwapVanishes) {
  auto k3 = parse_descriptor("GF(3)");
  auto w = witt_of_product_with_swap(k3, 4);
  EXPECT_TRUE(w.invariant_factors.empty());
  EXPECT_TRUE(w.stable);
  EXPECT_TRUE(witt_of_product_with_swap(parse_descriptor("GF(5)"), 2).invariant_factors.empty());
  auto w0 = witt_of_product_with_swap(k3, 0);
  EXPECT_TRUE(w0.invariant_factors.empty());
  EXPECT_FALSE(w0.stable);
}

TEST(Witt, Deterministic) {
  auto f3 = ring("GF(3)[t]/(t^2)");
  auto c = DualityCoefficient::standard(f3);
  EXPECT_EQ(witt_group(f3, c, 1, 3).to_json(), witt_group(f3, c, 1, 3).to_json());
}

// Orbits of Gram tables under the generator set agree with orbits under the
// full automorphism group found by brute force.
TEST(Witt, GeneratorOrbitsMatchBruteForce) {
  for (std::string d : {"GF(3)", "GF(3)[t]/(t^2)", "GF(3)[t]/(t^3), sigma: t -> -t", "GF(3)xGF(3), sigma=swap",
                        "GF(9), sigma=frobenius"}) {
    auto a = ring(d);
    for (int eps : {1, -1}) {
      WittComputation w(a, DualityCoefficient::standard(a), eps, 3);
      for (std::size_t s = 0; s < w.num_shapes(); ++s) {
        const FLModule& m = w.shape_module(s);
        if (m.rank() == 0 || m.size() > 81 || w.shape_tables(s) > 3000) continue;
        // all automorphisms as generator images
        std::vector<std::vector<FLModule::Elem>> autos;
        std::vector<FLModule::Elem> imgs;
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
          if (i == m.rank()) {
            if (m.span_size(imgs) == m.size()) autos.push_back(imgs);
            return;
          }
          for (std::uint64_t x = 0; x < m.size(); ++x) {
            auto y = m.element(x);
            bool killed = true;
            for (Code j : m.summand(i).ideal_gens) killed = killed && m.is_zero(m.act(j, y));
            if (!killed) continue;
            imgs.push_back(y);
            rec(i + 1);
            imgs.pop_back();
          }
        };
        rec(0);
        std::map<std::uint64_t, std::uint64_t> brute;  // table -> orbit minimum
        for (std::uint64_t t = 0; t < w.shape_tables(s); ++t) {
          auto f = w.table_form(s, t);
          std::uint64_t best = t;
          for (const auto& T : autos) {
            std::vector<Code> g(m.rank() * m.rank());
            for (std::size_t i = 0; i < m.rank(); ++i)
              for (std::size_t j = 0; j < m.rank(); ++j) g[i * m.rank() + j] = f.eval(T[i], T[j]);
            auto idx = w.table_index(s, g);
            ASSERT_TRUE(idx.has_value());
            best = std::min(best, *idx);
          }
          brute[t] = best;
        }
        std::map<std::uint64_t, std::size_t> seen;
        for (std::uint64_t t = 0; t < w.shape_tables(s); ++t) {
          std::size_t cls = w.class_of_table(s, t);
          if (cls == WittComputation::kDegenerate) continue;
          auto [it, fresh] = seen.emplace(brute[t], cls);
          EXPECT_EQ(it->second, cls) << d << " shape " << m.shape_string();
          EXPECT_EQ(w.classes()[cls].rep, brute[t]) << d << " shape " << m.shape_string();
        }
      }
    }
  }
}
