#include <gtest/gtest.h>

#include "hkt/chaindual/chaindual.hpp"
#include "hkt/error.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;
using namespace hkt::chaindual;
using rings::parse_descriptor;
using rings::parse_element;

namespace {

RMatrix mat(const Ring& r, const std::string& text) {
  auto rows = rings::parse_matrix(r, text);
  return RMatrix::from_rows(r, rows, rows.empty() ? 0 : rows[0].size());
}

// R --t--> R in degrees -1, 0.
FreeComplex koszul_t(const RingWithInvolution& k) { return FreeComplex(k, -1, {1, 1}, {mat(k.ring(), "[[t]]")}); }

}  // namespace

TEST(HomComplex, RingInDegreeZero) {
  auto k = parse_descriptor("Q");
  auto e = FreeComplex::concentrated(k, 0, 1);
  auto h = hom_complex(e, e);
  EXPECT_EQ(h.lo(), 0);
  EXPECT_EQ(h.hi(), 0);
  EXPECT_EQ(h.rank(0), 1u);
}

TEST(HomComplex, KoszulDualIsShiftedTranspose) {
  auto k = parse_descriptor("Q[t]");
  auto h = hom_complex(koszul_t(k), FreeComplex::concentrated(k, 0, 1));
  EXPECT_EQ(h.lo(), 0);
  EXPECT_EQ(h.hi(), 1);
  // df = -(-1)^0 f o d
  EXPECT_EQ(h.diff(0), mat(k.ring(), "[[-t]]"));
}

TEST(HomComplex, RingMismatch) {
  auto a = FreeComplex::concentrated(parse_descriptor("Q"), 0, 1);
  auto b = FreeComplex::concentrated(parse_descriptor("GF(3)"), 0, 1);
  try {
    hom_complex(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::RingMismatch);
  }
}

TEST(HomComplex, SignRuleOnSampledMaps) {
  auto k = parse_descriptor("GF(3)");
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto e = random_free_complex(k, rng, -1, 3, 2);
    auto i = random_free_complex(k, rng, 0, 2, 2);
    auto h = hom(e, i);
    for (int n = h.complex.lo(); n < h.complex.hi(); ++n) {
      std::vector<Element> f;
      for (std::size_t c = 0; c < h.complex.rank(n); ++c) f.push_back(k.ring().scalar(static_cast<long>(rng() % 3)));
      auto fb = h.blocks(n, f);
      std::map<int, RMatrix> want;
      for (int p = e.lo(); p <= e.hi(); ++p) {
        if (h.offset(n + 1, p) < 0) continue;
        RMatrix acc(k.ring(), i.rank(p + n + 1), e.rank(p));
        if (fb.count(p)) acc = acc + i.diff(p + n) * fb.at(p);
        if (fb.count(p + 1)) acc = acc - (fb.at(p + 1) * e.diff(p)).scaled(k.ring().scalar(n % 2 ? -1 : 1));
        want.emplace(p, acc);
      }
      RMatrix col(k.ring(), f.size(), 1);
      for (std::size_t c = 0; c < f.size(); ++c) col(c, 0) = f[c];
      RMatrix got = h.complex.diff(n) * col;
      auto expect = h.flatten(n + 1, want);
      for (std::size_t c = 0; c < expect.size(); ++c) EXPECT_EQ(got(c, 0), expect[c]) << "trial " << trial;
    }
  }
}

TEST(Duality, ConcentratedRankR) {
  auto k = parse_descriptor("Q");
  auto d = duality_functor(FreeComplex::concentrated(k, 0, 3), DualityData::standard(k));
  EXPECT_EQ(d.lo(), 0);
  EXPECT_EQ(d.hi(), 0);
  EXPECT_EQ(d.rank(0), 3u);
}

TEST(Can, RingInDegreeZeroIsIdentity) {
  auto k = parse_descriptor("Q");
  auto c = can_map(FreeComplex::concentrated(k, 0, 1), DualityData::standard(k));
  EXPECT_EQ(c.at(0), RMatrix::identity(k.ring(), 1));
}

TEST(Can, DegreeOneCarriesSign) {
  auto k = parse_descriptor("Q");
  auto c = can_map(FreeComplex::concentrated(k, 1, 1), DualityData::standard(k));
  EXPECT_EQ(c.at(1), mat(k.ring(), "[[-1]]"));
}

TEST(Can, TwoTermChainMap) {
  auto k = parse_descriptor("Q[t], sigma: t -> -t");
  auto rep = verify_duality_axioms(koszul_t(k), DualityData::standard(k));
  EXPECT_TRUE(rep.all_pass()) << rep.to_string();
}

TEST(Axioms, TrivialData) {
  auto k = parse_descriptor("Q");
  auto rep = verify_duality_axioms(FreeComplex::concentrated(k, 0, 1), DualityData::standard(k));
  EXPECT_TRUE(rep.all_pass()) << rep.to_string();
  EXPECT_EQ(rep.axioms.size(), 4u);
}

TEST(Axioms, RandomComplexes) {
  for (std::string desc : {"GF(3)", "Q", "Q(i), sigma=conj", "Q[t], sigma: t -> -t"}) {
    auto k = parse_descriptor(desc);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      std::mt19937_64 rng(seed);
      auto e = random_free_complex(k, rng, -2 + static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 4), 3);
      auto rep = verify_duality_axioms(e, DualityData::standard(k));
      EXPECT_TRUE(rep.all_pass()) << desc << " seed " << seed << "\n" << rep.to_string();
    }
  }
}

TEST(Axioms, TwoTermCoefficient) {
  auto k = parse_descriptor("Q");
  DualityData d{FreeComplex(k, 0, {1, 1}, {mat(k.ring(), "[[1]]")}), {}};
  d.sigma_i.emplace(0, RMatrix::identity(k.ring(), 1));
  d.sigma_i.emplace(1, RMatrix::identity(k.ring(), 1));
  std::mt19937_64 rng(5);
  auto rep = verify_duality_axioms(random_free_complex(k, rng, 0, 2, 2), d);
  EXPECT_TRUE(rep.axioms[0].pass && rep.axioms[1].pass && rep.axioms[2].pass) << rep.to_string();
}

TEST(Axioms, TwistedSigmaI) {
  auto k = parse_descriptor("Q(i), sigma=conj");
  DualityData d{FreeComplex::concentrated(k, 0, 1), {}};
  d.sigma_i.emplace(0, mat(k.ring(), "[[i]]"));
  std::mt19937_64 rng(9);
  auto rep = verify_duality_axioms(random_free_complex(k, rng, -1, 3, 2), d);
  EXPECT_TRUE(rep.all_pass()) << rep.to_string();
}

TEST(Axioms, CorruptedSigmaIIsLocated) {
  auto k = parse_descriptor("Q");
  DualityData d{FreeComplex::concentrated(k, 0, 2), {}};
  d.sigma_i.emplace(0, mat(k.ring(), "[[1,1],[0,1]]"));
  auto rep = verify_duality_axioms(FreeComplex::concentrated(k, 0, 1), d);
  EXPECT_FALSE(rep.axioms[2].pass);
  EXPECT_NE(rep.axioms[2].detail.find("entry (0,1)"), std::string::npos) << rep.axioms[2].detail;
  EXPECT_FALSE(rep.all_pass());
}
