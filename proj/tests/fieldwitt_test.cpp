#include <gtest/gtest.h>

#include <functional>
#include <map>

#include "hkt/error.hpp"
#include "hkt/fieldwitt/fieldwitt.hpp"
#include "hkt/modforms/witt.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;
using namespace hkt::fieldwitt;
using rings::parse_descriptor;
using rings::parse_matrix;

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

FieldForm form(const std::string& desc, const std::string& gram, int eps = 1) {
  auto k = parse_descriptor(desc);
  return FieldForm(k, parse_matrix(k.ring(), gram), eps);
}

}  // namespace

TEST(Diagonalize, HyperbolicOverGaussianConj) {
  auto f = form("Q(i), sigma=conj", "[[0,1],[1,0]]");
  auto d = diagonalize(f);
  EXPECT_EQ(d.to_string(), "diag(1,-1)");
  // sigma(P)^T G P is the diagonal
  const auto& p = d.change;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Element> x{p[0][i], p[1][i]}, y{p[0][j], p[1][j]};
      EXPECT_EQ(f.eval(x, y), i == j ? d.diagonal[i] : f.field().ring().zero());
    }
}

TEST(Diagonalize, SimpleCases) {
  EXPECT_EQ(diagonalize(form("Q", "[[1]]")).to_string(), "diag(1)");
  EXPECT_EQ(diagonalize(form("Q", "[[8/3]]")).to_string(), "diag(6)");
  EXPECT_EQ(code_of([] { diagonalize(form("GF(5)", "[[0,1],[-1,0]]", -1)); }), Errc::NotDiagonalizable);
  EXPECT_EQ(code_of([] { diagonalize(form("GF(5)", "[[1,0],[0,0]]")); }), Errc::Degenerate);
  EXPECT_EQ(code_of([] { form("Q(i), sigma=conj", "[[i]]"); }), Errc::NotEpsilonSymmetric);
  EXPECT_EQ(diagonalize(form("GF(9), sigma=frobenius", "[[0,u],[-u,0]]")).diagonal.size(), 2u);
  EXPECT_EQ(diagonalize(form("Q(i), sigma=conj", "[[i]]", -1)).to_string(), "diag(i)");
}

TEST(Signature, Counts) {
  auto k = parse_descriptor("Q(i), sigma=conj");
  auto q = [&](long v) { return k.ring().scalar(v); };
  EXPECT_EQ(signature({q(1), q(1), q(1)}), std::make_pair(3, 0));
  EXPECT_EQ(signature({q(1), q(-1)}), std::make_pair(1, 1));
  EXPECT_EQ(signature({q(2), q(3), q(-5)}), std::make_pair(2, 1));
  EXPECT_EQ(code_of([&] { signature({k.ring().gen("i")}); }), Errc::EntryNotRational);
}

TEST(Invariants, ComplexModels) {
  auto triv = witt_invariants(form("Q(i)", "[[1,0],[0,1]]"));
  EXPECT_EQ(triv.witt_class, "rank0");
  auto conj = witt_invariants(form("Q(i), sigma=conj", "[[1,0],[0,1]]"));
  EXPECT_EQ(conj.signature, std::make_pair(2, 0));
  EXPECT_EQ(conj.witt_class, "sig2");
  auto hyp = witt_invariants(form("Q(i), sigma=conj", "[[0,1],[1,0]]"));
  EXPECT_EQ(hyp.witt_class, "sig0");
}

TEST(Invariants, FiniteDiscriminants) {
  auto a = witt_invariants(form("GF(3)", "[[1,0],[0,1]]"));
  auto b = witt_invariants(form("GF(3)", "[[1,0],[0,2]]"));
  EXPECT_NE(a.discriminant, b.discriminant);
  EXPECT_NE(a.witt_class, b.witt_class);
  EXPECT_EQ(witt_invariants(form("GF(9), sigma=frobenius", "[[1,0],[0,1]]")).witt_class, "rank0");
}

TEST(Invariants, SignatureAdditive) {
  auto f = form("Q(i), sigma=conj", "[[2,1],[1,-3]]");
  auto g = form("Q(i), sigma=conj", "[[1,i],[-i,5]]");
  auto sf = *witt_invariants(f).signature, sg = *witt_invariants(g).signature;
  auto ss = *witt_invariants(orthogonal_sum(f, g)).signature;
  EXPECT_EQ(ss.first, sf.first + sg.first);
  EXPECT_EQ(ss.second, sf.second + sg.second);
}

// Invariants separate Witt classes exactly as the exhaustive computation does.
TEST(Invariants, AgreeWithExhaustiveClasses) {
  for (std::string d : {"GF(3)", "GF(5)"}) {
    auto k = parse_descriptor(d);
    auto a = rings::FiniteRing::from(k);
    modforms::WittComputation w(a, modforms::DualityCoefficient::standard(a), 1, 4);
    auto pd = modforms::present(w, 4);
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < w.classes().size(); ++c) {
      auto f = w.class_form(c);
      Matrix g(f.rank(), std::vector<Element>(f.rank()));
      for (std::size_t i = 0; i < f.rank(); ++i)
        for (std::size_t j = 0; j < f.rank(); ++j) g[i][j] = rings::parse_element(k.ring(), a->name(f.entry(i, j)));
      labels.push_back(f.rank() == 0 ? "rank0/square" : witt_invariants(FieldForm(k, g, 1)).witt_class);
    }
    for (std::size_t x = 0; x < labels.size(); ++x)
      for (std::size_t y = 0; y < labels.size(); ++y)
        EXPECT_EQ(labels[x] == labels[y], pd.coords[x] == pd.coords[y]) << d << " classes " << x << ", " << y;
  }
}
