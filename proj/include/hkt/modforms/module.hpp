#pragma once

#include <vector>

#include "hkt/rings/finite_ring.hpp"

namespace hkt::modforms {

using linalg::FpMatrix;
using linalg::FpVec;
using rings::Code;
using rings::FiniteRing;
using rings::FiniteRingPtr;

// A finite module given as an F_p vector space with the action of each
// basis vector of the ring.
struct FiniteModule {
  FiniteRingPtr ring;
  std::size_t dim = 0;
  std::vector<FpMatrix> action;

  static FiniteModule regular(FiniteRingPtr a);
  static FiniteModule zero(FiniteRingPtr a);
  FpMatrix act(Code a) const;
  FpVec act(Code a, const FpVec& v) const { return act(a).apply(v); }
  // sigma_* M: a acts through sigma(a).
  FiniteModule twisted() const;
  void validate() const;
  bool same(const FiniteModule& o) const;
  int p() const { return ring->p(); }
  std::uint64_t size() const;
};

// Basis of Hom_A(M, N) as matrices N.dim x M.dim.
std::vector<FpMatrix> hom_basis(const FiniteModule& m, const FiniteModule& n);
// Coordinates of h in the given basis (throws if h is not in the span).
FpVec hom_coords(const std::vector<FpMatrix>& basis, const FpMatrix& h);
FpMatrix hom_combination(const std::vector<FpMatrix>& basis, const FpVec& coords, std::size_t rows, std::size_t cols);

// Hom_A(M, N) as a module, (a.h)(x) = a.h(x), with its basis maps.
struct HomModule {
  FiniteModule module;
  std::vector<FpMatrix> basis;
};
HomModule hom_module(const FiniteModule& m, const FiniteModule& n);

// Cyclic summand of type A e_k / pi_k^a with a chosen generator.
struct CyclicPiece {
  int factor;
  int exponent;
  FpVec generator;
};
// Decomposition into cyclic modules over a product of chain rings, sorted by
// factor ascending and exponent descending.
std::vector<CyclicPiece> decompose(const FiniteModule& m);

}  // namespace hkt::modforms
