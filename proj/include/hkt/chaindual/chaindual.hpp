#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hkt/chaindual/matrix.hpp"

namespace hkt::chaindual {

// Bounded cochain complex of free modules, d^p: E^p -> E^{p+1}.
class FreeComplex {
 public:
  FreeComplex() = default;
  // ranks[k] is the rank in degree lo + k; d[k] is d^{lo+k}, so d.size() + 1 == ranks.size().
  FreeComplex(RingWithInvolution base, int lo, std::vector<std::size_t> ranks, std::vector<RMatrix> d);
  static FreeComplex concentrated(const RingWithInvolution& base, int degree, std::size_t rank);

  const RingWithInvolution& base() const { return base_; }
  const Ring& ring() const { return base_.ring(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
  std::size_t rank(int p) const;
  // Zero matrix outside the support.
  RMatrix diff(int p) const;
  // Differentials with sigma applied entrywise: the complex sigma_* E in transported bases.
  FreeComplex twisted() const;
  std::string to_string() const;

 private:
  RingWithInvolution base_;
  int lo_ = 0;
  std::vector<std::size_t> ranks_{0};
  std::vector<RMatrix> d_;
};

// Coefficient complex with a semilinear involution sigma_I(x) = S_p sigma(x) in degree p.
struct DualityData {
  FreeComplex coefficient;
  std::map<int, RMatrix> sigma_i;

  // The ring in degree 0 with sigma_I = sigma.
  static DualityData standard(const RingWithInvolution& base);
  RMatrix s(int p) const;
};

// Hom(E, I) with the block layout of each degree: degree n is the sum over
// i of Hom(E^i, I^{i+n}), each block a row-major (rank I^{i+n}) x (rank E^i) matrix.
struct HomComplex {
  FreeComplex complex;
  FreeComplex source, target;

  // Offset of the block Hom(E^i, I^{i+n}) in degree n, or -1 when absent.
  long offset(int n, int i) const;
  // Split a coordinate vector of degree n into its blocks, keyed by i.
  std::map<int, RMatrix> blocks(int n, const std::vector<Element>& v) const;
  std::vector<Element> flatten(int n, const std::map<int, RMatrix>& blocks) const;
};

// Differential df = d o f - (-1)^{|f|} f o d.
HomComplex hom(const FreeComplex& e, const FreeComplex& i);
FreeComplex hom_complex(const FreeComplex& e, const FreeComplex& i);

// E^# = Hom(sigma_* E, I): a block F in Hom(E^i, I^j) is the semilinear map x -> F sigma(x).
HomComplex dual(const FreeComplex& e, const DualityData& d);
FreeComplex duality_functor(const FreeComplex& e, const DualityData& d);

// can_E: E -> E^##, can(x)(f) = (-1)^{|x||f|} sigma_I(f(x)); one matrix per degree of E.
std::map<int, RMatrix> can_map(const FreeComplex& e, const DualityData& d);

// f^#: precomposition E'^# -> E^# for a chain map f: E -> E' given degreewise.
std::map<int, RMatrix> dual_map(const FreeComplex& e, const FreeComplex& e2, const std::map<int, RMatrix>& f,
                                const DualityData& d);

struct AxiomResult {
  std::string name;
  bool pass = true;
  bool applicable = true;
  std::string detail;  // first failing entry when pass is false
};

struct DualityReport {
  std::vector<AxiomResult> axioms;
  bool all_pass() const;
  std::string to_string() const;
};

// (a) can is a chain map; (b) (can_E)^# o can_{E^#} = id; (c) sigma_I is an
// involutive chain map; (d) can is bijective degreewise when square.
DualityReport verify_duality_axioms(const FreeComplex& e, const DualityData& d);

// Sum of shifted copies of R and R --c--> R, conjugated by random elementary
// base changes; entries stay small integers.
FreeComplex random_free_complex(const RingWithInvolution& base, std::mt19937_64& rng, int lo, int length,
                                std::size_t max_rank);

// Degreewise invertibility by elimination on unit pivots; false when no unit pivot exists.
bool invertible_by_unit_pivots(RMatrix m);

}  // namespace hkt::chaindual
