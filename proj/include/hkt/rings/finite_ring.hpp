#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hkt/linalg/fp_matrix.hpp"
#include "hkt/rings/involution.hpp"

namespace hkt::rings {

using Code = std::uint32_t;
using linalg::FpMatrix;
using linalg::FpVec;

class FiniteRing;
using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

// A finite commutative ring with involution, stored as an F_p-algebra with
// full addition/multiplication tables on element codes (base-p digit
// strings of the coordinate vector).
class FiniteRing {
 public:
  static constexpr std::uint32_t kMaxElements = 2187;

  struct LocalFactor {
    Code idempotent;
    Code uniformizer;  // 0 when the factor is a field
    int length;        // nilpotency index of the uniformizer
    int residue_dim;   // [k : F_p]
  };

  // Structure constants: mult[i] is the matrix of multiplication by the i-th
  // basis vector; one is the unit vector; sigma the involution matrix.
  FiniteRing(int p, std::vector<FpMatrix> mult, FpVec one, FpMatrix sigma, std::vector<std::string> names);

  static FiniteRingPtr from(const RingWithInvolution& r);

  int p() const { return p_; }
  std::size_t dim() const { return dim_; }
  std::uint32_t size() const { return size_; }
  Code zero() const { return 0; }
  Code one() const { return one_; }
  Code add(Code a, Code b) const { return add_[a * size_ + b]; }
  Code neg(Code a) const { return neg_[a]; }
  Code sub(Code a, Code b) const { return add_[a * size_ + neg_[b]]; }
  Code mul(Code a, Code b) const { return mul_[a * size_ + b]; }
  Code sigma(Code a) const { return sigma_tab_[a]; }
  Code from_int(long n) const;
  Code pow(Code a, unsigned n) const;

  FpVec vec(Code a) const { return linalg::decode(a, p_, dim_); }
  Code code(const FpVec& v) const { return linalg::encode(v, p_); }
  Code basis(std::size_t i) const;
  const FpMatrix& mult_matrix(std::size_t i) const { return mult_[i]; }
  FpMatrix mult_matrix_of(Code a) const;
  const FpMatrix& sigma_matrix() const { return sigma_mat_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  bool is_unit(Code a) const { return inv_[a] != kNone; }
  Code inverse(Code a) const;
  bool is_nilpotent(Code a) const;
  bool sigma_is_identity() const;

  std::string name(Code a) const;
  std::optional<Code> parse(const std::string& text) const;  // via the symbolic ring when known
  const std::optional<RingWithInvolution>& symbolic() const { return symbolic_; }
  std::string descriptor() const;
  void set_descriptor(std::string d) { descriptor_ = std::move(d); }

  // Decomposition into local chain rings (throws Unsupported otherwise).
  const std::vector<LocalFactor>& factors() const { return factors_; }
  bool is_local() const { return factors_.size() == 1; }

  // F_p-subspace (echelon basis) of the ideal generated by the given elements.
  std::vector<FpVec> ideal(const std::vector<Code>& gens) const;
  std::vector<Code> units() const;
  std::vector<Code> unit_generators() const;

  bool same_structure(const FiniteRing& o) const;

 private:
  static constexpr Code kNone = 0xFFFFFFFFu;
  void build_tables();
  void analyse();

  int p_;
  std::size_t dim_;
  std::uint32_t size_;
  std::vector<FpMatrix> mult_;
  FpMatrix sigma_mat_;
  std::vector<std::string> names_;
  Code one_ = 0;
  std::vector<Code> add_, mul_, neg_, sigma_tab_, inv_;
  std::vector<LocalFactor> factors_;
  std::optional<RingWithInvolution> symbolic_;
  std::string descriptor_;
};

// F_p-linear ring map between finite rings; matrix is target.dim x source.dim.
struct FiniteRingMap {
  FiniteRingPtr source, target;
  FpMatrix matrix;

  static FiniteRingMap make(FiniteRingPtr source, FiniteRingPtr target, FpMatrix m);
  static FiniteRingMap identity(FiniteRingPtr r);
  static FiniteRingMap from_symbolic(const RingMap& f, FiniteRingPtr source, FiniteRingPtr target);
  Code operator()(Code a) const;
  FiniteRingMap compose(const FiniteRingMap& inner) const;  // this ∘ inner
  bool is_equivariant() const;
};

// A/J for an ideal J given by generators; J must be sigma-stable.
FiniteRingMap quotient(FiniteRingPtr a, const std::vector<Code>& gens);

// Residue field map A -> A/m for a local ring.
FiniteRingMap residue_field(FiniteRingPtr a);

// Socle of the ring (annihilator of the maximal ideals), as an F_p subspace.
std::vector<FpVec> socle(const FiniteRing& a);

}  // namespace hkt::rings
