#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hkt/modforms/module.hpp"

namespace hkt::modforms {

// Cyclic module A/J with J = pi_k^a e_k A + (1 - e_k) A.
struct CyclicType {
  int factor = 0;
  int exponent = 1;
  // Canonical order: factor ascending, exponent descending.
  bool operator<(const CyclicType& o) const {
    return factor != o.factor ? factor < o.factor : exponent > o.exponent;
  }
  bool operator==(const CyclicType& o) const { return factor == o.factor && exponent == o.exponent; }
  bool operator!=(const CyclicType& o) const { return !(*this == o); }
};

// Tables for one cyclic type: canonical representatives of A/J are ring codes
// whose pivot coordinates (with respect to an echelon basis of J) vanish.
struct TypeInfo {
  CyclicType type;
  std::vector<Code> ideal_gens;  // F_p basis of J as ring codes
  std::vector<Code> reduce;      // ring code -> canonical representative
  std::vector<Code> reps;        // ascending canonical representatives
  std::vector<std::int32_t> rep_index;  // ring code -> position in reps, -1 if not canonical
  std::vector<Code> sigma_ideal_gens;   // sigma(J)
  std::string name;

  static std::shared_ptr<const TypeInfo> make(const FiniteRingPtr& a, CyclicType t);
  std::uint32_t size() const { return static_cast<std::uint32_t>(reps.size()); }
};

// Direct sum of cyclic modules; elements are tuples of canonical ring codes.
class FLModule {
 public:
  using Elem = std::vector<Code>;
  static constexpr std::uint64_t kDefaultBound = 1u << 20;

  FLModule() = default;
  FLModule(FiniteRingPtr a, std::vector<CyclicType> shape, std::uint64_t bound = kDefaultBound);
  // All cyclic types of the ring, in canonical order.
  static std::vector<CyclicType> types(const FiniteRing& a);

  const FiniteRingPtr& ring() const { return ring_; }
  const std::vector<CyclicType>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  const TypeInfo& summand(std::size_t i) const { return *info_[i]; }
  int length() const;
  std::uint64_t size() const { return size_; }
  std::string shape_string() const;

  Elem element(std::uint64_t index) const;
  std::uint64_t index(const Elem& x) const;
  Elem zero() const { return Elem(rank(), 0); }
  Elem generator(std::size_t i) const;
  Elem add(const Elem& x, const Elem& y) const;
  Elem neg(const Elem& x) const;
  Elem act(Code a, const Elem& x) const;
  bool is_zero(const Elem& x) const;

  // F_p coordinates (concatenated complement coordinates of each summand).
  std::size_t fp_dim() const { return fp_dim_; }
  FpVec to_fp(const Elem& x) const;
  Elem from_fp(const FpVec& v) const;
  FiniteModule as_module() const;
  // Size of the submodule generated by the given elements.
  std::uint64_t span_size(const std::vector<Elem>& gens) const;
  std::vector<FpVec> span_fp(const std::vector<Elem>& gens) const;

  FLModule direct_sum(const FLModule& o) const;

 private:
  FiniteRingPtr ring_;
  std::vector<CyclicType> shape_;
  std::vector<std::shared_ptr<const TypeInfo>> info_;
  std::vector<std::vector<std::size_t>> keep_;  // complement coordinates per summand
  std::uint64_t size_ = 1;
  std::size_t fp_dim_ = 0;
};

}  // namespace hkt::modforms
