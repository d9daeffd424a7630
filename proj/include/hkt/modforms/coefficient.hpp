#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hkt/modforms/module.hpp"

namespace hkt::modforms {

// A module I with a sigma-semilinear involution i (i(a x) = sigma(a) i(x),
// i o i = id). Elements of I are addressed by base-p codes of coordinates.
class DualityCoefficient {
 public:
  static constexpr std::uint32_t kMaxElements = 6561;

  DualityCoefficient(FiniteModule module, FpMatrix i, std::string label);
  // (A, sigma) and (A, c * sigma) with c sigma(c) = 1.
  static std::shared_ptr<const DualityCoefficient> standard(FiniteRingPtr a);
  static std::shared_ptr<const DualityCoefficient> twisted(FiniteRingPtr a, Code c);

  const FiniteModule& module() const { return module_; }
  const FiniteRingPtr& ring() const { return module_.ring; }
  const FpMatrix& involution() const { return i_; }
  const std::string& label() const { return label_; }
  bool is_regular() const { return regular_; }

  std::uint32_t size() const { return size_; }
  Code add(Code x, Code y) const { return add_[x * size_ + y]; }
  Code neg(Code x) const { return neg_[x]; }
  Code act(Code a, Code x) const { return act_[a * size_ + x]; }
  Code inv(Code x) const { return inv_[x]; }
  Code signed_inv(int eps, Code x) const { return eps > 0 ? inv_[x] : neg_[inv_[x]]; }
  FpVec vec(Code x) const { return linalg::decode(x, module_.p(), module_.dim); }
  Code code(const FpVec& v) const { return linalg::encode(v, module_.p()); }

  // Elements killed by every element of the F_p-subspace spanned by gens.
  std::vector<Code> annihilated_by(const std::vector<Code>& gens) const;

  std::string name(Code x) const;
  Code parse(const std::string& text) const;
  bool same(const DualityCoefficient& o) const;

 private:
  FiniteModule module_;
  FpMatrix i_;
  std::string label_;
  bool regular_ = false;
  std::uint32_t size_ = 1;
  std::vector<Code> add_, neg_, act_, inv_;
};

using CoefficientPtr = std::shared_ptr<const DualityCoefficient>;

// An isomorphism alpha: I -> I' with i' alpha = alpha i (validated).
struct CoefficientIso {
  CoefficientPtr source, target;
  FpMatrix matrix;  // target.dim x source.dim
  static CoefficientIso make(CoefficientPtr source, CoefficientPtr target, FpMatrix m);
  Code operator()(Code x) const;
};

}  // namespace hkt::modforms
