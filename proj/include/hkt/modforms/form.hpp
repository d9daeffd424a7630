#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hkt/modforms/coefficient.hpp"
#include "hkt/modforms/flmodule.hpp"

namespace hkt::modforms {

// Sesquilinear convention: b(a x, y) = sigma(a) b(x, y), b(x, a y) = a b(x, y),
// with b(y, x) = eps * i(b(x, y)). The adjoint is y -> b(., y).
class HermitianForm {
 public:
  using Elem = FLModule::Elem;

  // Gram entries b(g_i, g_j) as codes in the coefficient, row-major.
  HermitianForm(FLModule m, CoefficientPtr c, std::vector<Code> gram, int eps);

  const FLModule& module() const { return m_; }
  const CoefficientPtr& coefficient() const { return c_; }
  const std::vector<Code>& gram() const { return gram_; }
  Code entry(std::size_t i, std::size_t j) const { return gram_[i * m_.rank() + j]; }
  int eps() const { return eps_; }
  std::size_t rank() const { return m_.rank(); }
  int length() const { return m_.length(); }

  Code eval(const Elem& x, const Elem& y) const;
  bool is_nondegenerate() const;
  std::string gram_string() const;

 private:
  FLModule m_;
  CoefficientPtr c_;
  std::vector<Code> gram_;
  int eps_;
};

HermitianForm make_form(FLModule m, CoefficientPtr c, std::vector<Code> gram, int eps);
// Parses Gram entries written as coefficient elements.
HermitianForm make_form(FLModule m, CoefficientPtr c, const std::vector<std::vector<std::string>>& gram, int eps);
HermitianForm zero_form(FiniteRingPtr a, CoefficientPtr c, int eps);
HermitianForm diagonal_form(FiniteRingPtr a, CoefficientPtr c, const std::vector<Code>& diag, int eps);

HermitianForm orthogonal_sum(const HermitianForm& f, const HermitianForm& g);
HermitianForm negate(const HermitianForm& f);

// Form on an arbitrary finite module, given by a pairing on F_p coordinates;
// the module is decomposed into cyclic summands first.
HermitianForm form_from_pairing(const FiniteModule& m, CoefficientPtr c, int eps,
                                const std::function<Code(const FpVec&, const FpVec&)>& b);

bool isometric(const HermitianForm& f, const HermitianForm& g, std::uint64_t bound = FLModule::kDefaultBound);
// Generators of a Lagrangian L = L^perp, if one exists.
std::optional<std::vector<HermitianForm::Elem>> find_lagrangian(const HermitianForm& f,
                                                                std::uint64_t bound = FLModule::kDefaultBound);
bool is_metabolic(const HermitianForm& f, std::uint64_t bound = FLModule::kDefaultBound);
// Induced form on (Rx)^perp / Rx for an isotropic x; it has the same Witt class.
HermitianForm isotropic_reduction(const HermitianForm& f, const HermitianForm::Elem& x);
// Checks that L is a Lagrangian of f.
bool is_lagrangian(const HermitianForm& f, const std::vector<HermitianForm::Elem>& gens);

HermitianForm coefficient_change(const CoefficientIso& alpha, const HermitianForm& f);

}  // namespace hkt::modforms
