#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hkt/modforms/form.hpp"

namespace hkt::transfer {

using linalg::FpMatrix;
using modforms::CoefficientIso;
using modforms::CoefficientPtr;
using modforms::FiniteModule;
using modforms::FLModule;
using modforms::HermitianForm;
using rings::Code;
using rings::FiniteRingMap;

// Hom_R(S, I) over S for a finite map pi: R -> S, with (b.f)(m) = f(b m)
// and involution f -> sigma_I o f o sigma_S.
struct FlatCoefficient {
  FiniteRingMap pi;
  CoefficientPtr base;         // I over R
  CoefficientPtr coefficient;  // Hom_R(S, I) over S
  FiniteModule restricted;     // S as an R-module
  std::vector<FpMatrix> basis; // F_p basis of Hom_R(S, I), each I.dim x S.dim

  FpMatrix map_of(Code f) const;
  Code element_of(const FpMatrix& f) const;
  Code evaluate_at_one(Code f) const;
  // I.dim x coefficient.dim matrix of f -> f(1).
  FpMatrix evaluation() const;
  // Smallest code v with eps i(v) = v that generates Hom_R(S, I) over S.
  std::optional<Code> invariant_generator(int eps = 1) const;
};

// generators: elements of S whose R-span must be S; empty means the F_p basis.
FlatCoefficient flat_coefficient(const FiniteRingMap& pi, CoefficientPtr c, const std::vector<Code>& generators = {});

// f -> f(1) as a coefficient isomorphism when pi is bijective.
CoefficientIso evaluation_iso(const FlatCoefficient& flat);

// M with R acting through pi.
FiniteModule restrict_module(const FiniteModule& m, const FiniteRingMap& pi);

// Transferred form b_R(x, y) = b_S(x, y)(1) with the element map from the
// source module (indexed by FLModule::index) into the new one.
struct Transfer {
  HermitianForm form;
  FLModule source;
  std::vector<FLModule::Elem> image;

  FLModule::Elem carry(const FLModule::Elem& x) const { return image.at(source.index(x)); }
};

Transfer transfer(const FlatCoefficient& flat, const HermitianForm& f,
                  std::uint64_t bound = FLModule::kDefaultBound);
HermitianForm transfer_form(const FlatCoefficient& flat, const HermitianForm& f);

// gamma(f)(a) = f(a)(1) from q^flat p^flat I to (q p)^flat I.
struct Gamma {
  FlatCoefficient inner;   // p^flat I over R/J
  FlatCoefficient outer;   // q^flat (p^flat I) over k
  FlatCoefficient direct;  // (q p)^flat I over k
  CoefficientIso iso;      // outer -> direct
};

Gamma compose_flats_gamma(const FiniteRingMap& p, const FiniteRingMap& q, CoefficientPtr c);

// eta: Hom_S(sigma_* M, pi^flat I) -> Hom_R(sigma_* M|_R, I), f -> f(.)(1), in
// the bases of modforms::dual_module.
FpMatrix eta(const FlatCoefficient& flat, const FiniteModule& m);

}  // namespace hkt::transfer
