#pragma once

#include "hkt/modforms/coefficient.hpp"
#include "hkt/modforms/module.hpp"

namespace hkt::modforms {

// Hom_A(sigma_* M, I): additive maps h with h(a m) = sigma(a) h(m).
HomModule dual_module(const FiniteModule& m, const DualityCoefficient& c);

// can(x)(h) = i(h(x)) as a matrix from M to the coordinates of M^##.
// Throws NotStrongDuality unless it is bijective.
FpMatrix double_dual_can(const FiniteModule& m, const DualityCoefficient& c);
// Same map without the bijectivity requirement.
FpMatrix double_dual_map(const FiniteModule& m, const DualityCoefficient& c);

// (can_M)^# o can_{M^#} = id on M^#, as an exact matrix identity.
bool can_dual_identity_holds(const FiniteModule& m, const DualityCoefficient& c);

// Data for f -> sigma_I o f o sigma_{M'} from Hom_R(M, I) to Hom_R'(M', I').
// sigma is a ring isomorphism R -> R'; sigma_m_prime: M' -> M satisfies
// sigma_m_prime(a' x) = sigma^{-1}(a') sigma_m_prime(x); sigma_i: I -> I'
// satisfies sigma_i(a x) = sigma(a) sigma_i(x).
struct TwistData {
  rings::FiniteRingMap sigma;
  FiniteModule m, m_prime, i, i_prime;
  FpMatrix sigma_m_prime, sigma_i;
};
// Matrix in the Hom bases; throws IncompatibleTwistData on bad data or if
// the map is not bijective.
FpMatrix restrict_scalars_hom(const TwistData& d);

}  // namespace hkt::modforms
