#pragma once

#include <string>
#include <vector>

#include "hkt/modforms/witt.hpp"
#include "hkt/transfer/transfer.hpp"

namespace hkt::devissage {

using modforms::CoefficientPtr;
using modforms::HermitianForm;
using modforms::PresentationData;
using modforms::WittComputation;
using modforms::WittGroupPresentation;
using modforms::WittOptions;
using rings::FiniteRingMap;
using rings::FiniteRingPtr;
using transfer::FlatCoefficient;

// R local with invariant maximal ideal, E = R, and the residue map R -> k
// with its transfer coefficient Hom_R(k, R) (the socle).
struct LocalSetup {
  FiniteRingPtr ring;
  CoefficientPtr e;
  FiniteRingMap pi;
  FlatCoefficient flat;
};

// Throws NotLocal, MaxIdealNotInvariant, or NotGorenstein when the socle is
// not one-dimensional over k.
LocalSetup local_setup(FiniteRingPtr r);
bool is_gorenstein(const FiniteRingPtr& r);

// Transfer of a k-form valued in Hom_R(k, E) to a finite length R-form.
HermitianForm devissage_map(const LocalSetup& s, const HermitianForm& f);

// A map between two Witt presentations given on classes, as an integer
// matrix on the invariant-factor generators.
struct ClassMapCheck {
  linalg::IntMatrix matrix;  // target generators x source generators
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  std::string detail;
  bool isomorphism() const { return well_defined && injective && surjective; }
};
ClassMapCheck check_class_map(const PresentationData& source, const PresentationData& target,
                              const std::vector<std::size_t>& class_map);

struct DevissageReport {
  WittGroupPresentation source;  // over k with Hom_R(k, E)
  WittGroupPresentation target;  // finite length R-modules with E
  std::vector<std::size_t> class_map;
  ClassMapCheck map;
  bool stable() const { return source.stable && target.stable; }
  bool verified() const { return map.isomorphism() && stable(); }
  std::string verdict() const;  // "ISOMORPHISM (stable)", ...
  std::string to_text() const;
  std::string to_json() const;
};

DevissageReport verify_devissage(FiniteRingPtr r, int eps, int bound, WittOptions opts = {});

struct FactorizationReport {
  WittGroupPresentation residue;   // over k with q^flat p^flat E
  WittGroupPresentation quotient;  // over R/J with p^flat E
  WittGroupPresentation ring;      // over R with E
  bool diagram_commutes = false;
  std::size_t classes_checked = 0;
  std::string diagram_detail;
  std::vector<std::size_t> p_class_map;
  ClassMapCheck p_star;
  bool verified() const { return diagram_commutes && p_star.isomorphism(); }
  std::string to_text() const;
  std::string to_json() const;
};

// Tower R -> R/J -> k. Checks that the two routes from W(k) to W(R) agree
// classwise after gamma and that p_* is bijective on presentations.
FactorizationReport verify_localcase_factorization(FiniteRingPtr r, const std::vector<rings::Code>& j, int eps,
                                                   int bound, WittOptions opts = {});

}  // namespace hkt::devissage
