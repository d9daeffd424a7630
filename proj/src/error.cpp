#include "hkt/error.hpp"

namespace hkt {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ParseError: return "ParseError";
    case Errc::CharacteristicTwo: return "CharacteristicTwo";
    case Errc::NotAHomomorphism: return "NotAHomomorphism";
    case Errc::NotInvolutive: return "NotInvolutive";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::NotStrongDuality: return "NotStrongDuality";
    case Errc::NotSesquilinear: return "NotSesquilinear";
    case Errc::NotEpsilonSymmetric: return "NotEpsilonSymmetric";
    case Errc::Mismatch: return "Mismatch";
    case Errc::EnumerationBoundExceeded: return "EnumerationBoundExceeded";
    case Errc::NotACoefficientIso: return "NotACoefficientIso";
    case Errc::IncompatibleTwistData: return "IncompatibleTwistData";
    case Errc::NotDiagonalizable: return "NotDiagonalizable";
    case Errc::Degenerate: return "Degenerate";
    case Errc::EntryNotRational: return "EntryNotRational";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::NotEquivariant: return "NotEquivariant";
    case Errc::NotFinite: return "NotFinite";
    case Errc::CoefficientMismatch: return "CoefficientMismatch";
    case Errc::ImproperIdeal: return "ImproperIdeal";
    case Errc::IdealNotInvariant: return "IdealNotInvariant";
    case Errc::NotGorenstein: return "NotGorenstein";
    case Errc::MaxIdealNotInvariant: return "MaxIdealNotInvariant";
    case Errc::NotGorensteinQuotient: return "NotGorensteinQuotient";
    case Errc::NotLocal: return "NotLocal";
    case Errc::Unsupported: return "Unsupported";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hkt
