#pragma once

#include <stdexcept>
#include <string>

namespace hkt {

enum class Errc {
  ParseError,
  CharacteristicTwo,
  NotAHomomorphism,
  NotInvolutive,
  DomainMismatch,
  NotAUnit,
  RingMismatch,
  NotStrongDuality,
  NotSesquilinear,
  NotEpsilonSymmetric,
  Mismatch,
  EnumerationBoundExceeded,
  NotACoefficientIso,
  IncompatibleTwistData,
  NotDiagonalizable,
  Degenerate,
  EntryNotRational,
  UnsupportedField,
  NotEquivariant,
  NotFinite,
  CoefficientMismatch,
  ImproperIdeal,
  IdealNotInvariant,
  NotGorenstein,
  MaxIdealNotInvariant,
  NotGorensteinQuotient,
  NotLocal,
  Unsupported,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

}  // namespace hkt
