#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hkt/chaindual/chaindual.hpp"

namespace hkt::koszul {

using chaindual::FreeComplex;
using chaindual::RMatrix;
using rings::Element;
using rings::Ring;
using rings::RingWithInvolution;

// A sequence x_1..x_d in a polynomial ring with involution, and the line
// L = R with sigma_L(x) = c sigma(x) for a unit c with c sigma(c) = 1.
struct RegularSequenceData {
  RingWithInvolution ring;
  std::vector<Element> sequence;
  Element line_twist;

  static RegularSequenceData make(RingWithInvolution r, std::vector<Element> seq,
                                  std::optional<Element> twist = std::nullopt);
  std::size_t length() const { return sequence.size(); }
};

// Normal forms modulo J = (x_1, ..., x_d). Supported: affine linear forms
// with independent linear parts, and a single univariate polynomial.
class QuotientModel {
 public:
  QuotientModel(const Ring& r, const std::vector<Element>& gens);
  Element reduce(const Element& x) const;
  bool contains(const Element& x) const { return reduce(x).is_zero(); }

 private:
  enum class Kind { Zero, Linear, Univariate } kind_ = Kind::Zero;
  Ring ring_;
  std::vector<Element> images_;  // Linear: substitution of pivot variables
  std::size_t var_ = 0;          // Univariate: the variable
  Element monic_;                // Univariate: generator scaled to be monic
  int degree_ = 0;
};

// Subsets of {0..n-1} of size i in lexicographic order.
std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t i);
Element determinant(const RMatrix& m);
// Matrix of Lambda^i of m in the wedge bases (entries are i x i minors).
RMatrix exterior_power(const RMatrix& m, std::size_t i);

// Lambda^i E in degree -i, d(e_S) = sum_t (-1)^{t+1} x_{s_t} e_{S - s_t}.
FreeComplex koszul_complex(const RegularSequenceData& data);

struct BetaTilde {
  // beta~ of the generator f(e_1 ^ ... ^ e_d) = l, evaluated at the conormal generator.
  Element value;
  // beta~ o Hom(d, L) on Hom(Lambda^{d-1} E, L), reduced modulo J.
  RMatrix composite;
  bool composite_zero = false;
};
// l is the chosen generator of L (1 by default).
BetaTilde beta_tilde(const RegularSequenceData& data, const std::optional<Element>& l = std::nullopt);

// A with sigma(x_i) = sum_j A_ij x_j, solved over the prime field in bounded
// degree; throws IdealNotInvariant when no combination exists.
RMatrix transition_matrix(const RegularSequenceData& data);

struct SquareCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct TransportReport {
  RMatrix transition;
  std::vector<SquareCheck> squares;
  bool all_pass() const;
  std::string to_string() const;
};

// (a) augmentations commute, (b) sigma on the Koszul complex and the
// comparison Lambda(A) are maps of complexes, (c) beta~ is compatible with
// sigma on Hom(Lambda^d E, L) and on the conormal line.
TransportReport involution_transport(const RegularSequenceData& data);

struct ConormalSign {
  Element u;            // normal form modulo J
  Element det_sigma_n;  // det of sigma on J/J^2 in the basis x_1..x_d, modulo J
  TransportReport report;
  std::string u_string() const;  // "+1", "-1" or the normal form
};

// The unit u with (omega (x) L, sigma) = (L|_{R/J}, u id) under the
// trivialization sending the dual conormal generator to 1.
ConormalSign conormal_sign(const RegularSequenceData& data);

}  // namespace hkt::koszul
