#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkt/rings/involution.hpp"

namespace hkt::fieldwitt {

using rings::Element;
using rings::RingWithInvolution;
using Matrix = std::vector<std::vector<Element>>;

// eps-hermitian form b(x, y) = sum sigma(x_i) g_ij y_j over a field with
// involution; g_ji = eps sigma(g_ij) is checked at construction.
class FieldForm {
 public:
  FieldForm(RingWithInvolution k, Matrix gram, int eps);
  const RingWithInvolution& field() const { return k_; }
  const Matrix& gram() const { return gram_; }
  int eps() const { return eps_; }
  std::size_t rank() const { return gram_.size(); }
  Element eval(const std::vector<Element>& x, const std::vector<Element>& y) const;

 private:
  RingWithInvolution k_;
  Matrix gram_;
  int eps_;
};

FieldForm orthogonal_sum(const FieldForm& f, const FieldForm& g);
FieldForm diagonal(const RingWithInvolution& k, const std::vector<Element>& d, int eps = 1);

// Columns of change are the new basis vectors; sigma(P)^T G P = diag(diagonal).
struct Diagonalization {
  std::vector<Element> diagonal;
  Matrix change;
  std::string to_string() const;  // "diag(1,-1)"
};

// Gram-Schmidt with a fixed search order for anisotropic vectors; diagonal
// entries are normalized (square-free integers up to norms over Q-models, 1
// or a fixed non-square over finite fields).
Diagonalization diagonalize(const FieldForm& f);

// Positive and negative entries of a diagonal with rational entries.
std::pair<int, int> signature(const std::vector<Element>& diagonal);

struct WittInvariants {
  std::string model;  // finite-symmetric, finite-hermitian, complex-trivial, complex-conj, real
  int rank = 0;
  std::optional<std::string> discriminant;
  std::optional<std::pair<int, int>> signature;
  std::string witt_class;  // equal labels iff equal Witt classes on the supported models
  std::string to_string() const;
};

WittInvariants witt_invariants(const FieldForm& f);

// Fixed-field check used for diagonal entries.
bool is_rational(const Element& x);

}  // namespace hkt::fieldwitt
