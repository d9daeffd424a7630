#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "hkt/rings/scalar.hpp"

namespace hkt::rings {

using Exponents = std::vector<std::uint16_t>;
using Terms = std::map<Exponents, mpq_class>;

// A generator of the ring. Algebraic generators satisfy a monic relation
//   x^degree = reduction
// whose right-hand side only involves earlier algebraic generators.
struct Variable {
  std::string name;
  int degree = 0;  // 0 for a free (polynomial) variable
  Terms reduction;
};

enum class RingKind { PrimeField, FiniteField, Rationals, Quadratic, Polynomial, Quotient, Product };

// The coefficient field spanned by the leading field generators.
struct FieldInfo {
  enum Kind { Prime, Extension, Rationals, Quadratic } kind = Prime;
  int degree = 1;  // [F_{p^k} : F_p] or 2 for quadratic fields
  long d = 0;      // radicand of a quadratic field
  int generators = 0;
};

class Element;

class Ring {
 public:
  Ring() = default;

  static Ring prime_field(unsigned long p);
  static Ring rationals();
  // GF(p^k) with the first monic irreducible polynomial in the order
  // u^k, u^k+1, u^k+2, ..., u^k+u, ... (constant term varies fastest).
  static Ring finite_field(unsigned long p, int k);
  // GF(p^k) = F_p[u]/(u^k + c_{k-1}u^{k-1} + ... + c_0); coeffs are c_0..c_{k-1}.
  static Ring finite_field(unsigned long p, const std::vector<long>& coeffs);
  static Ring quadratic(long d);
  static Ring polynomial(const Ring& base, const std::vector<std::string>& names);
  // base[t]/(f) where f is an element of base[t], monic in t.
  static Ring quotient(const Ring& poly_ring, const Element& f);
  // base x base, presented as base[e]/(e^2 - e).
  static Ring product(const Ring& base);
  // Low-level constructor used by quotient constructions.
  static Ring from_parts(unsigned long p, RingKind kind, FieldInfo field, std::vector<Variable> vars,
                         std::string descriptor);

  bool valid() const { return d_ != nullptr; }
  unsigned long characteristic() const;
  const PrimeField& scalars() const;
  RingKind kind() const;
  const FieldInfo& field() const;
  std::size_t num_vars() const;
  const Variable& var(std::size_t i) const;
  int var_index(const std::string& name) const;  // -1 when absent
  const std::string& descriptor() const;
  int product_var() const;  // -1 unless kind() == Product

  bool is_field() const;
  bool is_finite() const;
  bool has_free_vars() const;
  // Monomials of the normal-form basis over the prime field (requires no free vars).
  std::vector<Exponents> basis_monomials() const;

  Element zero() const;
  Element one() const;
  Element scalar(const mpq_class& c) const;
  Element gen(std::size_t i) const;
  Element gen(const std::string& name) const;
  Element make(Terms t) const;

  void normalize(Terms& t) const;

  bool operator==(const Ring& o) const;
  bool operator!=(const Ring& o) const { return !(*this == o); }
  bool same(const Ring& o) const { return d_ == o.d_; }

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

class Element {
 public:
  Element() = default;
  Element(Ring r, Terms t) : ring_(std::move(r)), terms_(std::move(t)) {}

  const Ring& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  mpq_class constant() const;
  int total_degree() const;  // -1 for zero

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Element& b) { return a *= b; }
  Element scaled(const mpq_class& c) const;
  Element pow(unsigned long n) const;
  Element inverse() const;
  bool is_unit() const;
  bool is_nilpotent() const;

  bool operator==(const Element& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const { return terms_ < o.terms_; }

  std::string to_string() const;

 private:
  Ring ring_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

// Pseudo-random element; free variables get degree <= max_degree and
// coefficients are small integers.
Element random_element(const Ring& r, std::mt19937_64& rng, int max_degree = 2, int coeff_range = 3);

}  // namespace hkt::rings
