#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace hkt::rings {

// Prime-field arithmetic on top of mpq_class. For p > 0 values are kept as
// integers in [0, p); for p == 0 they are exact rationals.
struct PrimeField {
  unsigned long p = 0;

  void reduce(mpq_class& x) const;
  mpq_class from(const mpq_class& x) const {
    mpq_class y = x;
    reduce(y);
    return y;
  }
  mpq_class inverse(const mpq_class& x) const;
  // Symmetric representative for printing: -(p-1)/2 .. (p-1)/2.
  std::string to_string(const mpq_class& x) const;
  bool operator==(const PrimeField& o) const { return p == o.p; }
};

using ScalarRow = std::vector<mpq_class>;
using ScalarMatrix = std::vector<ScalarRow>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(ScalarMatrix& a, const PrimeField& f);

// Some x with A x = b, or nullopt.
std::optional<ScalarRow> solve(const ScalarMatrix& a, const ScalarRow& b, const PrimeField& f);

std::size_t rank(ScalarMatrix a, const PrimeField& f);

bool is_prime(unsigned long n);

}  // namespace hkt::rings
