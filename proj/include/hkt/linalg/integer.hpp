#pragma once

#include <cstdint>
#include <vector>

namespace hkt::linalg {

using IntVec = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVec>;  // row-major, rows of equal length

// Overflow-checked helpers; throw Error(Unsupported) on overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

IntMatrix int_identity(std::size_t n);
IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b, std::size_t inner);

// U * A * V = D with D diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  std::size_t rows = 0, cols = 0;
  IntVec diagonal;  // length min(rows, cols)
  IntMatrix U, V, Vinv;
};
SmithForm smith_normal_form(const IntMatrix& a, std::size_t cols);

// Row-style Hermite reduction with transform: U * A = H, H in echelon form,
// U unimodular. Rows of U past rank(H) span the left kernel of A.
struct HermiteForm {
  IntMatrix H, U;
  std::size_t rank = 0;
};
HermiteForm hermite_form(const IntMatrix& a, std::size_t cols);

// Echelon basis of a sublattice of Z^n, built incrementally.
class RowLattice {
 public:
  explicit RowLattice(std::size_t n) : n_(n), pivot_row_(n, -1) {}
  void insert(IntVec v);
  // Rows sorted by pivot column.
  IntMatrix basis() const;
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_;
  std::vector<IntVec> rows_;
  std::vector<int> pivot_row_;
};

}  // namespace hkt::linalg
