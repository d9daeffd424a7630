#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hkt::linalg {

using FpVec = std::vector<int>;

int inv_mod(int a, int p);

// Dense matrix over F_p with entries kept in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(int p, std::size_t rows, std::size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  static FpMatrix identity(int p, std::size_t n);
  static FpMatrix from_columns(int p, std::size_t rows, const std::vector<FpVec>& cols);
  static FpMatrix from_rows(int p, std::size_t cols, const std::vector<FpVec>& rows);

  int p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, long v) {
    long r = v % p_;
    a_[i * cols_ + j] = static_cast<int>(r < 0 ? r + p_ : r);
  }
  void add(std::size_t i, std::size_t j, long v) { set(i, j, static_cast<long>((*this)(i, j)) + v); }

  FpMatrix operator*(const FpMatrix& o) const;
  FpMatrix operator+(const FpMatrix& o) const;
  FpMatrix operator-(const FpMatrix& o) const;
  FpMatrix scaled(int c) const;
  FpVec apply(const FpVec& v) const;
  FpMatrix transpose() const;
  FpVec row(std::size_t i) const;
  FpVec col(std::size_t j) const;
  FpVec flatten() const { return a_; }  // row-major
  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const FpMatrix& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  int p_ = 3;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<int> a_;
};

// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(FpMatrix& a);
std::size_t rank(const FpMatrix& a);
// Basis of {v : A v = 0}.
std::vector<FpVec> nullspace(const FpMatrix& a);
std::optional<FpVec> solve(const FpMatrix& a, const FpVec& b);
std::optional<FpMatrix> inverse(const FpMatrix& a);

// Echelon basis of the span of the given vectors (all of length n).
std::vector<FpVec> span_basis(int p, std::size_t n, const std::vector<FpVec>& vs);
bool in_span(int p, const std::vector<FpVec>& echelon_basis, const FpVec& v);

FpVec vadd(const FpVec& a, const FpVec& b, int p);
FpVec vsub(const FpVec& a, const FpVec& b, int p);
FpVec vscale(const FpVec& a, int c, int p);
bool vzero(const FpVec& a);

// Base-p digit codes: v[0] is the least significant digit.
std::uint32_t encode(const FpVec& v, int p);
FpVec decode(std::uint32_t code, int p, std::size_t n);

}  // namespace hkt::linalg
