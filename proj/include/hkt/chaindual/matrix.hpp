#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkt/rings/involution.hpp"

namespace hkt::chaindual {

using rings::Element;
using rings::Ring;
using rings::RingWithInvolution;

// Dense matrix over a symbolic ring.
class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(Ring r, std::size_t rows, std::size_t cols);
  static RMatrix identity(const Ring& r, std::size_t n);
  static RMatrix from_rows(const Ring& r, const std::vector<std::vector<Element>>& rows, std::size_t cols);

  const Ring& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Element& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Element& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  RMatrix operator*(const RMatrix& o) const;
  RMatrix operator+(const RMatrix& o) const;
  RMatrix operator-(const RMatrix& o) const;
  RMatrix scaled(const Element& c) const;
  RMatrix transpose() const;
  // Entrywise involution.
  RMatrix apply(const RingWithInvolution& s) const;
  bool is_zero() const;
  bool operator==(const RMatrix& o) const;
  bool operator!=(const RMatrix& o) const { return !(*this == o); }
  // First entry where the matrices differ.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const RMatrix& o) const;
  std::string to_string() const;

 private:
  Ring ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Element> a_;
};

}  // namespace hkt::chaindual
