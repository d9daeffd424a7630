#include "hkt/chaindual/matrix.hpp"

#include "hkt/error.hpp"

namespace hkt::chaindual {

RMatrix::RMatrix(Ring r, std::size_t rows, std::size_t cols)
    : ring_(std::move(r)), rows_(rows), cols_(cols), a_(rows * cols, ring_.zero()) {}

RMatrix RMatrix::identity(const Ring& r, std::size_t n) {
  RMatrix m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = r.one();
  return m;
}

RMatrix RMatrix::from_rows(const Ring& r, const std::vector<std::vector<Element>>& rows, std::size_t cols) {
  RMatrix m(r, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(Errc::InvalidArgument, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RMatrix RMatrix::operator*(const RMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::Mismatch, "matrix sizes do not match for a product");
  RMatrix m(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element& x = (*this)(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o(k, j).is_zero()) m(i, j) += x * o(k, j);
    }
  return m;
}

RMatrix RMatrix::operator+(const RMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::Mismatch, "matrix sizes differ");
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

RMatrix RMatrix::operator-(const RMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::Mismatch, "matrix sizes differ");
  RMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
  return m;
}

RMatrix RMatrix::scaled(const Element& c) const {
  RMatrix m = *this;
  for (auto& x : m.a_) x = c * x;
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix m(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

RMatrix RMatrix::apply(const RingWithInvolution& s) const {
  RMatrix m = *this;
  for (auto& x : m.a_) x = s.apply(x);
  return m;
}

bool RMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool RMatrix::operator==(const RMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

std::optional<std::pair<std::size_t, std::size_t>> RMatrix::first_difference(const RMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return std::make_pair(std::size_t{0}, std::size_t{0});
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != o(i, j)) return std::make_pair(i, j);
  return std::nullopt;
}

std::string RMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).to_string();
    s += "]";
  }
  return s + "]";
}

}  // namespace hkt::chaindual
