#include "hkt/linalg/fp_matrix.hpp"

#include <sstream>

#include "hkt/error.hpp"

namespace hkt::linalg {

int inv_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw Error(Errc::NotAUnit, "inverse of zero mod p");
  long t = 0, nt = 1, r = p, nr = a;
  while (nr) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<int>(t);
}

FpMatrix FpMatrix::identity(int p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_columns(int p, std::size_t rows, const std::vector<FpVec>& cols) {
  FpMatrix m(p, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  return m;
}

FpMatrix FpMatrix::from_rows(int p, std::size_t cols, const std::vector<FpVec>& rows) {
  FpMatrix m(p, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
  if (cols_ != o.rows_) throw Error(Errc::Mismatch, "matrix shapes do not compose");
  FpMatrix r(p_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < cols_; ++k) s += static_cast<long>((*this)(i, k)) * o(k, j);
      r.set(i, j, s);
    }
  return r;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::Mismatch, "matrix shapes differ");
  FpMatrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] + o.a_[k]) % p_;
  return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::Mismatch, "matrix shapes differ");
  FpMatrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = (a_[k] - o.a_[k] + p_) % p_;
  return r;
}

FpMatrix FpMatrix::scaled(int c) const {
  FpMatrix r(p_, rows_, cols_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = static_cast<int>((static_cast<long>(a_[k]) * ((c % p_ + p_) % p_)) % p_);
  return r;
}

FpVec FpMatrix::apply(const FpVec& v) const {
  FpVec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    long s = 0;
    for (std::size_t k = 0; k < cols_; ++k) s += static_cast<long>((*this)(i, k)) * v[k];
    r[i] = static_cast<int>(s % p_);
  }
  return r;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix r(p_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.a_[j * rows_ + i] = (*this)(i, j);
  return r;
}

FpVec FpMatrix::row(std::size_t i) const { return FpVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

FpVec FpMatrix::col(std::size_t j) const {
  FpVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

bool FpMatrix::is_zero() const {
  for (int x : a_)
    if (x) return false;
  return true;
}

bool FpMatrix::is_identity() const { return rows_ == cols_ && *this == identity(p_, rows_); }

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      int v = (*this)(i, j);
      if (v > p_ / 2) v -= p_;
      os << (j ? "," : "") << v;
    }
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<std::size_t> rref(FpMatrix& a) {
  std::vector<std::size_t> piv;
  const int p = a.p();
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t k = r;
    while (k < a.rows() && a(k, c) == 0) ++k;
    if (k == a.rows()) continue;
    if (k != r)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        int t = a(k, j);
        a.set(k, j, a(r, j));
        a.set(r, j, t);
      }
    int inv = inv_mod(a(r, c), p);
    for (std::size_t j = c; j < a.cols(); ++j) a.set(r, j, static_cast<long>(a(r, j)) * inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      long m = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a.set(i, j, a(i, j) - m * a(r, j));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

std::size_t rank(const FpMatrix& a) {
  FpMatrix b = a;
  return rref(b).size();
}

std::vector<FpVec> nullspace(const FpMatrix& a) {
  FpMatrix b = a;
  auto piv = rref(b);
  std::vector<bool> is_piv(a.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<FpVec> out;
  const int p = a.p();
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    FpVec v(a.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - b(i, f)) % p;
    out.push_back(v);
  }
  return out;
}

std::optional<FpVec> solve(const FpMatrix& a, const FpVec& b) {
  FpMatrix aug(a.p(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a(i, j));
    aug.set(i, a.cols(), b[i]);
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  FpVec x(a.cols(), 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, a.cols());
  return x;
}

std::optional<FpMatrix> inverse(const FpMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  std::size_t n = a.rows();
  FpMatrix aug(a.p(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, a(i, j));
    aug.set(i, n + i, 1);
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  FpMatrix inv(a.p(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, aug(i, n + j));
  return inv;
}

std::vector<FpVec> span_basis(int p, std::size_t n, const std::vector<FpVec>& vs) {
  FpMatrix m = FpMatrix::from_rows(p, n, vs);
  auto piv = rref(m);
  std::vector<FpVec> out;
  for (std::size_t i = 0; i < piv.size(); ++i) out.push_back(m.row(i));
  return out;
}

bool in_span(int p, const std::vector<FpVec>& basis, const FpVec& v) {
  std::vector<FpVec> all = basis;
  all.push_back(v);
  return span_basis(p, v.size(), all).size() == span_basis(p, v.size(), basis).size();
}

FpVec vadd(const FpVec& a, const FpVec& b, int p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

FpVec vsub(const FpVec& a, const FpVec& b, int p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] - b[i] + p) % p;
  return r;
}

FpVec vscale(const FpVec& a, int c, int p) {
  FpVec r(a.size());
  c = ((c % p) + p) % p;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * c) % p;
  return r;
}

bool vzero(const FpVec& a) {
  for (int x : a)
    if (x) return false;
  return true;
}

std::uint32_t encode(const FpVec& v, int p) {
  std::uint64_t c = 0;
  for (std::size_t i = v.size(); i-- > 0;) c = c * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(v[i]);
  return static_cast<std::uint32_t>(c);
}

FpVec decode(std::uint32_t code, int p, std::size_t n) {
  FpVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<int>(code % static_cast<std::uint32_t>(p));
    code /= static_cast<std::uint32_t>(p);
  }
  return v;
}

}  // namespace hkt::linalg
