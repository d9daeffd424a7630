#include "hkt/rings/scalar.hpp"

#include "hkt/error.hpp"

namespace hkt::rings {

void PrimeField::reduce(mpq_class& x) const {
  if (p == 0) {
    x.canonicalize();
    return;
  }
  mpz_class m(static_cast<unsigned long>(p));
  mpz_class num = x.get_num() % m;
  mpz_class den = x.get_den() % m;
  if (num < 0) num += m;
  if (den < 0) den += m;
  if (den == 0) throw Error(Errc::NotAUnit, "denominator divisible by the characteristic");
  if (den != 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    num = (num * inv) % m;
  }
  x = mpq_class(num);
}

mpq_class PrimeField::inverse(const mpq_class& x) const {
  if (x == 0) throw Error(Errc::NotAUnit, "inverse of zero");
  mpq_class y = 1 / x;
  reduce(y);
  return y;
}

std::string PrimeField::to_string(const mpq_class& x) const {
  if (p == 0) return x.get_str();
  mpz_class v = x.get_num();
  if (v > mpz_class(static_cast<unsigned long>(p / 2))) v -= static_cast<unsigned long>(p);
  return v.get_str();
}

std::vector<std::size_t> rref(ScalarMatrix& a, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    mpq_class inv = f.inverse(a[r][c]);
    for (auto& x : a[r]) {
      x *= inv;
      f.reduce(x);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      mpq_class m = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        a[i][j] -= m * a[r][j];
        f.reduce(a[i][j]);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::optional<ScalarRow> solve(const ScalarMatrix& a, const ScalarRow& b, const PrimeField& f) {
  std::size_t n = a.empty() ? 0 : a[0].size();
  ScalarMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug, f);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  ScalarRow x(n, mpq_class(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][n];
  return x;
}

std::size_t rank(ScalarMatrix a, const PrimeField& f) { return rref(a, f).size(); }

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace hkt::rings
