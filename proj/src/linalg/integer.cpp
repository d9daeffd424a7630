#include "hkt/linalg/integer.hpp"

#include <cstdlib>
#include <utility>

#include "hkt/error.hpp"

namespace hkt::linalg {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Unsupported, "integer overflow in lattice reduction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Unsupported, "integer overflow in lattice reduction");
  return r;
}

IntMatrix int_identity(std::size_t n) {
  IntMatrix m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b, std::size_t inner) {
  std::size_t cols = b.empty() ? 0 : b[0].size();
  IntMatrix r(a.size(), IntVec(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return r;
}

namespace {

// row_i <- row_i + m * row_j
void row_addmul(IntMatrix& a, std::size_t i, std::size_t j, std::int64_t m) {
  if (m == 0) return;
  for (std::size_t k = 0; k < a[i].size(); ++k) a[i][k] = checked_add(a[i][k], checked_mul(m, a[j][k]));
}

void col_addmul(IntMatrix& a, std::size_t i, std::size_t j, std::int64_t m) {
  if (m == 0) return;
  for (auto& row : a) row[i] = checked_add(row[i], checked_mul(m, row[j]));
}

void col_swap(IntMatrix& a, std::size_t i, std::size_t j) {
  for (auto& row : a) std::swap(row[i], row[j]);
}

void col_negate(IntMatrix& a, std::size_t i) {
  for (auto& row : a) row[i] = -row[i];
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, std::size_t cols) {
  SmithForm s;
  std::size_t m = input.size(), n = cols;
  s.rows = m;
  s.cols = n;
  IntMatrix a = input;
  s.U = int_identity(m);
  s.V = int_identity(n);
  s.Vinv = int_identity(n);
  // Column op "col_i += k col_j" on V corresponds to "row_j -= k row_i" on Vinv.
  auto cadd = [&](std::size_t i, std::size_t j, std::int64_t k) {
    col_addmul(a, i, j, k);
    col_addmul(s.V, i, j, k);
    row_addmul(s.Vinv, j, i, -k);
  };
  auto cswap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    col_swap(a, i, j);
    col_swap(s.V, i, j);
    std::swap(s.Vinv[i], s.Vinv[j]);
  };
  auto radd = [&](std::size_t i, std::size_t j, std::int64_t k) {
    row_addmul(a, i, j, k);
    row_addmul(s.U, i, j, k);
  };
  auto rswap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    std::swap(s.U[i], s.U[j]);
  };
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero entry in the trailing block.
      std::size_t bi = m, bj = n;
      std::int64_t best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (best == 0) break;
      rswap(t, bi);
      cswap(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        radd(i, t, -floor_div(a[i][t], a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        cadd(j, t, -floor_div(a[t][j], a[t][t]));
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a[i][j] % a[t][t] != 0) {
            radd(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < m && t < n && a[t][t] < 0) {
      col_negate(a, t);
      col_negate(s.V, t);
      for (auto& x : s.Vinv[t]) x = -x;
    }
  }
  for (std::size_t i = 0; i < std::min(m, n); ++i) s.diagonal.push_back(a[i][i]);
  return s;
}

HermiteForm hermite_form(const IntMatrix& input, std::size_t cols) {
  HermiteForm h;
  h.H = input;
  std::size_t m = input.size();
  h.U = int_identity(m);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (h.H[i][c] != 0 && (best == m || std::llabs(h.H[i][c]) < std::llabs(h.H[best][c]))) best = i;
      if (best == m) break;
      std::swap(h.H[r], h.H[best]);
      std::swap(h.U[r], h.U[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (h.H[i][c] == 0) continue;
        std::int64_t q = floor_div(h.H[i][c], h.H[r][c]);
        row_addmul(h.H, i, r, -q);
        row_addmul(h.U, i, r, -q);
        if (h.H[i][c] != 0) done = false;
      }
      if (done) {
        if (h.H[r][c] < 0) {
          for (auto& x : h.H[r]) x = -x;
          for (auto& x : h.U[r]) x = -x;
        }
        ++r;
        break;
      }
    }
  }
  h.rank = r;
  return h;
}

void RowLattice::insert(IntVec v) {
  for (;;) {
    std::size_t c = 0;
    while (c < n_ && v[c] == 0) ++c;
    if (c == n_) return;
    if (pivot_row_[c] < 0) {
      if (v[c] < 0)
        for (auto& x : v) x = -x;
      pivot_row_[c] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(v));
      return;
    }
    IntVec& p = rows_[static_cast<std::size_t>(pivot_row_[c])];
    if (v[c] % p[c] == 0) {
      std::int64_t q = v[c] / p[c];
      for (std::size_t k = c; k < n_; ++k) v[k] = checked_add(v[k], -checked_mul(q, p[k]));
      continue;
    }
    // Extended gcd combination keeps the lattice unchanged.
    std::int64_t a = p[c], b = v[c];
    std::int64_t x0 = 1, x1 = 0, y0 = 0, y1 = 1, aa = a, bb = b;
    while (bb != 0) {
      std::int64_t q = floor_div(aa, bb);
      std::int64_t t = aa - q * bb;
      aa = bb;
      bb = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
      t = y0 - q * y1;
      y0 = y1;
      y1 = t;
    }
    // aa = x0*a + y0*b = gcd (up to sign); (x1, y1) with x1*a + y1*b = 0.
    IntVec g(n_), z(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      g[k] = checked_add(checked_mul(x0, p[k]), checked_mul(y0, v[k]));
      z[k] = checked_add(checked_mul(x1, p[k]), checked_mul(y1, v[k]));
    }
    if (g[c] < 0)
      for (auto& x : g) x = -x;
    p = std::move(g);
    v = std::move(z);
  }
}

IntMatrix RowLattice::basis() const {
  IntMatrix out;
  for (std::size_t c = 0; c < n_; ++c)
    if (pivot_row_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(pivot_row_[c])]);
  return out;
}

}  // namespace hkt::linalg
