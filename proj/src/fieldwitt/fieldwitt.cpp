#include "hkt/fieldwitt/fieldwitt.hpp"

#include <sstream>

#include "hkt/error.hpp"

namespace hkt::fieldwitt {

using rings::Ring;
using rings::RingKind;
using Vec = std::vector<Element>;

namespace {

bool trivial(const RingWithInvolution& k) { return k.is_trivial(); }

std::vector<Element> field_elements(const Ring& r) {
  auto mons = r.basis_monomials();
  const unsigned long p = r.characteristic();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < mons.size(); ++i) total *= p;
  std::vector<Element> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    rings::Terms t;
    std::uint64_t cc = c;
    for (const auto& m : mons) {
      if (cc % p) t[m] = mpq_class(static_cast<long>(cc % p));
      cc /= p;
    }
    out.push_back(r.make(t));
  }
  return out;
}

// m = s^2 * m' with m' square-free (trial division).
std::pair<mpz_class, mpz_class> squarefree(mpz_class m) {
  mpz_class sign = m < 0 ? -1 : 1, a = abs(m), s = 1, core = 1;
  for (mpz_class q = 2; q * q <= a; ++q) {
    int e = 0;
    while (a % q == 0) {
      a /= q;
      ++e;
    }
    for (int i = 0; i + 1 < e; i += 2) s *= q;
    if (e % 2) core *= q;
  }
  core *= a;
  return {sign * core, s};
}

Vec axpy(const Vec& x, const Element& c, const Vec& y) {
  Vec z = x;
  for (std::size_t i = 0; i < z.size(); ++i) z[i] += c * y[i];
  return z;
}

Vec scale(const Element& c, const Vec& x) {
  Vec z = x;
  for (auto& e : z) e = c * e;
  return z;
}

// lambda with sigma(lambda) lambda d in canonical form; returns lambda.
Element normalizer(const RingWithInvolution& k, const Element& d) {
  const Ring& r = k.ring();
  const auto kind = r.field().kind;
  if (r.is_finite()) {
    auto elems = field_elements(r);
    auto norm = [&](const Element& x) { return k.apply(x) * x; };
    if (!trivial(k)) {
      Element target = d.inverse();
      for (const auto& x : elems)
        if (norm(x) == target) return x;
      throw Error(Errc::Unsupported, "norm map is not surjective");
    }
    bool square = false;
    for (const auto& x : elems) square = square || (!x.is_zero() && x * x == d);
    Element want = r.one();
    if (!square) {
      for (const auto& x : elems) {
        bool sq = false;
        for (const auto& y : elems) sq = sq || (y * y == x);
        if (!sq) {
          want = x;
          break;
        }
      }
    }
    Element q = want * d.inverse();
    for (const auto& x : elems)
      if (x * x == q) return x;
    throw Error(Errc::Unsupported, "square class normalization failed");
  }
  if (!is_rational(d)) return r.one();
  mpq_class v = d.constant();
  mpz_class num = v.get_num(), den = v.get_den();
  auto [core, s] = squarefree(num * den);
  // d * den^2 / s^2 = core
  Element lambda = r.scalar(mpq_class(den, s));
  if (kind == rings::FieldInfo::Quadratic && !trivial(k) && r.field().d < 0) {
    const long dd = r.field().d;
    Element g = r.gen(0);
    bool changed = true;
    while (changed && abs(core) > 1) {
      changed = false;
      mpz_class rt = sqrt(mpz_class(abs(core)));
      long bound = rt.get_si() + 1;
      for (long b = 1; b <= bound && !changed; ++b)
        for (long a = 0; a <= bound && !changed; ++a) {
          mpz_class n = mpz_class(a * a) - mpz_class(dd) * b * b;
          if (n <= 1 || core % n != 0) continue;
          // scale by 1/(a + b g): the value divides by the norm n
          Element x = r.scalar(a) + g.scaled(b);
          lambda = lambda * x.inverse();
          mpz_class c2 = core / n;
          auto [c3, s3] = squarefree(c2);
          lambda = lambda.scaled(mpq_class(1, s3));
          core = c3;
          changed = true;
        }
    }
  }
  return lambda;
}

}  // namespace

bool is_rational(const Element& x) { return x.is_zero() || x.is_constant(); }

FieldForm::FieldForm(RingWithInvolution k, Matrix gram, int eps) : k_(std::move(k)), gram_(std::move(gram)), eps_(eps) {
  if (eps_ != 1 && eps_ != -1) throw Error(Errc::InvalidArgument, "eps must be +1 or -1");
  if (!k_.ring().is_field()) throw Error(Errc::UnsupportedField, k_.ring().descriptor() + " is not a field");
  for (const auto& row : gram_)
    if (row.size() != gram_.size()) throw Error(Errc::InvalidArgument, "Gram matrix must be square");
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) {
      Element want = k_.apply(gram_[i][j]);
      if (eps_ < 0) want = -want;
      if (gram_[j][i] != want)
        throw Error(Errc::NotEpsilonSymmetric, "g(" + std::to_string(j) + "," + std::to_string(i) + ") != eps*sigma(g(" +
                                                   std::to_string(i) + "," + std::to_string(j) + "))");
    }
}

Element FieldForm::eval(const Vec& x, const Vec& y) const {
  Element acc = k_.ring().zero();
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i].is_zero()) continue;
    Element sx = k_.apply(x[i]);
    for (std::size_t j = 0; j < rank(); ++j)
      if (!y[j].is_zero()) acc += sx * gram_[i][j] * y[j];
  }
  return acc;
}

FieldForm orthogonal_sum(const FieldForm& f, const FieldForm& g) {
  if (f.field().ring() != g.field().ring() || f.eps() != g.eps()) throw Error(Errc::Mismatch, "forms over different data");
  const std::size_t n = f.rank() + g.rank();
  Matrix m(n, Vec(n, f.field().ring().zero()));
  for (std::size_t i = 0; i < f.rank(); ++i)
    for (std::size_t j = 0; j < f.rank(); ++j) m[i][j] = f.gram()[i][j];
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < g.rank(); ++j) m[f.rank() + i][f.rank() + j] = g.gram()[i][j];
  return FieldForm(f.field(), m, f.eps());
}

FieldForm diagonal(const RingWithInvolution& k, const std::vector<Element>& d, int eps) {
  Matrix m(d.size(), Vec(d.size(), k.ring().zero()));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return FieldForm(k, m, eps);
}

Diagonalization diagonalize(const FieldForm& f) {
  const RingWithInvolution& k = f.field();
  const Ring& r = k.ring();
  if (f.eps() < 0 && trivial(k)) throw Error(Errc::NotDiagonalizable, "skew-symmetric forms have no orthogonal basis");
  const std::size_t n = f.rank();
  std::vector<Vec> w;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, r.zero());
    e[i] = r.one();
    w.push_back(e);
  }
  std::vector<Element> coeffs{r.one(), -r.one(), r.scalar(2), r.scalar(-2)};
  if (r.num_vars() > 0) {
    Element g = r.gen(0);
    for (const auto& c : {g, -g, r.one() + g, r.one() - g}) coeffs.push_back(c);
  }
  Diagonalization out;
  std::vector<Vec> basis;
  while (!w.empty()) {
    std::optional<Vec> piv;
    std::size_t drop = 0;
    for (std::size_t i = 0; i < w.size() && !piv; ++i)
      if (!f.eval(w[i], w[i]).is_zero()) {
        piv = w[i];
        drop = i;
      }
    for (std::size_t i = 0; i < w.size() && !piv; ++i)
      for (std::size_t j = i + 1; j < w.size() && !piv; ++j)
        for (const auto& c : coeffs) {
          Vec x = axpy(w[i], c, w[j]);
          if (!f.eval(x, x).is_zero()) {
            piv = x;
            drop = i;
            break;
          }
        }
    if (!piv) {
      for (const auto& x : w)
        for (const auto& y : w)
          if (!f.eval(x, y).is_zero()) throw Error(Errc::Unsupported, "no anisotropic vector in the search schedule");
      throw Error(Errc::Degenerate, "form is degenerate");
    }
    Element d = f.eval(*piv, *piv);
    Element dinv = d.inverse();
    std::vector<Vec> rest;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i == drop) continue;
      rest.push_back(axpy(w[i], -(f.eval(*piv, w[i]) * dinv), *piv));
    }
    w = rest;
    basis.push_back(*piv);
  }
  for (auto& v : basis) {
    Element d = f.eval(v, v);
    Element lambda = normalizer(k, d);
    v = scale(lambda, v);
    out.diagonal.push_back(f.eval(v, v));
  }
  out.change.assign(n, Vec(n, r.zero()));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) out.change[i][j] = basis[j][i];
  // sigma(P)^T G P must be the diagonal.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element e = f.eval(basis[i], basis[j]);
      if (e != (i == j ? out.diagonal[i] : r.zero())) throw Error(Errc::Unsupported, "diagonalization check failed");
    }
  return out;
}

std::string Diagonalization::to_string() const {
  std::string s = "diag(";
  for (std::size_t i = 0; i < diagonal.size(); ++i) s += (i ? "," : "") + diagonal[i].to_string();
  return s + ")";
}

std::pair<int, int> signature(const std::vector<Element>& diag) {
  int pos = 0, neg = 0;
  for (const auto& d : diag) {
    if (!is_rational(d) || d.ring().characteristic() != 0)
      throw Error(Errc::EntryNotRational, d.to_string() + " is not a rational number");
    int s = sgn(d.constant());
    if (s == 0) throw Error(Errc::Degenerate, "zero diagonal entry");
    (s > 0 ? pos : neg) += 1;
  }
  return {pos, neg};
}

std::string WittInvariants::to_string() const {
  std::ostringstream os;
  os << "model=" << model << " rank=" << rank << " rank_mod2=" << rank % 2;
  if (discriminant) os << " disc=" << *discriminant;
  if (signature) os << " signature=(" << signature->first << "," << signature->second << ")";
  os << " class=" << witt_class;
  return os.str();
}

WittInvariants witt_invariants(const FieldForm& input) {
  const RingWithInvolution& k = input.field();
  const Ring& r = k.ring();
  FieldForm f = input;
  if (f.eps() < 0) {
    if (trivial(k)) throw Error(Errc::NotDiagonalizable, "skew-symmetric forms have no orthogonal basis");
    // c with sigma(c) = -c turns a skew-hermitian form into a hermitian one
    Element c = r.gen(0) - k.apply(r.gen(0));
    Matrix g = f.gram();
    for (auto& row : g)
      for (auto& e : row) e = c * e;
    f = FieldForm(k, g, 1);
  }
  Diagonalization d = diagonalize(f);
  WittInvariants w;
  w.rank = static_cast<int>(f.rank());
  const auto kind = r.field().kind;
  if (r.is_finite()) {
    if (trivial(k)) {
      w.model = "finite-symmetric";
      Element disc = r.one();
      for (const auto& e : d.diagonal) disc = disc * e;
      if ((w.rank * (w.rank - 1) / 2) % 2) disc = -disc;
      bool square = false;
      for (const auto& x : field_elements(r)) square = square || (x * x == disc);
      w.discriminant = square ? "square" : "nonsquare";
      w.witt_class = "rank" + std::to_string(w.rank % 2) + "/" + *w.discriminant;
    } else {
      w.model = "finite-hermitian";
      w.witt_class = "rank" + std::to_string(w.rank % 2);
    }
    return w;
  }
  if (kind == rings::FieldInfo::Quadratic && r.field().d < 0) {
    if (trivial(k)) {
      // Over C every unit is a square: only the rank mod 2 survives.
      w.model = "complex-trivial";
      w.witt_class = "rank" + std::to_string(w.rank % 2);
    } else {
      w.model = "complex-conj";
      w.signature = signature(d.diagonal);
      w.discriminant = (w.signature->second % 2) ? "-1" : "1";
      w.witt_class = "sig" + std::to_string(w.signature->first - w.signature->second);
    }
    return w;
  }
  if (kind == rings::FieldInfo::Rationals) {
    w.model = "real";
    w.signature = signature(d.diagonal);
    mpz_class disc = 1;
    for (const auto& e : d.diagonal) disc *= e.constant().get_num();
    w.discriminant = squarefree(disc).first.get_str();
    w.witt_class = "sig" + std::to_string(w.signature->first - w.signature->second);
    return w;
  }
  throw Error(Errc::UnsupportedField, "no Witt invariants for " + r.descriptor());
}

}  // namespace hkt::fieldwitt
