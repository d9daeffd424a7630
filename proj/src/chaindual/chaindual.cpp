#include "hkt/chaindual/chaindual.hpp"

#include <sstream>

#include "hkt/error.hpp"

namespace hkt::chaindual {

namespace {

Element sign(const Ring& r, long e) { return (e % 2 == 0) ? r.one() : -r.one(); }

std::string located(const std::string& what, int p, const RMatrix& got, const RMatrix& want) {
  auto at = got.first_difference(want);
  std::ostringstream s;
  s << what << " in degree " << p;
  if (got.rows() != want.rows() || got.cols() != want.cols()) {
    s << ": shape " << got.rows() << "x" << got.cols() << " vs " << want.rows() << "x" << want.cols();
  } else if (at) {
    s << ", entry (" << at->first << "," << at->second << "): " << got(at->first, at->second).to_string()
      << " vs " << want(at->first, at->second).to_string();
  }
  return s.str();
}

}  // namespace

FreeComplex::FreeComplex(RingWithInvolution base, int lo, std::vector<std::size_t> ranks, std::vector<RMatrix> d)
    : base_(std::move(base)), lo_(lo), ranks_(std::move(ranks)), d_(std::move(d)) {
  if (ranks_.empty()) ranks_ = {0};
  if (d_.size() + 1 != ranks_.size()) throw Error(Errc::InvalidArgument, "need one differential between each pair of degrees");
  for (std::size_t k = 0; k < d_.size(); ++k) {
    if (d_[k].rows() != ranks_[k + 1] || d_[k].cols() != ranks_[k])
      throw Error(Errc::InvalidArgument, "differential d^" + std::to_string(lo_ + static_cast<int>(k)) + " has the wrong shape");
    if (d_[k].rows() * d_[k].cols() > 0 && d_[k].ring() != ring())
      throw Error(Errc::RingMismatch, "differential over a different ring");
  }
  for (std::size_t k = 0; k + 1 < d_.size(); ++k)
    if (!(d_[k + 1] * d_[k]).is_zero())
      throw Error(Errc::InvalidArgument, "d^2 != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
}

FreeComplex FreeComplex::concentrated(const RingWithInvolution& base, int degree, std::size_t rank) {
  return FreeComplex(base, degree, {rank}, {});
}

std::size_t FreeComplex::rank(int p) const {
  if (p < lo_ || p > hi()) return 0;
  return ranks_[static_cast<std::size_t>(p - lo_)];
}

RMatrix FreeComplex::diff(int p) const {
  if (p < lo_ || p >= hi()) return RMatrix(ring(), rank(p + 1), rank(p));
  return d_[static_cast<std::size_t>(p - lo_)];
}

FreeComplex FreeComplex::twisted() const {
  std::vector<RMatrix> d;
  for (const auto& m : d_) d.push_back(m.apply(base_));
  return FreeComplex(base_, lo_, ranks_, std::move(d));
}

std::string FreeComplex::to_string() const {
  std::ostringstream s;
  for (int p = lo_; p <= hi(); ++p) {
    s << "deg " << p << ": rank " << rank(p);
    if (p < hi()) s << ", d = " << diff(p).to_string();
    s << "\n";
  }
  return s.str();
}

DualityData DualityData::standard(const RingWithInvolution& base) {
  DualityData d{FreeComplex::concentrated(base, 0, 1), {}};
  d.sigma_i.emplace(0, RMatrix::identity(base.ring(), 1));
  return d;
}

RMatrix DualityData::s(int p) const {
  auto it = sigma_i.find(p);
  if (it != sigma_i.end()) return it->second;
  if (coefficient.rank(p) == 0) return RMatrix(coefficient.ring(), 0, 0);
  throw Error(Errc::InvalidArgument, "sigma_I missing in degree " + std::to_string(p));
}

long HomComplex::offset(int n, int i) const {
  if (i < source.lo() || i > source.hi() || i + n < target.lo() || i + n > target.hi()) return -1;
  long off = 0;
  for (int k = source.lo(); k < i; ++k)
    if (k + n >= target.lo() && k + n <= target.hi()) off += static_cast<long>(source.rank(k) * target.rank(k + n));
  return off;
}

std::map<int, RMatrix> HomComplex::blocks(int n, const std::vector<Element>& v) const {
  std::map<int, RMatrix> out;
  for (int i = source.lo(); i <= source.hi(); ++i) {
    long off = offset(n, i);
    if (off < 0) continue;
    std::size_t rs = source.rank(i), rt = target.rank(i + n);
    RMatrix b(complex.ring(), rt, rs);
    for (std::size_t a = 0; a < rt; ++a)
      for (std::size_t c = 0; c < rs; ++c) b(a, c) = v.at(static_cast<std::size_t>(off) + a * rs + c);
    out.emplace(i, std::move(b));
  }
  return out;
}

std::vector<Element> HomComplex::flatten(int n, const std::map<int, RMatrix>& blocks) const {
  std::vector<Element> v(complex.rank(n), complex.ring().zero());
  for (const auto& [i, b] : blocks) {
    long off = offset(n, i);
    if (off < 0) throw Error(Errc::InvalidArgument, "no block for this degree");
    for (std::size_t a = 0; a < b.rows(); ++a)
      for (std::size_t c = 0; c < b.cols(); ++c) v[static_cast<std::size_t>(off) + a * b.cols() + c] = b(a, c);
  }
  return v;
}

HomComplex hom(const FreeComplex& e, const FreeComplex& i) {
  if (e.ring() != i.ring()) throw Error(Errc::RingMismatch, "hom complex needs a common base ring");
  HomComplex h{FreeComplex(), e, i};
  int lo = i.lo() - e.hi(), hi = i.hi() - e.lo();
  std::vector<std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) {
    std::size_t r = 0;
    for (int k = e.lo(); k <= e.hi(); ++k) r += e.rank(k) * i.rank(k + n);
    ranks.push_back(r);
  }
  const Ring& ring = e.ring();
  std::vector<RMatrix> d;
  for (int n = lo; n < hi; ++n) {
    RMatrix m(ring, ranks[static_cast<std::size_t>(n + 1 - lo)], ranks[static_cast<std::size_t>(n - lo)]);
    Element s = -sign(ring, n);
    for (int k = e.lo(); k <= e.hi(); ++k) {
      long src = h.offset(n, k);
      if (src < 0) continue;
      std::size_t rs = e.rank(k), rt = i.rank(k + n);
      // d_I o f stays in block k
      long t1 = h.offset(n + 1, k);
      RMatrix di = i.diff(k + n);
      // f o d_E lands in block k - 1
      long t2 = h.offset(n + 1, k - 1);
      RMatrix de = e.diff(k - 1);
      std::size_t rs2 = e.rank(k - 1);
      for (std::size_t a = 0; a < rt; ++a)
        for (std::size_t b = 0; b < rs; ++b) {
          std::size_t col = static_cast<std::size_t>(src) + a * rs + b;
          if (t1 >= 0)
            for (std::size_t a2 = 0; a2 < di.rows(); ++a2)
              if (!di(a2, a).is_zero()) m(static_cast<std::size_t>(t1) + a2 * rs + b, col) += di(a2, a);
          if (t2 >= 0)
            for (std::size_t b2 = 0; b2 < rs2; ++b2)
              if (!de(b, b2).is_zero()) m(static_cast<std::size_t>(t2) + a * rs2 + b2, col) += s * de(b, b2);
        }
    }
    d.push_back(std::move(m));
  }
  h.complex = FreeComplex(e.base(), lo, std::move(ranks), std::move(d));
  return h;
}

FreeComplex hom_complex(const FreeComplex& e, const FreeComplex& i) { return hom(e, i).complex; }

HomComplex dual(const FreeComplex& e, const DualityData& d) {
  if (e.ring() != d.coefficient.ring()) throw Error(Errc::RingMismatch, "complex and coefficient differ in ring");
  auto h = hom(e.twisted(), d.coefficient);
  h.source = e;
  return h;
}

FreeComplex duality_functor(const FreeComplex& e, const DualityData& d) { return dual(e, d).complex; }

std::map<int, RMatrix> can_map(const FreeComplex& e, const DualityData& d) {
  auto ed = dual(e, d);
  auto edd = dual(ed.complex, d);
  const Ring& ring = e.ring();
  std::map<int, RMatrix> out;
  for (int p = e.lo(); p <= e.hi(); ++p) {
    RMatrix c(ring, edd.complex.rank(p), e.rank(p));
    std::size_t rp = e.rank(p);
    for (int m = ed.complex.lo(); m <= ed.complex.hi(); ++m) {
      long outer = edd.offset(p, m), inner = ed.offset(m, p);
      if (outer < 0 || inner < 0) continue;
      // sign-twisted evaluation at x, then sigma_I, placed at the evaluation slot
      Element sg = sign(ring, static_cast<long>(p) * m);
      const RMatrix& s = d.s(p + m);
      std::size_t width = ed.complex.rank(m);
      for (std::size_t cc = 0; cc < s.rows(); ++cc)
        for (std::size_t r = 0; r < s.cols(); ++r) {
          if (s(cc, r).is_zero()) continue;
          for (std::size_t k = 0; k < rp; ++k)
            c(static_cast<std::size_t>(outer) + cc * width + static_cast<std::size_t>(inner) + r * rp + k, k) =
                sg * s(cc, r);
        }
    }
    out.emplace(p, std::move(c));
  }
  return out;
}

std::map<int, RMatrix> dual_map(const FreeComplex& e, const FreeComplex& e2, const std::map<int, RMatrix>& f,
                                const DualityData& d) {
  auto src = dual(e2, d), tgt = dual(e, d);
  const Ring& ring = e.ring();
  std::map<int, RMatrix> out;
  for (int n = tgt.complex.lo(); n <= tgt.complex.hi(); ++n) {
    RMatrix m(ring, tgt.complex.rank(n), src.complex.rank(n));
    for (int i = e.lo(); i <= e.hi(); ++i) {
      long to = tgt.offset(n, i), from = src.offset(n, i);
      if (to < 0 || from < 0) continue;
      auto it = f.find(i);
      if (it == f.end()) continue;
      RMatrix sf = it->second.apply(e.base());
      std::size_t rows = d.coefficient.rank(i + n), w2 = e2.rank(i), w = e.rank(i);
      for (std::size_t c = 0; c < rows; ++c)
        for (std::size_t u = 0; u < w2; ++u)
          for (std::size_t k = 0; k < w; ++k)
            if (!sf(u, k).is_zero())
              m(static_cast<std::size_t>(to) + c * w + k, static_cast<std::size_t>(from) + c * w2 + u) += sf(u, k);
    }
    out.emplace(n, std::move(m));
  }
  return out;
}

bool DualityReport::all_pass() const {
  for (const auto& a : axioms)
    if (!a.pass) return false;
  return true;
}

std::string DualityReport::to_string() const {
  std::ostringstream s;
  for (const auto& a : axioms) {
    s << a.name << ": " << (!a.applicable ? "n/a" : a.pass ? "pass" : "FAIL");
    if (!a.detail.empty()) s << " (" << a.detail << ")";
    s << "\n";
  }
  return s.str();
}

DualityReport verify_duality_axioms(const FreeComplex& e, const DualityData& d) {
  DualityReport rep;
  const Ring& ring = e.ring();
  const FreeComplex& ic = d.coefficient;

  AxiomResult inv{"(c) sigma_I involutive chain map", true, true, ""};
  for (int p = ic.lo(); p <= ic.hi() && inv.pass; ++p) {
    const RMatrix& s = d.s(p);
    RMatrix got = s * s.apply(ic.base()), want = RMatrix::identity(ring, ic.rank(p));
    if (got != want) {
      inv.pass = false;
      inv.detail = located("S sigma(S) != 1", p, got, want);
      break;
    }
    if (p < ic.hi()) {
      RMatrix l = d.s(p + 1) * ic.diff(p).apply(ic.base()), r = ic.diff(p) * s;
      if (l != r) {
        inv.pass = false;
        inv.detail = located("sigma_I does not commute with d", p, l, r);
      }
    }
  }

  auto ed = dual(e, d);
  auto edd = dual(ed.complex, d);
  auto can = can_map(e, d);
  auto can_at = [&](int p) { return can.count(p) ? can.at(p) : RMatrix(ring, edd.complex.rank(p), e.rank(p)); };

  AxiomResult chain{"(a) can is a chain map", true, true, ""};
  for (int p = e.lo() - 1; p <= e.hi(); ++p) {
    RMatrix l = can_at(p + 1) * e.diff(p), r = edd.complex.diff(p) * can_at(p);
    if (l != r) {
      chain.pass = false;
      chain.detail = located("can d != d can", p, l, r);
      break;
    }
  }

  AxiomResult bidual{"(b) (can_E)^# o can_{E^#} = id", true, true, ""};
  auto can_ed = can_map(ed.complex, d);
  auto pull = dual_map(e, edd.complex, can, d);
  for (int n = ed.complex.lo(); n <= ed.complex.hi(); ++n) {
    RMatrix got = pull.at(n) * can_ed.at(n), want = RMatrix::identity(ring, ed.complex.rank(n));
    if (got != want) {
      bidual.pass = false;
      bidual.detail = located("composite is not the identity", n, got, want);
      break;
    }
  }

  AxiomResult bij{"(d) can bijective degreewise", true, true, ""};
  for (const auto& [p, c] : can) {
    if (c.rows() != c.cols()) {
      bij.applicable = false;
      bij.detail = "can is not square in degree " + std::to_string(p);
      break;
    }
    if (!invertible_by_unit_pivots(c)) {
      bij.pass = false;
      bij.detail = "no invertible elimination in degree " + std::to_string(p);
      break;
    }
  }

  rep.axioms = {chain, bidual, inv, bij};
  return rep;
}

FreeComplex random_free_complex(const RingWithInvolution& base, std::mt19937_64& rng, int lo, int length,
                                std::size_t max_rank) {
  if (length < 1) throw Error(Errc::InvalidArgument, "length must be positive");
  const Ring& ring = base.ring();
  auto coin = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  auto small = [&](bool nonzero) {
    for (;;) {
      Element x = ring.scalar(coin(5) - 2);
      if (ring.has_free_vars() && coin(3) == 0) x *= ring.gen(static_cast<std::size_t>(coin(static_cast<int>(ring.num_vars()))));
      if (!nonzero || !x.is_zero()) return x;
    }
  };

  auto len = static_cast<std::size_t>(length);
  std::vector<std::size_t> ranks(len, 0);
  // pairs (degree k, row in k, row in k+1, coefficient)
  struct Piece { std::size_t k, a, b; Element c; };
  std::vector<Piece> pieces;
  int count = 1 + coin(static_cast<int>(max_rank * len));
  for (int t = 0; t < count; ++t) {
    std::size_t k = static_cast<std::size_t>(coin(length));
    if (k + 1 < len && coin(2) == 0) {
      if (ranks[k] >= max_rank || ranks[k + 1] >= max_rank) continue;
      pieces.push_back({k, ranks[k]++, ranks[k + 1]++, small(true)});
    } else if (ranks[k] < max_rank) {
      ++ranks[k];
    }
  }
  std::vector<RMatrix> d;
  for (std::size_t k = 0; k + 1 < len; ++k) d.emplace_back(ring, ranks[k + 1], ranks[k]);
  for (const auto& pc : pieces) d[pc.k](pc.b, pc.a) = pc.c;

  // base change d^k -> Q_{k+1} d^k Q_k^{-1} by elementary matrices
  for (std::size_t k = 0; k < len; ++k) {
    std::size_t r = ranks[k];
    if (r < 2) continue;
    RMatrix q = RMatrix::identity(ring, r), qi = q;
    for (int t = 0; t < 2 * static_cast<int>(r); ++t) {
      std::size_t i = static_cast<std::size_t>(coin(static_cast<int>(r))), j = static_cast<std::size_t>(coin(static_cast<int>(r)));
      if (i == j) continue;
      Element a = small(false);
      RMatrix el = RMatrix::identity(ring, r), eli = el;
      el(i, j) = a;
      eli(i, j) = -a;
      q = el * q;
      qi = qi * eli;
    }
    if (k + 1 < len) d[k] = d[k] * qi;
    if (k > 0) d[k - 1] = q * d[k - 1];
  }
  return FreeComplex(base, lo, ranks, std::move(d));
}

bool invertible_by_unit_pivots(RMatrix m) {
  if (m.rows() != m.cols()) return false;
  std::size_t n = m.rows();
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    for (std::size_t i = k; i < n && pr == n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (m(i, cols[j]).is_unit()) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == n) return false;
    std::swap(cols[k], cols[pc]);
    if (pr != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pr, j));
    Element inv = m(k, cols[k]).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, cols[k]).is_zero()) continue;
      Element f = m(i, cols[k]) * inv;
      for (std::size_t j = k; j < n; ++j) m(i, cols[j]) -= f * m(k, cols[j]);
    }
  }
  return true;
}

}  // namespace hkt::chaindual
