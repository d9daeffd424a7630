#include "hkt/rings/finite_ring.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "hkt/error.hpp"
#include "hkt/rings/parse.hpp"

namespace hkt::rings {

namespace {

std::uint32_t power_size(int p, std::size_t dim) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    s *= static_cast<std::uint64_t>(p);
    if (s > FiniteRing::kMaxElements)
      throw Error(Errc::EnumerationBoundExceeded, "finite ring has more than " +
                                                      std::to_string(FiniteRing::kMaxElements) + " elements");
  }
  return static_cast<std::uint32_t>(s);
}

std::string monomial_name(const Ring& r, const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += r.var(i).name;
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

FpVec coords(const Element& x, const std::vector<Exponents>& basis, int p) {
  FpVec v(basis.size(), 0);
  for (const auto& [e, c] : x.terms()) {
    auto it = std::find(basis.begin(), basis.end(), e);
    if (it == basis.end()) throw Error(Errc::NotFinite, "element outside the finite basis");
    v[static_cast<std::size_t>(it - basis.begin())] = static_cast<int>(mpz_class(c.get_num() % p).get_si());
  }
  return v;
}

}  // namespace

FiniteRing::FiniteRing(int p, std::vector<FpMatrix> mult, FpVec one, FpMatrix sigma_m, std::vector<std::string> names)
    : p_(p), dim_(mult.size()), size_(power_size(p, mult.size())), mult_(std::move(mult)), sigma_mat_(std::move(sigma_m)),
      names_(std::move(names)) {
  if (p == 2) throw Error(Errc::CharacteristicTwo, "characteristic 2");
  if (dim_ == 0) throw Error(Errc::InvalidArgument, "zero ring");
  one_ = linalg::encode(one, p_);
  build_tables();
  for (Code a = 0; a < size_; ++a)
    for (std::size_t i = 0; i < dim_; ++i) {
      Code b = basis(i);
      if (sigma(mul(a, b)) != mul(sigma(a), sigma(b)) || sigma(sigma(a)) != a)
        throw Error(Errc::NotInvolutive, "involution matrix is not an involutive ring automorphism");
    }
  analyse();
}

FiniteRingPtr FiniteRing::from(const RingWithInvolution& r) {
  const Ring& ring = r.ring();
  if (!ring.is_finite()) throw Error(Errc::NotFinite, ring.descriptor() + " is not finite");
  auto basis = ring.basis_monomials();
  int p = static_cast<int>(ring.characteristic());
  power_size(p, basis.size());
  std::vector<FpMatrix> mult;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    FpMatrix m(p, basis.size(), basis.size());
    Element bi = ring.make(Terms{{basis[i], mpq_class(1)}});
    for (std::size_t j = 0; j < basis.size(); ++j) {
      FpVec c = coords(bi * ring.make(Terms{{basis[j], mpq_class(1)}}), basis, p);
      for (std::size_t k = 0; k < basis.size(); ++k) m.set(k, j, c[k]);
    }
    mult.push_back(m);
    names.push_back(monomial_name(ring, basis[i]));
  }
  FpMatrix sig(p, basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    FpVec c = coords(r.apply(ring.make(Terms{{basis[j], mpq_class(1)}})), basis, p);
    for (std::size_t k = 0; k < basis.size(); ++k) sig.set(k, j, c[k]);
  }
  auto fr = std::make_shared<FiniteRing>(p, std::move(mult), coords(ring.one(), basis, p), sig, names);
  fr->symbolic_ = r;
  fr->descriptor_ = r.to_string();
  return fr;
}

void FiniteRing::build_tables() {
  std::vector<FpVec> vecs(size_);
  for (Code a = 0; a < size_; ++a) vecs[a] = vec(a);
  add_.assign(static_cast<std::size_t>(size_) * size_, 0);
  mul_.assign(static_cast<std::size_t>(size_) * size_, 0);
  neg_.resize(size_);
  sigma_tab_.resize(size_);
  for (Code a = 0; a < size_; ++a) {
    neg_[a] = code(linalg::vsub(FpVec(dim_, 0), vecs[a], p_));
    sigma_tab_[a] = code(sigma_mat_.apply(vecs[a]));
    FpMatrix ma = mult_matrix_of(a);
    for (Code b = 0; b < size_; ++b) {
      add_[a * size_ + b] = code(linalg::vadd(vecs[a], vecs[b], p_));
      mul_[a * size_ + b] = code(ma.apply(vecs[b]));
    }
  }
  inv_.assign(size_, kNone);
  for (Code a = 0; a < size_; ++a)
    for (Code b = 0; b < size_; ++b)
      if (mul(a, b) == one_) {
        inv_[a] = b;
        break;
      }
}

Code FiniteRing::from_int(long n) const {
  long m = ((n % p_) + p_) % p_;
  Code r = 0;
  for (long i = 0; i < m; ++i) r = add(r, one_);
  return r;
}

Code FiniteRing::pow(Code a, unsigned n) const {
  Code r = one_;
  for (unsigned i = 0; i < n; ++i) r = mul(r, a);
  return r;
}

Code FiniteRing::basis(std::size_t i) const {
  FpVec v(dim_, 0);
  v[i] = 1;
  return code(v);
}

FpMatrix FiniteRing::mult_matrix_of(Code a) const {
  FpVec v = vec(a);
  FpMatrix m(p_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (v[i]) m = m + mult_[i].scaled(v[i]);
  return m;
}

Code FiniteRing::inverse(Code a) const {
  if (inv_[a] == kNone) throw Error(Errc::NotAUnit, name(a) + " is not a unit");
  return inv_[a];
}

bool FiniteRing::is_nilpotent(Code a) const { return pow(a, static_cast<unsigned>(dim_ + 1)) == 0; }

bool FiniteRing::sigma_is_identity() const { return sigma_mat_.is_identity(); }

std::string FiniteRing::name(Code a) const {
  FpVec v = vec(a);
  if (symbolic_) {
    const Ring& r = symbolic_->ring();
    auto basis = r.basis_monomials();
    Terms t;
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i]) t[basis[i]] = mpq_class(v[i]);
    return r.make(t).to_string();
  }
  std::string out;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!v[i]) continue;
    int c = v[i] > p_ / 2 ? v[i] - p_ : v[i];
    std::string piece;
    if (names_[i] == "1")
      piece = std::to_string(c);
    else if (c == 1)
      piece = names_[i];
    else if (c == -1)
      piece = "-" + names_[i];
    else
      piece = std::to_string(c) + "*" + names_[i];
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out.empty() ? "0" : out;
}

std::optional<Code> FiniteRing::parse(const std::string& text) const {
  if (!symbolic_) return std::nullopt;
  const Ring& r = symbolic_->ring();
  Element e = parse_element(r, text);
  return code(coords(e, r.basis_monomials(), p_));
}

std::string FiniteRing::descriptor() const { return descriptor_; }

void FiniteRing::analyse() {
  std::vector<Code> idem;
  for (Code a = 1; a < size_; ++a)
    if (mul(a, a) == a) idem.push_back(a);
  std::vector<Code> prim;
  for (Code e : idem) {
    bool primitive = true;
    for (Code f : idem) {
      Code fe = mul(f, e);
      if (fe != 0 && fe != e) {
        primitive = false;
        break;
      }
    }
    if (primitive) prim.push_back(e);
  }
  for (Code e : prim) {
    std::vector<FpVec> ae_gens;
    for (std::size_t i = 0; i < dim_; ++i) ae_gens.push_back(vec(mul(basis(i), e)));
    std::size_t d_e = linalg::span_basis(p_, dim_, ae_gens).size();
    std::vector<Code> nil;
    std::vector<FpVec> nil_vecs;
    for (Code c = 0; c < size_; ++c)
      if (mul(c, e) == c && is_nilpotent(c)) {
        nil.push_back(c);
        nil_vecs.push_back(vec(c));
      }
    auto m_basis = linalg::span_basis(p_, dim_, nil_vecs);
    std::size_t d_m = m_basis.size();
    LocalFactor lf{e, 0, 1, static_cast<int>(d_e - d_m)};
    if (d_m > 0) {
      std::vector<FpVec> sq;
      for (const auto& x : m_basis)
        for (const auto& y : m_basis) sq.push_back(vec(mul(code(x), code(y))));
      auto sq_basis = linalg::span_basis(p_, dim_, sq);
      Code pi = 0;
      for (Code c : nil)
        if (c != 0 && !linalg::in_span(p_, sq_basis, vec(c))) {
          pi = c;
          break;
        }
      int n = 1;
      Code pw = pi;
      while (pw != 0) {
        pw = mul(pw, pi);
        ++n;
      }
      lf.uniformizer = pi;
      lf.length = n;
    }
    if (d_e != static_cast<std::size_t>(lf.residue_dim) * static_cast<std::size_t>(lf.length))
      throw Error(Errc::Unsupported, "ring is not a product of chain rings (maximal ideal not principal)");
    factors_.push_back(lf);
  }
}

std::vector<FpVec> FiniteRing::ideal(const std::vector<Code>& gens) const {
  std::vector<FpVec> vs;
  for (Code g : gens)
    for (std::size_t i = 0; i < dim_; ++i) vs.push_back(vec(mul(basis(i), g)));
  return linalg::span_basis(p_, dim_, vs);
}

std::vector<Code> FiniteRing::units() const {
  std::vector<Code> u;
  for (Code a = 0; a < size_; ++a)
    if (is_unit(a)) u.push_back(a);
  return u;
}

std::vector<Code> FiniteRing::unit_generators() const {
  std::vector<Code> gens;
  std::set<Code> group{one_};
  for (Code u : units()) {
    if (group.count(u)) continue;
    gens.push_back(u);
    std::vector<Code> frontier(group.begin(), group.end());
    while (!frontier.empty()) {
      std::vector<Code> next;
      for (Code h : frontier)
        for (Code g : gens) {
          Code x = mul(h, g);
          if (group.insert(x).second) next.push_back(x);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

bool FiniteRing::same_structure(const FiniteRing& o) const {
  if (p_ != o.p_ || dim_ != o.dim_ || one_ != o.one_ || sigma_mat_ != o.sigma_mat_) return false;
  for (std::size_t i = 0; i < dim_; ++i)
    if (mult_[i] != o.mult_[i]) return false;
  return true;
}

// ---------------------------------------------------------------- maps

FiniteRingMap FiniteRingMap::make(FiniteRingPtr source, FiniteRingPtr target, FpMatrix m) {
  if (m.rows() != target->dim() || m.cols() != source->dim() || source->p() != target->p())
    throw Error(Errc::DomainMismatch, "ring map matrix has the wrong shape");
  FiniteRingMap f{std::move(source), std::move(target), std::move(m)};
  if (f(f.source->one()) != f.target->one()) throw Error(Errc::NotAHomomorphism, "ring map does not preserve 1");
  for (std::size_t i = 0; i < f.source->dim(); ++i)
    for (std::size_t j = 0; j < f.source->dim(); ++j) {
      Code a = f.source->basis(i), b = f.source->basis(j);
      if (f(f.source->mul(a, b)) != f.target->mul(f(a), f(b)))
        throw Error(Errc::NotAHomomorphism, "ring map is not multiplicative");
    }
  return f;
}

FiniteRingMap FiniteRingMap::identity(FiniteRingPtr r) {
  auto n = r->dim();
  int p = r->p();
  return make(r, r, FpMatrix::identity(p, n));
}

FiniteRingMap FiniteRingMap::from_symbolic(const RingMap& f, FiniteRingPtr source, FiniteRingPtr target) {
  if (!source->symbolic() || !target->symbolic() || source->symbolic()->ring() != f.source() ||
      target->symbolic()->ring() != f.target())
    throw Error(Errc::DomainMismatch, "ring map does not match the finite rings");
  const Ring& s = f.source();
  auto sb = s.basis_monomials();
  auto tb = f.target().basis_monomials();
  FpMatrix m(source->p(), target->dim(), source->dim());
  for (std::size_t j = 0; j < sb.size(); ++j) {
    FpVec c = coords(f(s.make(Terms{{sb[j], mpq_class(1)}})), tb, source->p());
    for (std::size_t i = 0; i < c.size(); ++i) m.set(i, j, c[i]);
  }
  return make(std::move(source), std::move(target), std::move(m));
}

Code FiniteRingMap::operator()(Code a) const { return target->code(matrix.apply(source->vec(a))); }

FiniteRingMap FiniteRingMap::compose(const FiniteRingMap& inner) const {
  if (!inner.target->same_structure(*source)) throw Error(Errc::DomainMismatch, "maps are not composable");
  return make(inner.source, target, matrix * inner.matrix);
}

bool FiniteRingMap::is_equivariant() const {
  return matrix * source->sigma_matrix() == target->sigma_matrix() * matrix;
}

FiniteRingMap quotient(FiniteRingPtr a, const std::vector<Code>& gens) {
  const int p = a->p();
  const std::size_t n = a->dim();
  auto jb = a->ideal(gens);
  if (jb.size() == n) throw Error(Errc::ImproperIdeal, "ideal is the whole ring");
  for (const auto& v : jb)
    if (!linalg::in_span(p, jb, a->sigma_matrix().apply(v)))
      throw Error(Errc::IdealNotInvariant, "ideal is not stable under the involution");
  std::vector<std::size_t> piv;
  for (const auto& row : jb)
    for (std::size_t c = 0; c < n; ++c)
      if (row[c]) {
        piv.push_back(c);
        break;
      }
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(piv.begin(), piv.end(), c) == piv.end()) keep.push_back(c);
  auto proj = [&](FpVec v) {
    for (std::size_t i = 0; i < jb.size(); ++i) v = linalg::vsub(v, linalg::vscale(jb[i], v[piv[i]], p), p);
    FpVec out(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) out[k] = v[keep[k]];
    return out;
  };
  auto unit = [&](std::size_t c) {
    FpVec v(n, 0);
    v[c] = 1;
    return v;
  };
  std::vector<FpMatrix> mult;
  std::vector<std::string> names;
  for (std::size_t j : keep) {
    FpMatrix m(p, keep.size(), keep.size());
    for (std::size_t l = 0; l < keep.size(); ++l) {
      FpVec c = proj(a->mult_matrix(j).apply(unit(keep[l])));
      for (std::size_t i = 0; i < keep.size(); ++i) m.set(i, l, c[i]);
    }
    mult.push_back(m);
    names.push_back(a->basis_names()[j]);
  }
  FpMatrix sig(p, keep.size(), keep.size());
  for (std::size_t l = 0; l < keep.size(); ++l) {
    FpVec c = proj(a->sigma_matrix().apply(unit(keep[l])));
    for (std::size_t i = 0; i < keep.size(); ++i) sig.set(i, l, c[i]);
  }
  auto q = std::make_shared<FiniteRing>(p, std::move(mult), proj(a->vec(a->one())), sig, names);
  std::string gs;
  for (std::size_t i = 0; i < gens.size(); ++i) gs += (i ? "," : "") + a->name(gens[i]);
  q->set_descriptor("(" + a->descriptor() + ")/(" + gs + ")");
  FpMatrix pm(p, keep.size(), n);
  for (std::size_t c = 0; c < n; ++c) {
    FpVec v = proj(unit(c));
    for (std::size_t i = 0; i < keep.size(); ++i) pm.set(i, c, v[i]);
  }
  return FiniteRingMap::make(a, q, pm);
}

FiniteRingMap residue_field(FiniteRingPtr a) {
  if (!a->is_local()) throw Error(Errc::NotLocal, a->descriptor() + " is not local");
  Code pi = a->factors()[0].uniformizer;
  if (pi == 0) return FiniteRingMap::identity(a);
  try {
    return quotient(a, {pi});
  } catch (const Error& e) {
    if (e.code() == Errc::IdealNotInvariant) throw Error(Errc::MaxIdealNotInvariant, e.what());
    throw;
  }
}

std::vector<FpVec> socle(const FiniteRing& a) {
  std::vector<Code> pis;
  for (const auto& f : a.factors())
    if (f.uniformizer) pis.push_back(f.uniformizer);
  std::size_t n = a.dim();
  if (pis.empty()) {
    std::vector<FpVec> all;
    for (std::size_t i = 0; i < n; ++i) all.push_back(a.vec(a.basis(i)));
    return all;
  }
  auto nb = a.ideal(pis);
  FpMatrix stack(a.p(), nb.size() * n, n);
  for (std::size_t k = 0; k < nb.size(); ++k) {
    FpMatrix m = a.mult_matrix_of(a.code(nb[k]));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) stack.set(k * n + i, j, m(i, j));
  }
  return linalg::nullspace(stack);
}

}  // namespace hkt::rings
