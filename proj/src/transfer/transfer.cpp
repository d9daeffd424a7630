#include "hkt/transfer/transfer.hpp"

#include "hkt/error.hpp"
#include "hkt/modforms/duality.hpp"

namespace hkt::transfer {

using linalg::FpVec;
using modforms::DualityCoefficient;

FpMatrix FlatCoefficient::map_of(Code f) const {
  const auto& s = *pi.target;
  FpMatrix m(s.p(), base->module().dim, s.dim());
  FpVec v = coefficient->vec(f);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (v[k]) m = m + basis[k].scaled(v[k]);
  return m;
}

Code FlatCoefficient::element_of(const FpMatrix& f) const {
  return coefficient->code(modforms::hom_coords(basis, f));
}

Code FlatCoefficient::evaluate_at_one(Code f) const {
  const auto& s = *pi.target;
  return base->code(map_of(f).apply(s.vec(s.one())));
}

FpMatrix FlatCoefficient::evaluation() const {
  const auto& s = *pi.target;
  FpVec one = s.vec(s.one());
  std::vector<FpVec> cols;
  for (const auto& b : basis) cols.push_back(b.apply(one));
  return FpMatrix::from_columns(s.p(), base->module().dim, cols);
}

std::optional<Code> FlatCoefficient::invariant_generator(int eps) const {
  const auto& c = *coefficient;
  const auto& s = *pi.target;
  for (Code v = 1; v < c.size(); ++v) {
    if (c.signed_inv(eps, v) != v) continue;
    std::vector<FpVec> span;
    for (std::size_t j = 0; j < s.dim(); ++j) span.push_back(c.vec(c.act(s.basis(j), v)));
    if (linalg::span_basis(s.p(), c.module().dim, span).size() == c.module().dim) return v;
  }
  return std::nullopt;
}

FiniteModule restrict_module(const FiniteModule& m, const FiniteRingMap& pi) {
  if (!m.ring->same_structure(*pi.target)) throw Error(Errc::RingMismatch, "module is not over the target of the map");
  FiniteModule r{pi.source, m.dim, {}};
  for (std::size_t i = 0; i < pi.source->dim(); ++i) r.action.push_back(m.act(pi(pi.source->basis(i))));
  return r;
}

FlatCoefficient flat_coefficient(const FiniteRingMap& pi, CoefficientPtr c, const std::vector<Code>& generators) {
  if (!pi.is_equivariant()) throw Error(Errc::NotEquivariant, "ring map does not intertwine the involutions");
  const auto& r = *pi.source;
  const auto& s = *pi.target;
  if (!c->ring()->same_structure(r)) throw Error(Errc::RingMismatch, "coefficient is not over the source ring");
  const int p = s.p();

  FlatCoefficient out{pi, c, nullptr, restrict_module(FiniteModule::regular(pi.target), pi), {}};
  if (!generators.empty()) {
    std::vector<FpVec> span;
    for (Code g : generators)
      for (std::size_t i = 0; i < r.dim(); ++i) span.push_back(s.vec(s.mul(pi(r.basis(i)), g)));
    if (linalg::span_basis(p, s.dim(), span).size() != s.dim())
      throw Error(Errc::NotFinite, "generators do not span the target as a module over the source");
  }

  out.basis = modforms::hom_basis(out.restricted, c->module());
  const std::size_t h = out.basis.size();
  FiniteModule hom{pi.target, h, {}};
  for (std::size_t j = 0; j < s.dim(); ++j) {
    std::vector<FpVec> cols;
    for (const auto& b : out.basis) cols.push_back(modforms::hom_coords(out.basis, b * s.mult_matrix(j)));
    hom.action.push_back(FpMatrix::from_columns(p, h, cols));
  }
  std::vector<FpVec> cols;
  for (const auto& b : out.basis)
    cols.push_back(modforms::hom_coords(out.basis, c->involution() * b * s.sigma_matrix()));
  FpMatrix inv = FpMatrix::from_columns(p, h, cols);
  out.coefficient = std::make_shared<const DualityCoefficient>(std::move(hom), std::move(inv),
                                                               "Hom(" + s.descriptor() + "," + c->label() + ")");
  return out;
}

CoefficientIso evaluation_iso(const FlatCoefficient& flat) {
  if (!linalg::inverse(flat.pi.matrix)) throw Error(Errc::InvalidArgument, "evaluation is an isomorphism only for bijective maps");
  // transport the S-action back to R along pi so both sides live over one ring
  const auto& r = *flat.pi.source;
  FiniteModule m{flat.pi.source, flat.coefficient->module().dim, {}};
  for (std::size_t i = 0; i < r.dim(); ++i) m.action.push_back(flat.coefficient->module().act(flat.pi(r.basis(i))));
  auto pulled = std::make_shared<const DualityCoefficient>(std::move(m), flat.coefficient->involution(),
                                                           flat.coefficient->label());
  return CoefficientIso::make(pulled, flat.base, flat.evaluation());
}

namespace {

HermitianForm pushed(const FlatCoefficient& flat, const HermitianForm& f, const FiniteModule& mr) {
  if (!f.coefficient()->same(*flat.coefficient))
    throw Error(Errc::CoefficientMismatch, "form is not valued in the transfer coefficient");
  const FLModule& src = f.module();
  HermitianForm g = modforms::form_from_pairing(mr, flat.base, f.eps(), [&](const FpVec& x, const FpVec& y) {
    return flat.evaluate_at_one(f.eval(src.from_fp(x), src.from_fp(y)));
  });
  if (f.is_nondegenerate() && !g.is_nondegenerate())
    throw Error(Errc::Degenerate, "transfer of a nondegenerate form is degenerate");
  return g;
}

}  // namespace

Transfer transfer(const FlatCoefficient& flat, const HermitianForm& f, std::uint64_t bound) {
  const FLModule& src = f.module();
  if (src.size() > bound) throw Error(Errc::EnumerationBoundExceeded, "module is too large to index");
  FiniteModule mr = restrict_module(src.as_module(), flat.pi);
  Transfer t{pushed(flat, f, mr), src, {}};
  // new elements are R-combinations of the generators of the same decomposition
  const FLModule& dst = t.form.module();
  auto pieces = modforms::decompose(mr);
  t.image.resize(src.size());
  for (std::uint64_t i = 0; i < dst.size(); ++i) {
    FLModule::Elem y = dst.element(i);
    FpVec v(mr.dim, 0);
    for (std::size_t k = 0; k < y.size(); ++k) v = linalg::vadd(v, mr.act(y[k], pieces[k].generator), mr.p());
    t.image.at(src.index(src.from_fp(v))) = y;
  }
  return t;
}

HermitianForm transfer_form(const FlatCoefficient& flat, const HermitianForm& f) {
  return pushed(flat, f, restrict_module(f.module().as_module(), flat.pi));
}

Gamma compose_flats_gamma(const FiniteRingMap& p, const FiniteRingMap& q, CoefficientPtr c) {
  if (!p.is_equivariant() || !q.is_equivariant()) throw Error(Errc::NotEquivariant, "tower maps must be equivariant");
  FlatCoefficient inner = flat_coefficient(p, c);
  FlatCoefficient outer = flat_coefficient(q, inner.coefficient);
  FlatCoefficient direct = flat_coefficient(q.compose(p), c);
  FpMatrix ev = inner.evaluation();
  std::vector<FpVec> cols;
  for (const auto& f : outer.basis) cols.push_back(modforms::hom_coords(direct.basis, ev * f));
  FpMatrix g = FpMatrix::from_columns(p.source->p(), direct.basis.size(), cols);
  auto iso = CoefficientIso::make(outer.coefficient, direct.coefficient, std::move(g));
  return Gamma{std::move(inner), std::move(outer), std::move(direct), std::move(iso)};
}

FpMatrix eta(const FlatCoefficient& flat, const FiniteModule& m) {
  auto ds = modforms::dual_module(m, *flat.coefficient);
  auto dr = modforms::dual_module(restrict_module(m, flat.pi), *flat.base);
  FpMatrix ev = flat.evaluation();
  std::vector<FpVec> cols;
  for (const auto& f : ds.basis) cols.push_back(modforms::hom_coords(dr.basis, ev * f));
  return FpMatrix::from_columns(m.p(), dr.basis.size(), cols);
}

}  // namespace hkt::transfer
