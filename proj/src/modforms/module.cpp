#include "hkt/modforms/module.hpp"

#include "hkt/error.hpp"

namespace hkt::modforms {

FiniteModule FiniteModule::regular(FiniteRingPtr a) {
  FiniteModule m{a, a->dim(), {}};
  for (std::size_t i = 0; i < a->dim(); ++i) m.action.push_back(a->mult_matrix(i));
  return m;
}

FiniteModule FiniteModule::zero(FiniteRingPtr a) {
  FiniteModule m{a, 0, {}};
  for (std::size_t i = 0; i < a->dim(); ++i) m.action.emplace_back(a->p(), 0, 0);
  return m;
}

FpMatrix FiniteModule::act(Code a) const {
  FpVec v = ring->vec(a);
  FpMatrix r(ring->p(), dim, dim);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) r = r + action[i].scaled(v[i]);
  return r;
}

FiniteModule FiniteModule::twisted() const {
  FiniteModule t{ring, dim, {}};
  for (std::size_t i = 0; i < ring->dim(); ++i) t.action.push_back(act(ring->sigma(ring->basis(i))));
  return t;
}

void FiniteModule::validate() const {
  if (action.size() != ring->dim()) throw Error(Errc::Mismatch, "one action matrix per ring basis vector");
  if (!act(ring->one()).is_identity()) throw Error(Errc::Mismatch, "1 does not act as the identity");
  for (std::size_t i = 0; i < ring->dim(); ++i)
    for (std::size_t j = 0; j < ring->dim(); ++j)
      if (action[i] * action[j] != act(ring->mul(ring->basis(i), ring->basis(j))))
        throw Error(Errc::Mismatch, "action is not associative");
}

bool FiniteModule::same(const FiniteModule& o) const {
  return ring->same_structure(*o.ring) && dim == o.dim && action == o.action;
}

std::uint64_t FiniteModule::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < dim; ++i) s *= static_cast<std::uint64_t>(ring->p());
  return s;
}

std::vector<FpMatrix> hom_basis(const FiniteModule& m, const FiniteModule& n) {
  if (!m.ring->same_structure(*n.ring)) throw Error(Errc::RingMismatch, "modules over different rings");
  const int p = m.p();
  const std::size_t rows = n.dim, cols = m.dim, unknowns = rows * cols;
  if (unknowns == 0) return {};
  const std::size_t k = m.ring->dim();
  FpMatrix eq(p, k * unknowns, unknowns);
  for (std::size_t b = 0; b < k; ++b) {
    const FpMatrix& am = m.action[b];
    const FpMatrix& an = n.action[b];
    // (h am - an h)_{ij}
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::size_t r = b * unknowns + i * cols + j;
        for (std::size_t l = 0; l < cols; ++l) eq.add(r, i * cols + l, am(l, j));
        for (std::size_t l = 0; l < rows; ++l) eq.add(r, l * cols + j, -static_cast<long>(an(i, l)));
      }
  }
  std::vector<FpMatrix> out;
  for (const auto& v : linalg::nullspace(eq)) {
    FpMatrix h(p, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) h.set(i, j, v[i * cols + j]);
    out.push_back(h);
  }
  return out;
}

FpVec hom_coords(const std::vector<FpMatrix>& basis, const FpMatrix& h) {
  if (basis.empty()) {
    if (!h.is_zero()) throw Error(Errc::Mismatch, "map is not in the Hom space");
    return {};
  }
  std::vector<FpVec> cols;
  for (const auto& b : basis) cols.push_back(b.flatten());
  FpMatrix a = FpMatrix::from_columns(h.p(), h.rows() * h.cols(), cols);
  auto x = linalg::solve(a, h.flatten());
  if (!x) throw Error(Errc::Mismatch, "map is not in the Hom space");
  return *x;
}

FpMatrix hom_combination(const std::vector<FpMatrix>& basis, const FpVec& coords, std::size_t rows, std::size_t cols) {
  int p = basis.empty() ? 3 : basis[0].p();
  FpMatrix h(p, rows, cols);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (coords[i]) h = h + basis[i].scaled(coords[i]);
  return h;
}

HomModule hom_module(const FiniteModule& m, const FiniteModule& n) {
  HomModule h;
  h.basis = hom_basis(m, n);
  h.module.ring = m.ring;
  h.module.dim = h.basis.size();
  const int p = m.p();
  for (std::size_t b = 0; b < m.ring->dim(); ++b) {
    FpMatrix act(p, h.basis.size(), h.basis.size());
    for (std::size_t j = 0; j < h.basis.size(); ++j) {
      FpVec c = hom_coords(h.basis, n.action[b] * h.basis[j]);
      for (std::size_t i = 0; i < c.size(); ++i) act.set(i, j, c[i]);
    }
    h.module.action.push_back(act);
  }
  return h;
}

std::vector<CyclicPiece> decompose(const FiniteModule& m) {
  const FiniteRing& a = *m.ring;
  const int p = m.p();
  std::vector<CyclicPiece> out;
  if (m.dim == 0) return out;
  std::uint64_t size = m.size();
  if (size > (1u << 22)) throw Error(Errc::EnumerationBoundExceeded, "module too large to decompose");
  for (std::size_t k = 0; k < a.factors().size(); ++k) {
    const auto& f = a.factors()[k];
    auto pi_pow = [&](int e) { return e == 0 ? f.idempotent : a.mul(a.pow(f.uniformizer, static_cast<unsigned>(e)), f.idempotent); };
    std::vector<std::size_t> dims;
    for (int e = 0; e <= f.length; ++e) dims.push_back(linalg::rank(m.act(pi_pow(e))));
    // count[e] = number of summands with exponent exactly e
    std::vector<int> above(f.length + 1, 0);
    for (int e = 0; e < f.length; ++e)
      above[e] = static_cast<int>((dims[e] - dims[e + 1]) / static_cast<std::size_t>(f.residue_dim));
    std::vector<FpVec> soc_span;
    for (int e = f.length; e >= 1; --e) {
      int need = above[e - 1] - (e < f.length ? above[e] : 0);
      if (need == 0) continue;
      FpMatrix top = m.act(pi_pow(e - 1)), kill = m.act(pi_pow(e)), proj = m.act(f.idempotent);
      for (std::uint64_t c = 1; c < size && need > 0; ++c) {
        FpVec x = linalg::decode(static_cast<std::uint32_t>(c), p, m.dim);
        if (proj.apply(x) != x || !linalg::vzero(kill.apply(x))) continue;
        FpVec s = top.apply(x);
        if (linalg::vzero(s) || linalg::in_span(p, soc_span, s)) continue;
        std::vector<FpVec> more = soc_span;
        for (std::size_t i = 0; i < a.dim(); ++i) more.push_back(m.action[i].apply(s));
        soc_span = linalg::span_basis(p, m.dim, more);
        out.push_back(CyclicPiece{static_cast<int>(k), e, x});
        --need;
      }
      if (need > 0) throw Error(Errc::Unsupported, "module decomposition failed");
    }
  }
  return out;
}

}  // namespace hkt::modforms
