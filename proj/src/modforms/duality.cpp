#include "hkt/modforms/duality.hpp"

#include "hkt/error.hpp"

namespace hkt::modforms {

HomModule dual_module(const FiniteModule& m, const DualityCoefficient& c) {
  if (!m.ring->same_structure(*c.ring())) throw Error(Errc::RingMismatch, "module and coefficient over different rings");
  return hom_module(m.twisted(), c.module());
}

namespace {

// Matrix of can: columns are coordinates of x -> (h -> i(h(x))) in the
// basis of dd, for x running over the standard basis of m.
FpMatrix can_matrix(const FiniteModule& m, const HomModule& d, const HomModule& dd, const DualityCoefficient& c) {
  const int p = m.p();
  const std::size_t di = c.module().dim;
  FpMatrix out(p, dd.basis.size(), m.dim);
  for (std::size_t col = 0; col < m.dim; ++col) {
    FpVec x(m.dim, 0);
    x[col] = 1;
    FpMatrix ev(p, di, d.basis.size());
    for (std::size_t k = 0; k < d.basis.size(); ++k) {
      FpVec v = c.involution().apply(d.basis[k].apply(x));
      for (std::size_t r = 0; r < di; ++r) ev.set(r, k, v[r]);
    }
    FpVec coords = hom_coords(dd.basis, ev);
    for (std::size_t r = 0; r < coords.size(); ++r) out.set(r, col, coords[r]);
  }
  return out;
}

}  // namespace

FpMatrix double_dual_map(const FiniteModule& m, const DualityCoefficient& c) {
  HomModule d = dual_module(m, c);
  HomModule dd = dual_module(d.module, c);
  return can_matrix(m, d, dd, c);
}

FpMatrix double_dual_can(const FiniteModule& m, const DualityCoefficient& c) {
  FpMatrix can = double_dual_map(m, c);
  if (can.rows() != can.cols() || (can.rows() > 0 && !linalg::inverse(can)))
    throw Error(Errc::NotStrongDuality, "can: M -> M^## is not bijective (" + std::to_string(can.cols()) + " -> " +
                                            std::to_string(can.rows()) + " over F_p, rank " +
                                            std::to_string(linalg::rank(can)) + ")");
  return can;
}

bool can_dual_identity_holds(const FiniteModule& m, const DualityCoefficient& c) {
  const int p = m.p();
  HomModule d = dual_module(m, c);
  HomModule dd = dual_module(d.module, c);
  HomModule ddd = dual_module(dd.module, c);
  FpMatrix can_m = can_matrix(m, d, dd, c);
  FpMatrix can_d = can_matrix(d.module, dd, ddd, c);
  // (can_M)^#: g -> g o can_M from M^### to M^#.
  FpMatrix pull(p, d.basis.size(), ddd.basis.size());
  for (std::size_t k = 0; k < ddd.basis.size(); ++k) {
    FpMatrix comp = ddd.basis[k] * can_m;
    FpVec coords = hom_coords(d.basis, comp);
    for (std::size_t r = 0; r < coords.size(); ++r) pull.set(r, k, coords[r]);
  }
  FpMatrix id = pull * can_d;
  return id.rows() == id.cols() && (id.rows() == 0 || id.is_identity());
}

FpMatrix restrict_scalars_hom(const TwistData& d) {
  const auto& r = *d.sigma.source;
  const auto& rp = *d.sigma.target;
  if (!d.m.ring->same_structure(r) || !d.i.ring->same_structure(r) || !d.m_prime.ring->same_structure(rp) ||
      !d.i_prime.ring->same_structure(rp))
    throw Error(Errc::IncompatibleTwistData, "modules are over the wrong rings");
  if (d.m.dim != d.m_prime.dim || d.i.dim != d.i_prime.dim)
    throw Error(Errc::IncompatibleTwistData, "module dimensions do not match");
  if (d.sigma_m_prime.rows() != d.m.dim || d.sigma_m_prime.cols() != d.m_prime.dim || d.sigma_i.rows() != d.i_prime.dim ||
      d.sigma_i.cols() != d.i.dim)
    throw Error(Errc::IncompatibleTwistData, "twist matrices have the wrong size");
  if (!linalg::inverse(d.sigma.matrix)) throw Error(Errc::IncompatibleTwistData, "sigma is not an isomorphism");
  // sigma_I(a x) = sigma(a) sigma_I(x) and sigma_{M'}(sigma(a) x) = a sigma_{M'}(x).
  for (std::size_t j = 0; j < r.dim(); ++j) {
    Code a = r.basis(j);
    if (d.sigma_i * d.i.action[j] != d.i_prime.act(d.sigma(a)) * d.sigma_i)
      throw Error(Errc::IncompatibleTwistData, "sigma_I is not semilinear");
    if (d.sigma_m_prime * d.m_prime.act(d.sigma(a)) != d.m.action[j] * d.sigma_m_prime)
      throw Error(Errc::IncompatibleTwistData, "sigma_M' is not semilinear");
  }
  auto src = hom_basis(d.m, d.i);
  auto dst = hom_basis(d.m_prime, d.i_prime);
  const int p = r.p();
  FpMatrix out(p, dst.size(), src.size());
  for (std::size_t k = 0; k < src.size(); ++k) {
    FpVec coords = hom_coords(dst, d.sigma_i * src[k] * d.sigma_m_prime);
    for (std::size_t i = 0; i < coords.size(); ++i) out.set(i, k, coords[i]);
  }
  if (out.rows() != out.cols() || (out.rows() > 0 && !linalg::inverse(out)))
    throw Error(Errc::IncompatibleTwistData, "transport map is not bijective");
  return out;
}

}  // namespace hkt::modforms
