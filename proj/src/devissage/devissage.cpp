#include "hkt/devissage/devissage.hpp"

#include <functional>
#include <sstream>

#include <json.hpp>

#include "hkt/error.hpp"
#include "hkt/modforms/duality.hpp"

namespace hkt::devissage {

using linalg::FpMatrix;
using linalg::FpVec;
using linalg::IntMatrix;
using linalg::IntVec;
using modforms::DualityCoefficient;
using rings::Code;

namespace {

struct LocalData {
  std::vector<FpVec> max_ideal;
  std::size_t socle_dim = 0;
  std::size_t residue_dim = 0;
};

// Maximal ideal = nilradical; socle = its annihilator.
LocalData local_data(const rings::FiniteRing& a) {
  if (!a.is_local()) throw Error(Errc::NotLocal, a.descriptor() + " is not local");
  const int p = a.p();
  const std::size_t n = a.dim();
  std::vector<FpVec> nil;
  for (Code c = 1; c < a.size(); ++c)
    if (a.is_nilpotent(c)) nil.push_back(a.vec(c));
  LocalData out;
  out.max_ideal = linalg::span_basis(p, n, nil);
  out.residue_dim = n - out.max_ideal.size();
  if (out.max_ideal.empty()) {
    out.socle_dim = n;
    return out;
  }
  // x in socle iff m_k x = 0 for every basis element m_k of the maximal ideal
  FpMatrix stack(p, out.max_ideal.size() * n, n);
  for (std::size_t k = 0; k < out.max_ideal.size(); ++k) {
    FpMatrix m = a.mult_matrix_of(a.code(out.max_ideal[k]));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stack.set(k * n + r, c, m(r, c));
  }
  out.socle_dim = n - linalg::rank(stack);
  return out;
}

std::int64_t reduce(std::int64_t x, std::int64_t d) { return d > 0 ? ((x % d) + d) % d : x; }

IntVec reduce_vec(IntVec v, const std::vector<std::int64_t>& diag) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = reduce(v[i], diag[i]);
  return v;
}

IntVec combine(const IntMatrix& rows, const IntVec& coeffs, std::size_t width) {
  IntVec out(width, 0);
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    if (coeffs[r])
      for (std::size_t j = 0; j < width; ++j)
        out[j] = linalg::checked_add(out[j], linalg::checked_mul(coeffs[r], rows[r][j]));
  return out;
}

std::string vec_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string matrix_string(const IntMatrix& m, std::size_t cols) {
  if (m.empty() || cols == 0) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "; " : "") + vec_string(m[i]);
  return s + "]";
}

nlohmann::ordered_json map_json(const ClassMapCheck& m, const std::vector<std::size_t>& class_map) {
  nlohmann::ordered_json j;
  j["matrix"] = m.matrix;
  j["class_map"] = class_map;
  j["well_defined"] = m.well_defined;
  j["injective"] = m.injective;
  j["surjective"] = m.surjective;
  j["detail"] = m.detail;
  return j;
}

std::vector<std::size_t> class_images(const WittComputation& src, const WittComputation& dst,
                                      const std::function<HermitianForm(const HermitianForm&)>& push) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < src.classes_up_to(src.bound()); ++c) out.push_back(dst.classify(push(src.class_form(c))));
  return out;
}

}  // namespace

bool is_gorenstein(const FiniteRingPtr& r) {
  LocalData d = local_data(*r);
  return d.socle_dim == d.residue_dim;
}

LocalSetup local_setup(FiniteRingPtr r) {
  LocalData d = local_data(*r);
  if (d.socle_dim != d.residue_dim)
    throw Error(Errc::NotGorenstein, r->descriptor() + " has socle of dimension " + std::to_string(d.socle_dim) +
                                         " over F_p, residue field of degree " + std::to_string(d.residue_dim));
  std::vector<Code> gens;
  for (const auto& v : d.max_ideal) gens.push_back(r->code(v));
  FiniteRingMap pi = FiniteRingMap::identity(r);
  if (!gens.empty()) {
    try {
      pi = rings::quotient(r, gens);
    } catch (const Error& e) {
      if (e.code() == Errc::IdealNotInvariant) throw Error(Errc::MaxIdealNotInvariant, e.what());
      throw;
    }
  }
  auto e = DualityCoefficient::standard(r);
  auto flat = transfer::flat_coefficient(pi, e);
  return LocalSetup{std::move(r), e, pi, std::move(flat)};
}

HermitianForm devissage_map(const LocalSetup& s, const HermitianForm& f) { return transfer::transfer_form(s.flat, f); }

ClassMapCheck check_class_map(const PresentationData& source, const PresentationData& target,
                              const std::vector<std::size_t>& class_map) {
  const std::size_t m = source.full_diagonal.size();
  const std::size_t mt = target.full_diagonal.size();
  const std::size_t n = class_map.size();
  if (n != source.coords.size()) throw Error(Errc::InvalidArgument, "class map does not cover the source classes");
  ClassMapCheck out;
  out.matrix.assign(mt, IntVec(m, 0));

  // Express each generator e_i through the classes: Hermite form of the class
  // coordinates stacked on the relations d_i e_i.
  IntMatrix a = source.coords;
  for (std::size_t i = 0; i < m; ++i)
    if (source.full_diagonal[i] > 0) {
      IntVec r(m, 0);
      r[i] = source.full_diagonal[i];
      a.push_back(r);
    }
  IntMatrix images;  // image of e_i in target coordinates
  if (m > 0) {
    auto hf = linalg::hermite_form(a, m);
    if (hf.rank < m) throw Error(Errc::InvalidArgument, "classes do not generate the source presentation");
    // H's top m x m block is upper triangular with unit pivots; invert it.
    IntMatrix hinv = linalg::int_identity(m);
    for (std::size_t i = m; i-- > 0;) {
      if (hf.H[i][i] != 1 && hf.H[i][i] != -1)
        throw Error(Errc::InvalidArgument, "classes do not generate the source presentation");
      for (std::size_t k = 0; k < m; ++k) hinv[i][k] = linalg::checked_mul(hinv[i][k], hf.H[i][i]);
      for (std::size_t j = i + 1; j < m; ++j) {
        std::int64_t h = linalg::checked_mul(hf.H[i][j], hf.H[i][i]);
        if (!h) continue;
        for (std::size_t k = 0; k < m; ++k)
          hinv[i][k] = linalg::checked_add(hinv[i][k], -linalg::checked_mul(h, hinv[j][k]));
      }
    }
    // rows i of hinv * U give e_i as combinations of the rows of a
    IntMatrix top(hf.U.begin(), hf.U.begin() + m);
    IntMatrix lam = linalg::int_mul(hinv, top, m);
    for (std::size_t i = 0; i < m; ++i) {
      IntVec img(mt, 0);
      for (std::size_t c = 0; c < n; ++c)
        if (lam[i][c]) {
          const IntVec& t = target.coords.at(class_map[c]);
          for (std::size_t j = 0; j < mt; ++j) img[j] = linalg::checked_add(img[j], linalg::checked_mul(lam[i][c], t[j]));
        }
      images.push_back(reduce_vec(img, target.full_diagonal));
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < mt; ++j) out.matrix[j][i] = images[i][j];

  std::ostringstream detail;
  out.well_defined = true;
  for (std::size_t c = 0; c < n && out.well_defined; ++c) {
    IntVec got = reduce_vec(combine(images, source.coords[c], mt), target.full_diagonal);
    const IntVec& want = target.coords.at(class_map[c]);
    if (got != want) {
      out.well_defined = false;
      detail << "class " << c << " maps to " << vec_string(want) << " but the matrix gives " << vec_string(got) << "; ";
    }
  }
  for (std::size_t i = 0; i < m && out.well_defined; ++i) {
    if (source.full_diagonal[i] == 0) continue;
    IntVec v = images[i];
    for (auto& x : v) x = linalg::checked_mul(x, source.full_diagonal[i]);
    if (reduce_vec(v, target.full_diagonal) != IntVec(mt, 0)) {
      out.well_defined = false;
      detail << "generator " << i << " has order not dividing " << source.full_diagonal[i] << "; ";
    }
  }

  // b rows: images of e_i, then the target relations d'_j e'_j
  IntMatrix b = images;
  for (std::size_t j = 0; j < mt; ++j) {
    IntVec r(mt, 0);
    r[j] = target.full_diagonal[j];
    b.push_back(r);
  }
  if (mt == 0) {
    out.surjective = true;
    out.injective = m == 0;
  } else {
    auto hf = linalg::hermite_form(b, mt);
    auto snf = linalg::smith_normal_form(b, mt);
    out.surjective = hf.rank == mt;
    for (std::size_t j = 0; j < mt && out.surjective; ++j)
      if (snf.diagonal[j] != 1) out.surjective = false;
    out.injective = true;
    for (std::size_t r = hf.rank; r < b.size() && out.injective; ++r)
      for (std::size_t i = 0; i < m; ++i) {
        std::int64_t alpha = hf.U[r][i];
        if (reduce(alpha, source.full_diagonal[i]) != 0) {
          out.injective = false;
          IntVec k(hf.U[r].begin(), hf.U[r].begin() + m);
          detail << "kernel contains " << vec_string(reduce_vec(k, source.full_diagonal)) << "; ";
          break;
        }
      }
  }
  if (!out.surjective) detail << "cokernel is nonzero; ";
  out.detail = detail.str();
  if (out.detail.empty()) out.detail = "bijective";
  return out;
}

std::string DevissageReport::verdict() const {
  if (!map.well_defined) return "NOT A HOMOMORPHISM";
  if (!map.isomorphism()) return std::string("NOT AN ISOMORPHISM") + (stable() ? " (stable)" : " (unstable)");
  return stable() ? "ISOMORPHISM (stable)" : "ISOMORPHISM (unstable)";
}

std::string DevissageReport::to_text() const {
  std::ostringstream o;
  o << "source: W(" << source.ring << ", " << source.coefficient << ", eps=" << source.eps
    << ") = " << source.group_string() << " [" << source.stability_note << "]\n";
  o << "target: W(fl " << target.ring << ", eps=" << target.eps << ") = " << target.group_string() << " ["
    << target.stability_note << "]\n";
  o << "map: " << matrix_string(map.matrix, source.invariant_factors.size()) << " (" << map.detail << ")\n";
  o << verdict() << "\n";
  return o.str();
}

std::string DevissageReport::to_json() const {
  nlohmann::ordered_json j;
  j["source"] = nlohmann::ordered_json::parse(source.to_json());
  j["target"] = nlohmann::ordered_json::parse(target.to_json());
  j["map"] = map_json(map, class_map);
  j["stable"] = stable();
  j["verdict"] = verdict();
  return j.dump(2);
}

DevissageReport verify_devissage(FiniteRingPtr r, int eps, int bound, WittOptions opts) {
  LocalSetup s = local_setup(std::move(r));
  WittComputation wk(s.pi.target, s.flat.coefficient, eps, bound, opts);
  WittComputation wr(s.ring, s.e, eps, bound, opts);
  DevissageReport out;
  out.source = modforms::witt_presentation(wk);
  out.target = modforms::witt_presentation(wr);
  out.class_map = class_images(wk, wr, [&](const HermitianForm& f) { return devissage_map(s, f); });
  out.map = check_class_map(modforms::present(wk, bound), modforms::present(wr, bound), out.class_map);
  return out;
}

std::string FactorizationReport::to_text() const {
  std::ostringstream o;
  o << "W(k) = " << residue.group_string() << ", W(R/J) = " << quotient.group_string() << ", W(R) = "
    << ring.group_string() << "\n";
  o << "diagram: " << (diagram_commutes ? "commutes" : "does not commute") << " on " << classes_checked << " classes";
  if (!diagram_detail.empty()) o << " (" << diagram_detail << ")";
  o << "\n";
  o << "p_*: " << matrix_string(p_star.matrix, quotient.invariant_factors.size()) << " ("
    << (p_star.isomorphism() ? "bijective" : p_star.detail) << ")\n";
  o << (verified() ? "FACTORIZATION VERIFIED" : "FACTORIZATION FAILED") << "\n";
  return o.str();
}

std::string FactorizationReport::to_json() const {
  nlohmann::ordered_json j;
  j["residue"] = nlohmann::ordered_json::parse(residue.to_json());
  j["quotient"] = nlohmann::ordered_json::parse(quotient.to_json());
  j["ring"] = nlohmann::ordered_json::parse(ring.to_json());
  j["diagram_commutes"] = diagram_commutes;
  j["classes_checked"] = classes_checked;
  j["p_star"] = map_json(p_star, p_class_map);
  j["verified"] = verified();
  return j.dump(2);
}

FactorizationReport verify_localcase_factorization(FiniteRingPtr r, const std::vector<Code>& j, int eps, int bound,
                                                   WittOptions opts) {
  local_setup(r);  // R itself must be Gorenstein local with invariant maximal ideal
  FiniteRingMap p = j.empty() ? FiniteRingMap::identity(r) : rings::quotient(r, j);
  FiniteRingPtr rj = p.target;
  if (!rj->is_local() || !is_gorenstein(rj))
    throw Error(Errc::NotGorensteinQuotient, rj->descriptor() + " is not Gorenstein local");
  FiniteRingMap q = local_setup(rj).pi;
  auto e = DualityCoefficient::standard(r);
  transfer::Gamma g = transfer::compose_flats_gamma(p, q, e);

  WittComputation wk(q.target, g.outer.coefficient, eps, bound, opts);
  WittComputation wj(rj, g.inner.coefficient, eps, bound, opts);
  WittComputation wr(r, e, eps, bound, opts);
  FactorizationReport out;
  out.residue = modforms::witt_presentation(wk);
  out.quotient = modforms::witt_presentation(wj);
  out.ring = modforms::witt_presentation(wr);

  out.diagram_commutes = true;
  const std::size_t nk = wk.classes_up_to(bound);
  for (std::size_t c = 0; c < nk; ++c) {
    HermitianForm f = wk.class_form(c);
    std::size_t two_step = wr.classify(transfer::transfer_form(g.inner, transfer::transfer_form(g.outer, f)));
    std::size_t direct = wr.classify(transfer::transfer_form(g.direct, modforms::coefficient_change(g.iso, f)));
    ++out.classes_checked;
    if (two_step != direct) {
      out.diagram_commutes = false;
      out.diagram_detail = "class " + std::to_string(c) + " goes to " + std::to_string(two_step) + " and " +
                           std::to_string(direct);
      break;
    }
  }
  out.p_class_map = class_images(wj, wr, [&](const HermitianForm& f) { return transfer::transfer_form(g.inner, f); });
  out.p_star = check_class_map(modforms::present(wj, bound), modforms::present(wr, bound), out.p_class_map);
  return out;
}

}  // namespace hkt::devissage
