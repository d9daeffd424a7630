#include "hkt/modforms/form.hpp"

#include <algorithm>
#include <set>

#include "hkt/error.hpp"

namespace hkt::modforms {

using Elem = HermitianForm::Elem;

HermitianForm::HermitianForm(FLModule m, CoefficientPtr c, std::vector<Code> gram, int eps)
    : m_(std::move(m)), c_(std::move(c)), gram_(std::move(gram)), eps_(eps) {
  if (eps_ != 1 && eps_ != -1) throw Error(Errc::InvalidArgument, "eps must be +1 or -1");
  if (!m_.ring()->same_structure(*c_->ring())) throw Error(Errc::RingMismatch, "module and coefficient over different rings");
  const std::size_t r = m_.rank();
  if (gram_.size() != r * r) throw Error(Errc::InvalidArgument, "Gram table must be rank x rank");
  const FiniteRing& a = *m_.ring();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      Code v = entry(i, j);
      if (v >= c_->size()) throw Error(Errc::InvalidArgument, "Gram entry out of range");
      for (Code x : m_.summand(j).ideal_gens)
        if (c_->act(x, v) != 0)
          throw Error(Errc::NotSesquilinear, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") is not killed by the annihilator of the second argument");
      for (Code x : m_.summand(i).sigma_ideal_gens)
        if (c_->act(x, v) != 0)
          throw Error(Errc::NotSesquilinear, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") is not killed by the twisted annihilator of the first argument");
    }
  // eps-symmetry on every pair of F_p basis vectors b g_i.
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t s = 0; s < a.dim(); ++s)
        for (std::size_t t = 0; t < a.dim(); ++t) {
          Elem x = m_.act(a.basis(s), m_.generator(i));
          Elem y = m_.act(a.basis(t), m_.generator(j));
          if (eval(y, x) != c_->signed_inv(eps_, eval(x, y)))
            throw Error(Errc::NotEpsilonSymmetric, "b(y,x) != eps*i(b(x,y)) for generators " + std::to_string(i) +
                                                       ", " + std::to_string(j));
        }
}

Code HermitianForm::eval(const Elem& x, const Elem& y) const {
  const FiniteRing& a = *m_.ring();
  const std::size_t r = m_.rank();
  Code acc = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    Code sx = a.sigma(x[i]);
    for (std::size_t j = 0; j < r; ++j)
      if (y[j] != 0) acc = c_->add(acc, c_->act(a.mul(sx, y[j]), gram_[i * r + j]));
  }
  return acc;
}

bool HermitianForm::is_nondegenerate() const {
  const std::size_t r = m_.rank();
  if (r == 0) return true;
  const int p = m_.ring()->p();
  const std::size_t n = m_.fp_dim(), d = c_->module().dim;
  FpMatrix adj(p, r * d, n);
  for (std::size_t col = 0; col < n; ++col) {
    FpVec e(n, 0);
    e[col] = 1;
    Elem y = m_.from_fp(e);
    for (std::size_t i = 0; i < r; ++i) {
      FpVec v = c_->vec(eval(m_.generator(i), y));
      for (std::size_t k = 0; k < d; ++k) adj.set(i * d + k, col, v[k]);
    }
  }
  if (linalg::rank(adj) != n) return false;
  std::uint64_t hom = 1;
  for (std::size_t i = 0; i < r; ++i) hom *= c_->annihilated_by(m_.summand(i).sigma_ideal_gens).size();
  return hom == m_.size();
}

std::string HermitianForm::gram_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rank(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < rank(); ++j) s += (j ? "," : "") + c_->name(entry(i, j));
    s += "]";
  }
  return s + "]";
}

HermitianForm make_form(FLModule m, CoefficientPtr c, std::vector<Code> gram, int eps) {
  return HermitianForm(std::move(m), std::move(c), std::move(gram), eps);
}

HermitianForm make_form(FLModule m, CoefficientPtr c, const std::vector<std::vector<std::string>>& gram, int eps) {
  std::vector<Code> g;
  for (const auto& row : gram) {
    if (row.size() != gram.size()) throw Error(Errc::InvalidArgument, "Gram table must be square");
    for (const auto& e : row) g.push_back(c->parse(e));
  }
  return HermitianForm(std::move(m), std::move(c), std::move(g), eps);
}

HermitianForm zero_form(FiniteRingPtr a, CoefficientPtr c, int eps) {
  return HermitianForm(FLModule(std::move(a), {}), std::move(c), {}, eps);
}

HermitianForm diagonal_form(FiniteRingPtr a, CoefficientPtr c, const std::vector<Code>& diag, int eps) {
  if (!a->is_local() || a->factors()[0].length != 1) throw Error(Errc::Unsupported, "diagonal forms need a field");
  std::vector<CyclicType> shape(diag.size(), CyclicType{0, 1});
  std::vector<Code> g(diag.size() * diag.size(), 0);
  for (std::size_t i = 0; i < diag.size(); ++i) g[i * diag.size() + i] = diag[i];
  return HermitianForm(FLModule(std::move(a), shape), std::move(c), g, eps);
}

HermitianForm orthogonal_sum(const HermitianForm& f, const HermitianForm& g) {
  if (!f.coefficient()->same(*g.coefficient()) || f.eps() != g.eps())
    throw Error(Errc::Mismatch, "orthogonal sum needs equal coefficients and signs");
  FLModule m = f.module().direct_sum(g.module());
  const std::size_t r = m.rank(), rf = f.rank();
  std::vector<Code> gram(r * r, 0);
  for (std::size_t i = 0; i < rf; ++i)
    for (std::size_t j = 0; j < rf; ++j) gram[i * r + j] = f.entry(i, j);
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::size_t j = 0; j < g.rank(); ++j) gram[(rf + i) * r + rf + j] = g.entry(i, j);
  return HermitianForm(std::move(m), f.coefficient(), std::move(gram), f.eps());
}

HermitianForm negate(const HermitianForm& f) {
  std::vector<Code> gram = f.gram();
  for (Code& c : gram) c = f.coefficient()->neg(c);
  return HermitianForm(f.module(), f.coefficient(), std::move(gram), f.eps());
}

HermitianForm form_from_pairing(const FiniteModule& m, CoefficientPtr c, int eps,
                                const std::function<Code(const FpVec&, const FpVec&)>& b) {
  auto pieces = decompose(m);
  std::vector<CyclicType> shape;
  for (const auto& pc : pieces) shape.push_back({pc.factor, pc.exponent});
  const std::size_t r = pieces.size();
  std::vector<Code> gram(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) gram[i * r + j] = b(pieces[i].generator, pieces[j].generator);
  return HermitianForm(FLModule(m.ring, shape), std::move(c), std::move(gram), eps);
}

namespace {

std::vector<Elem> all_elements(const FLModule& m, std::uint64_t bound) {
  if (m.size() > bound) throw Error(Errc::EnumerationBoundExceeded, "module has more than " + std::to_string(bound) + " elements");
  std::vector<Elem> out;
  out.reserve(m.size());
  for (std::uint64_t i = 0; i < m.size(); ++i) out.push_back(m.element(i));
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool killed_by(const FLModule& m, const std::vector<Code>& ideal, const Elem& y) {
  for (Code j : ideal)
    if (!m.is_zero(m.act(j, y))) return false;
  return true;
}

}  // namespace

bool isometric(const HermitianForm& f, const HermitianForm& g, std::uint64_t bound) {
  if (!f.coefficient()->same(*g.coefficient())) throw Error(Errc::Mismatch, "forms have different coefficients");
  if (f.eps() != g.eps()) return false;
  auto sf = f.module().shape(), sg = g.module().shape();
  std::sort(sf.begin(), sf.end());
  std::sort(sg.begin(), sg.end());
  if (sf != sg) return false;
  const FLModule& mg = g.module();
  auto elems = all_elements(mg, bound);
  const std::size_t r = f.rank();
  const int p = mg.ring()->p();
  std::vector<std::vector<std::size_t>> cand(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t y = 0; y < elems.size(); ++y)
      if (killed_by(mg, f.module().summand(i).ideal_gens, elems[y]) && g.eval(elems[y], elems[y]) == f.entry(i, i))
        cand[i].push_back(y);
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, const std::vector<FpVec>&)> rec = [&](std::size_t i, const std::vector<FpVec>& span) {
    if (i == r) return true;
    for (std::size_t y : cand[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = g.eval(elems[chosen[j]], elems[y]) == f.entry(j, i);
      if (!ok) continue;
      std::vector<FpVec> vs = span;
      for (std::size_t b = 0; b < mg.ring()->dim(); ++b) vs.push_back(mg.to_fp(mg.act(mg.ring()->basis(b), elems[y])));
      auto next = linalg::span_basis(p, mg.fp_dim(), vs);
      std::uint64_t grown = 1;
      for (std::size_t k = span.size(); k < next.size(); ++k) grown *= static_cast<std::uint64_t>(p);
      if (grown != f.module().summand(i).reps.size()) continue;
      chosen.push_back(y);
      if (rec(i + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0, {});
}

std::optional<std::vector<Elem>> find_lagrangian(const HermitianForm& f, std::uint64_t bound) {
  const FLModule& m = f.module();
  if (m.size() == 1) return std::vector<Elem>{};
  const std::uint64_t target = isqrt(m.size());
  if (target * target != m.size()) return std::nullopt;
  auto elems = all_elements(m, bound);
  const std::size_t n = elems.size();
  std::vector<char> iso(n);
  for (std::size_t y = 0; y < n; ++y) iso[y] = f.eval(elems[y], elems[y]) == 0;
  const int p = m.ring()->p();
  std::set<std::vector<std::uint64_t>> visited;
  std::vector<Elem> gens;
  std::function<bool(const std::vector<char>&, std::uint64_t)> dfs = [&](const std::vector<char>& member, std::uint64_t count) {
    std::vector<std::size_t> perp;
    for (std::size_t y = 0; y < n; ++y) {
      bool ok = true;
      for (const auto& l : gens)
        if (f.eval(l, elems[y]) != 0) {
          ok = false;
          break;
        }
      if (ok) perp.push_back(y);
    }
    if (count == target) return perp.size() == count;
    for (std::size_t y : perp) {
      if (member[y] || !iso[y]) continue;
      gens.push_back(elems[y]);
      auto basis = m.span_fp(gens);
      std::uint64_t size = 1;
      for (std::size_t k = 0; k < basis.size(); ++k) size *= static_cast<std::uint64_t>(p);
      if (size <= target) {
        std::vector<std::uint64_t> key;
        std::vector<char> next(n, 0);
        for (std::uint64_t c = 0; c < size; ++c) {
          FpVec v(m.fp_dim(), 0);
          std::uint64_t cc = c;
          for (const auto& bv : basis) {
            v = linalg::vadd(v, linalg::vscale(bv, static_cast<int>(cc % static_cast<std::uint64_t>(p)), p), p);
            cc /= static_cast<std::uint64_t>(p);
          }
          std::uint64_t idx = m.index(m.from_fp(v));
          next[idx] = 1;
          key.push_back(idx);
        }
        std::sort(key.begin(), key.end());
        if (visited.insert(key).second && dfs(next, size)) return true;
      }
      gens.pop_back();
    }
    return false;
  };
  std::vector<char> member(n, 0);
  member[0] = 1;
  if (dfs(member, 1)) return gens;
  return std::nullopt;
}

HermitianForm isotropic_reduction(const HermitianForm& f, const Elem& x) {
  if (f.eval(x, x) != 0) throw Error(Errc::InvalidArgument, "element is not isotropic");
  const FLModule& m = f.module();
  const auto& c = *f.coefficient();
  const int p = m.ring()->p();
  const std::size_t d = m.fp_dim();
  // (Rx)^perp is the kernel of y -> b(y, x)
  std::vector<FpVec> cols;
  for (std::size_t j = 0; j < d; ++j) {
    FpVec e(d, 0);
    e[j] = 1;
    cols.push_back(c.vec(f.eval(m.from_fp(e), x)));
  }
  auto perp = linalg::nullspace(FpMatrix::from_columns(p, c.module().dim, cols));
  auto basis = m.span_fp({x});
  const std::size_t nn = basis.size();
  std::vector<FpVec> q;
  for (const auto& v : perp) {
    if (linalg::in_span(p, linalg::span_basis(p, d, basis), v)) continue;
    basis.push_back(v);
    q.push_back(v);
  }
  FpMatrix b = FpMatrix::from_columns(p, d, basis);
  FiniteModule whole = m.as_module();
  FiniteModule sub{m.ring(), q.size(), {}};
  for (std::size_t i = 0; i < m.ring()->dim(); ++i) {
    std::vector<FpVec> acols;
    for (const auto& v : q) {
      FpVec co = *linalg::solve(b, whole.act(m.ring()->basis(i), v));
      acols.push_back(FpVec(co.begin() + nn, co.end()));
    }
    sub.action.push_back(FpMatrix::from_columns(p, q.size(), acols));
  }
  auto lift = [&](const FpVec& u) {
    FpVec v(d, 0);
    for (std::size_t j = 0; j < q.size(); ++j) v = linalg::vadd(v, linalg::vscale(q[j], u[j], p), p);
    return m.from_fp(v);
  };
  return form_from_pairing(sub, f.coefficient(), f.eps(),
                           [&](const FpVec& u, const FpVec& v) { return f.eval(lift(u), lift(v)); });
}

bool is_metabolic(const HermitianForm& f, std::uint64_t bound) {
  if (!f.is_nondegenerate()) return false;
  return find_lagrangian(f, bound).has_value();
}

bool is_lagrangian(const HermitianForm& f, const std::vector<Elem>& gens) {
  const FLModule& m = f.module();
  for (const auto& x : gens)
    for (const auto& y : gens)
      if (f.eval(x, y) != 0) return false;
  std::uint64_t size = m.span_size(gens);
  if (size * size != m.size()) return false;
  std::uint64_t perp = 0;
  for (std::uint64_t i = 0; i < m.size(); ++i) {
    Elem y = m.element(i);
    bool ok = true;
    for (const auto& x : gens)
      if (f.eval(x, y) != 0) {
        ok = false;
        break;
      }
    perp += ok;
  }
  return perp == size;
}

HermitianForm coefficient_change(const CoefficientIso& alpha, const HermitianForm& f) {
  if (!alpha.source->same(*f.coefficient())) throw Error(Errc::CoefficientMismatch, "form is not valued in the source of alpha");
  std::vector<Code> gram = f.gram();
  for (Code& c : gram) c = alpha(c);
  return HermitianForm(f.module(), alpha.target, std::move(gram), f.eps());
}

}  // namespace hkt::modforms
