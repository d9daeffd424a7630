#include "hkt/modforms/witt.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hkt/error.hpp"

namespace hkt::modforms {

namespace {

constexpr std::uint16_t kUnvisited = 0xFFFF;
constexpr std::uint16_t kDegenerateLabel = 0xFFFE;

void shapes_rec(const std::vector<CyclicType>& types, std::size_t start, int remaining, std::vector<CyclicType>& cur,
                std::vector<std::vector<CyclicType>>& out) {
  out.push_back(cur);
  for (std::size_t t = start; t < types.size(); ++t) {
    if (types[t].exponent > remaining) continue;
    cur.push_back(types[t]);
    shapes_rec(types, t, remaining - types[t].exponent, cur, out);
    cur.pop_back();
  }
}

int shape_length(const std::vector<CyclicType>& s) {
  int l = 0;
  for (const auto& t : s) l += t.exponent;
  return l;
}

// F_p basis of canonical representatives of A/J as ring codes.
std::vector<Code> quotient_basis(const FiniteRing& a, const TypeInfo& info) {
  std::vector<FpVec> vs;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Code r = info.reduce[a.basis(i)];
    if (r) vs.push_back(a.vec(r));
  }
  std::vector<Code> out;
  for (const auto& v : linalg::span_basis(a.p(), a.dim(), vs)) out.push_back(info.reduce[a.code(v)]);
  return out;
}

// F_p basis of {x in A : x J_k in J_m} modulo J_m.
std::vector<Code> transvection_scalars(const FiniteRing& a, const TypeInfo& from, const TypeInfo& to) {
  const int p = a.p();
  const std::size_t n = a.dim();
  std::vector<FpVec> rows;
  for (Code j : from.ideal_gens) {
    // x -> reduce_to(x j), linear in x
    FpMatrix m(p, n, n);
    for (std::size_t l = 0; l < n; ++l) {
      FpVec c = a.vec(to.reduce[a.mul(a.basis(l), j)]);
      for (std::size_t i = 0; i < n; ++i) m.set(i, l, c[i]);
    }
    for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
  }
  std::vector<FpVec> sol;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n; ++i) sol.push_back(a.vec(a.basis(i)));
  } else {
    sol = linalg::nullspace(FpMatrix::from_rows(p, n, rows));
  }
  std::vector<FpVec> reduced;
  for (const auto& s : sol) {
    Code r = to.reduce[a.code(s)];
    if (r) reduced.push_back(a.vec(r));
  }
  std::vector<Code> out;
  for (const auto& v : linalg::span_basis(p, n, reduced)) out.push_back(to.reduce[a.code(v)]);
  return out;
}

std::string factor_string(std::int64_t d) { return d == 0 ? "Z" : "Z/" + std::to_string(d); }

}  // namespace

WittComputation::WittComputation(FiniteRingPtr a, CoefficientPtr c, int eps, int bound, WittOptions opts)
    : a_(std::move(a)), c_(std::move(c)), eps_(eps), bound_(bound), opts_(opts) {
  if (eps != 1 && eps != -1) throw Error(Errc::InvalidArgument, "eps must be +1 or -1");
  if (bound < 0) throw Error(Errc::InvalidArgument, "bound must be non-negative");
  if (!a_->same_structure(*c_->ring())) throw Error(Errc::RingMismatch, "coefficient over a different ring");
  types_ = FLModule::types(*a_);
  build_shapes();
  for (std::size_t s = 0; s < shapes_.size(); ++s) enumerate(shapes_[s], s);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    classes_[c].metabolic = find_lagrangian(class_form(c), opts_.lagrangian_bound).has_value();
}

void WittComputation::build_shapes() {
  std::vector<std::vector<CyclicType>> raw;
  std::vector<CyclicType> cur;
  shapes_rec(types_, 0, bound_, cur, raw);
  std::stable_sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
    int lx = shape_length(x), ly = shape_length(y);
    if (lx != ly) return lx < ly;
    return x < y;
  });
  const FiniteRing& a = *a_;
  std::uint64_t used = 0;
  for (const auto& shape : raw) {
    Shape s{FLModule(a_, shape, ~std::uint64_t{0}), {}, {}, {}, 1, {}, {}, {}};
    const std::size_t r = shape.size();
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) {
        std::vector<Code> gens = s.module.summand(j).ideal_gens;
        for (Code g : s.module.summand(i).sigma_ideal_gens) gens.push_back(g);
        std::vector<Code> allowed;
        for (Code v : c_->annihilated_by(gens))
          if (i != j || c_->signed_inv(eps_, v) == v) allowed.push_back(v);
        std::vector<std::int32_t> pos(c_->size(), -1);
        for (std::size_t k = 0; k < allowed.size(); ++k) pos[allowed[k]] = static_cast<std::int32_t>(k);
        s.stride.push_back(s.total);
        if (s.total > opts_.budget / allowed.size())
          throw Error(Errc::EnumerationBoundExceeded, "too many Gram tables for shape " + s.module.shape_string());
        s.total *= allowed.size();
        s.allowed.push_back(std::move(allowed));
        s.pos.push_back(std::move(pos));
      }
    used += s.total;
    if (used > opts_.budget) throw Error(Errc::EnumerationBoundExceeded, "Gram table budget exceeded at length bound " + std::to_string(bound_));
    // Automorphism generators.
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t i = 0; i < r;) {
      std::size_t j = i;
      while (j < r && shape[j] == shape[i]) ++j;
      blocks.emplace_back(i, j);
      i = j;
    }
    for (const auto& [b, e] : blocks) {
      const TypeInfo& info = s.module.summand(b);
      if (e - b >= 2) {
        Op sw{Op::Perm, {}, 0, 0, 0};
        sw.perm.resize(r);
        std::iota(sw.perm.begin(), sw.perm.end(), 0);
        std::swap(sw.perm[b], sw.perm[b + 1]);
        s.ops.push_back(sw);
      }
      if (e - b >= 3) {
        Op cy{Op::Perm, {}, 0, 0, 0};
        cy.perm.resize(r);
        std::iota(cy.perm.begin(), cy.perm.end(), 0);
        for (std::size_t t = 0; t < e - b; ++t) cy.perm[b + t] = b + (t + 1) % (e - b);
        s.ops.push_back(cy);
      }
      for (Code u : a.unit_generators())
        if (info.reduce[u] != info.reduce[a.one()]) s.ops.push_back(Op{Op::Scale, {}, b, 0, u});
      if (e - b >= 2)
        for (Code x : quotient_basis(a, info)) s.ops.push_back(Op{Op::Transvect, {}, b, b + 1, x});
    }
    for (const auto& [bk, ek] : blocks)
      for (const auto& [bm, em] : blocks) {
        if (bk == bm) continue;
        for (Code x : transvection_scalars(a, s.module.summand(bk), s.module.summand(bm)))
          s.ops.push_back(Op{Op::Transvect, {}, bk, bm, x});
      }
    shapes_.push_back(std::move(s));
  }
}

std::vector<Code> WittComputation::decode(const Shape& s, std::uint64_t index) const {
  const std::size_t r = s.module.rank();
  std::vector<Code> g(r * r);
  std::size_t slot = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j, ++slot) {
      const auto& al = s.allowed[slot];
      Code v = al[index % al.size()];
      index /= al.size();
      g[i * r + j] = v;
      if (i != j) g[j * r + i] = c_->signed_inv(eps_, v);
    }
  return g;
}

std::optional<std::uint64_t> WittComputation::encode(const Shape& s, const std::vector<Code>& g) const {
  const std::size_t r = s.module.rank();
  std::uint64_t idx = 0;
  std::size_t slot = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j, ++slot) {
      std::int32_t p = s.pos[slot][g[i * r + j]];
      if (p < 0) return std::nullopt;
      idx += s.stride[slot] * static_cast<std::uint64_t>(p);
    }
  return idx;
}

std::vector<Code> WittComputation::apply(const Shape& s, const Op& op, const std::vector<Code>& g) const {
  const FiniteRing& a = *a_;
  const DualityCoefficient& c = *c_;
  const std::size_t r = s.module.rank();
  std::vector<Code> h = g;
  switch (op.kind) {
    case Op::Perm:
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) h[i * r + j] = g[op.perm[i] * r + op.perm[j]];
      break;
    case Op::Scale: {
      const std::size_t k = op.k;
      const Code su = a.sigma(op.a);
      for (std::size_t l = 0; l < r; ++l) {
        if (l == k) continue;
        h[k * r + l] = c.act(su, g[k * r + l]);
        h[l * r + k] = c.act(op.a, g[l * r + k]);
      }
      h[k * r + k] = c.act(a.mul(su, op.a), g[k * r + k]);
      break;
    }
    case Op::Transvect: {
      const std::size_t k = op.k, m = op.m;
      const Code x = op.a, sx = a.sigma(op.a);
      for (std::size_t l = 0; l < r; ++l) {
        if (l == k) continue;
        h[k * r + l] = c.add(g[k * r + l], c.act(sx, g[m * r + l]));
        h[l * r + k] = c.add(g[l * r + k], c.act(x, g[l * r + m]));
      }
      Code d = c.add(g[k * r + k], c.act(sx, g[m * r + k]));
      d = c.add(d, c.act(x, g[k * r + m]));
      d = c.add(d, c.act(a.mul(sx, x), g[m * r + m]));
      h[k * r + k] = d;
      break;
    }
  }
  return h;
}

void WittComputation::enumerate(Shape& s, std::size_t shape_index) {
  s.labels.assign(s.total, kUnvisited);
  std::uint16_t next = 0;
  std::vector<std::uint64_t> stack;
  for (std::uint64_t idx = 0; idx < s.total; ++idx) {
    if (s.labels[idx] != kUnvisited) continue;
    HermitianForm rep(s.module, c_, decode(s, idx), eps_);
    std::uint16_t label = kDegenerateLabel;
    if (rep.is_nondegenerate()) {
      if (next >= kDegenerateLabel) throw Error(Errc::Unsupported, "too many isometry classes in one shape");
      label = next++;
    }
    std::uint64_t orbit = 1;
    s.labels[idx] = label;
    stack.push_back(idx);
    while (!stack.empty()) {
      std::uint64_t cur = stack.back();
      stack.pop_back();
      std::vector<Code> g = decode(s, cur);
      for (const auto& op : s.ops) {
        auto nxt = encode(s, apply(s, op, g));
        if (!nxt) throw Error(Errc::Unsupported, "automorphism left the space of Gram tables");
        if (s.labels[*nxt] == kUnvisited) {
          s.labels[*nxt] = label;
          stack.push_back(*nxt);
          ++orbit;
        }
      }
    }
    if (label != kDegenerateLabel) {
      s.class_ids.push_back(classes_.size());
      classes_.push_back(FormClass{shape_index, idx, orbit, s.module.length(), false});
    }
  }
}

HermitianForm WittComputation::class_form(std::size_t c) const {
  const auto& cl = classes_.at(c);
  return table_form(cl.shape, cl.rep);
}

HermitianForm WittComputation::table_form(std::size_t shape, std::uint64_t index) const {
  const Shape& s = shapes_.at(shape);
  return HermitianForm(s.module, c_, decode(s, index), eps_);
}

std::size_t WittComputation::class_of_table(std::size_t shape, std::uint64_t index) const {
  const Shape& s = shapes_.at(shape);
  std::uint16_t l = s.labels.at(index);
  return l == kDegenerateLabel ? kDegenerate : s.class_ids[l];
}

std::size_t WittComputation::classify(const HermitianForm& f) const {
  if (!f.coefficient()->same(*c_) || f.eps() != eps_) throw Error(Errc::CoefficientMismatch, "form does not match the computation");
  if (f.length() > bound_) throw Error(Errc::EnumerationBoundExceeded, "form is longer than the enumeration bound");
  const std::size_t r = f.rank();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  const auto& shape = f.module().shape();
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return shape[x] < shape[y]; });
  std::vector<CyclicType> sorted;
  for (std::size_t i : perm) sorted.push_back(shape[i]);
  std::vector<Code> g(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g[i * r + j] = f.entry(perm[i], perm[j]);
  for (std::size_t si = 0; si < shapes_.size(); ++si) {
    if (shapes_[si].module.shape() != sorted) continue;
    auto idx = encode(shapes_[si], g);
    if (!idx) throw Error(Errc::NotSesquilinear, "Gram table outside the enumerated space");
    std::size_t c = class_of_table(si, *idx);
    if (c == kDegenerate) throw Error(Errc::Degenerate, "form is degenerate");
    return c;
  }
  throw Error(Errc::Mismatch, "shape not enumerated");
}

std::size_t WittComputation::lookup_sum(std::size_t c1, std::size_t c2) const {
  return classify(orthogonal_sum(class_form(c1), class_form(c2)));
}

std::size_t WittComputation::classes_up_to(int b) const {
  std::size_t n = 0;
  while (n < classes_.size() && classes_[n].length <= b) ++n;
  return n;
}

std::vector<linalg::IntVec> WittComputation::relations(int b) const {
  const std::size_t n = classes_up_to(b);
  std::vector<linalg::IntVec> rows;
  for (std::size_t c = 0; c < n; ++c)
    if (classes_[c].metabolic) {
      linalg::IntVec v(n, 0);
      v[c] = 1;
      rows.push_back(v);
    }
  // [M] = [(Rx)^perp / Rx] for isotropic x, which stays within the bound
  for (std::size_t c = 0; c < n; ++c) {
    if (classes_[c].length == 0 || classes_[c].metabolic) continue;
    HermitianForm f = class_form(c);
    const FLModule& m = f.module();
    std::set<std::size_t> seen;
    for (std::uint64_t i = 1; i < m.size(); ++i) {
      FLModule::Elem x = m.element(i);
      if (f.eval(x, x) != 0) continue;
      std::size_t s = classify(isotropic_reduction(f, x));
      if (s == c || !seen.insert(s).second) continue;
      linalg::IntVec v(n, 0);
      v[c] += 1;
      v[s] -= 1;
      rows.push_back(v);
    }
  }
  for (std::size_t c1 = 0; c1 < n; ++c1) {
    if (classes_[c1].length == 0) continue;
    for (std::size_t c2 = c1; c2 < n; ++c2) {
      if (classes_[c2].length == 0 || classes_[c1].length + classes_[c2].length > b) continue;
      std::size_t s = lookup_sum(c1, c2);
      linalg::IntVec v(n, 0);
      v[s] += 1;
      v[c1] -= 1;
      v[c2] -= 1;
      rows.push_back(v);
    }
  }
  return rows;
}

PresentationData present(const WittComputation& w, int b) {
  const std::size_t n = w.classes_up_to(b);
  linalg::RowLattice lat(n);
  for (auto& r : w.relations(b)) lat.insert(r);
  linalg::IntMatrix basis = lat.basis();
  PresentationData out;
  linalg::IntMatrix v = linalg::int_identity(n);
  std::vector<std::int64_t> diag(n, 0);
  if (!basis.empty() && n > 0) {
    auto snf = linalg::smith_normal_form(basis, n);
    v = snf.V;
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i) diag[i] = snf.diagonal[i];
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (diag[i] != 1) {
      kept.push_back(i);
      out.invariant_factors.push_back(diag[i]);
      out.full_diagonal.push_back(diag[i]);
    }
  for (std::size_t c = 0; c < n; ++c) {
    linalg::IntVec row;
    for (std::size_t i : kept) {
      std::int64_t x = v[c][i];
      if (diag[i] > 0) x = ((x % diag[i]) + diag[i]) % diag[i];
      row.push_back(x);
    }
    out.coords.push_back(row);
  }
  return out;
}

bool stable_between(const WittComputation& w, int b) {
  if (b < 1) return false;
  PresentationData hi = present(w, b), lo = present(w, b - 1);
  if (hi.invariant_factors != lo.invariant_factors) return false;
  const std::size_t m = hi.invariant_factors.size();
  if (m == 0) return true;
  linalg::RowLattice lat(m);
  const std::size_t nlo = w.classes_up_to(b - 1);
  for (std::size_t c = 0; c < nlo; ++c) lat.insert(hi.coords[c]);
  for (std::size_t i = 0; i < m; ++i)
    if (hi.full_diagonal[i] > 0) {
      linalg::IntVec e(m, 0);
      e[i] = hi.full_diagonal[i];
      lat.insert(e);
    }
  auto basis = lat.basis();
  if (basis.size() < m) return false;
  auto snf = linalg::smith_normal_form(basis, m);
  for (std::size_t i = 0; i < m; ++i)
    if (snf.diagonal[i] != 1) return false;
  return true;
}

WittGroupPresentation witt_presentation(const WittComputation& w) {
  WittGroupPresentation out;
  out.bound = w.bound();
  out.eps = w.eps();
  out.ring = w.ring()->descriptor();
  out.coefficient = w.coefficient()->label();
  PresentationData pd = present(w, w.bound());
  out.invariant_factors = pd.invariant_factors;
  for (std::size_t c = 0; c < w.classes_up_to(w.bound()); ++c) {
    const auto& cl = w.classes()[c];
    HermitianForm f = w.class_form(c);
    out.classes.push_back(WittClassEntry{c, cl.length, f.module().shape_string(), f.gram_string(), cl.orbit_size,
                                         cl.metabolic, pd.coords[c]});
  }
  if (w.bound() < 1) {
    out.stable = false;
    out.stability_note = "bound 0 has no smaller bound to compare with";
  } else {
    out.stable = stable_between(w, w.bound());
    out.stability_note = out.stable ? "bounds " + std::to_string(w.bound() - 1) + " and " + std::to_string(w.bound()) + " agree"
                                    : "presentation changes between bounds " + std::to_string(w.bound() - 1) + " and " +
                                          std::to_string(w.bound());
  }
  return out;
}

WittGroupPresentation witt_group(FiniteRingPtr a, CoefficientPtr c, int eps, int bound, WittOptions opts) {
  WittComputation w(std::move(a), std::move(c), eps, bound, opts);
  return witt_presentation(w);
}

WittGroupPresentation witt_of_product_with_swap(const rings::RingWithInvolution& k, int bound, WittOptions opts) {
  if (!k.ring().is_field() || !k.ring().is_finite()) throw Error(Errc::UnsupportedField, "product with swap needs a finite field");
  rings::Ring prod = rings::Ring::product(k.ring());
  auto a = FiniteRing::from(rings::named_involution(prod, "swap"));
  return witt_group(a, DualityCoefficient::standard(a), 1, bound, opts);
}

std::string WittGroupPresentation::group_string() const {
  if (invariant_factors.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) s += (i ? " x " : "") + factor_string(invariant_factors[i]);
  return s;
}

std::string WittGroupPresentation::to_text() const {
  std::ostringstream os;
  os << "ring: " << ring << "\n";
  os << "coefficient: " << coefficient << "\n";
  os << "eps: " << (eps > 0 ? "+1" : "-1") << "\n";
  os << "bound: " << bound << "\n";
  os << "classes:\n";
  for (const auto& c : classes) {
    os << "  [" << c.id << "] length " << c.length << ", " << c.shape << ", gram " << c.gram << ", orbit " << c.orbit_size
       << (c.metabolic ? ", metabolic" : "") << " -> (";
    for (std::size_t i = 0; i < c.element.size(); ++i) os << (i ? "," : "") << c.element[i];
    os << ")\n";
  }
  os << "stability: " << stability_note << "\n";
  os << "group: " << group_string() << (stable ? " (stable)" : " (unstable)") << "\n";
  return os.str();
}

std::string WittGroupPresentation::to_json() const {
  nlohmann::ordered_json j;
  j["ring"] = ring;
  j["coefficient"] = coefficient;
  j["eps"] = eps;
  j["bound"] = bound;
  j["invariant_factors"] = invariant_factors;
  j["group"] = group_string();
  j["stable"] = stable;
  j["stability_note"] = stability_note;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : classes) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["length"] = c.length;
    e["shape"] = c.shape;
    e["gram"] = c.gram;
    e["orbit_size"] = c.orbit_size;
    e["metabolic"] = c.metabolic;
    e["element"] = c.element;
    arr.push_back(e);
  }
  j["classes"] = arr;
  return j.dump(2);
}

}  // namespace hkt::modforms
