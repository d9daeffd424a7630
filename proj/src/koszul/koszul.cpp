#include "hkt/koszul/koszul.hpp"

#include <map>
#include <sstream>

#include "hkt/error.hpp"
#include "hkt/rings/scalar.hpp"

namespace hkt::koszul {

using rings::Exponents;
using rings::Terms;

namespace {

bool is_free(const Ring& r, std::size_t k) { return r.var(k).degree == 0; }

int free_degree(const Ring& r, const Exponents& e) {
  int d = 0;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (is_free(r, k)) d += e[k];
  return d;
}

int free_degree(const Element& x) {
  int d = -1;
  for (const auto& [e, c] : x.terms()) d = std::max(d, free_degree(x.ring(), e));
  return d;
}

Element monomial(const Ring& r, const Exponents& e) { return r.make(Terms{{e, mpq_class(1)}}); }

void require_polynomial(const Ring& r) {
  if (r.kind() != rings::RingKind::Polynomial || !r.has_free_vars())
    throw Error(Errc::Unsupported, "Koszul data needs a polynomial ring over a field");
}

// Exponent vectors of the free variables with total degree <= d, times the
// basis monomials of the algebraic generators.
std::vector<Exponents> monomials_up_to(const Ring& r, int d) {
  const std::size_t n = r.num_vars();
  std::vector<Exponents> out{Exponents(n, 0)};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Exponents> next;
    for (const auto& e : out) {
      int used = free_degree(r, e);
      int top = is_free(r, k) ? d - used : r.var(k).degree - 1;
      for (int a = 0; a <= top; ++a) {
        Exponents f = e;
        f[k] = static_cast<std::uint16_t>(a);
        next.push_back(f);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

RegularSequenceData RegularSequenceData::make(RingWithInvolution r, std::vector<Element> seq,
                                              std::optional<Element> twist) {
  require_polynomial(r.ring());
  for (const auto& x : seq)
    if (x.ring() != r.ring()) throw Error(Errc::RingMismatch, "sequence element over a different ring");
  Element c = twist ? *twist : r.ring().one();
  if (!c.is_unit() || c * r.apply(c) != r.ring().one())
    throw Error(Errc::InvalidArgument, "line twist must be a unit with c sigma(c) = 1");
  return RegularSequenceData{std::move(r), std::move(seq), std::move(c)};
}

QuotientModel::QuotientModel(const Ring& r, const std::vector<Element>& gens) : ring_(r) {
  require_polynomial(r);
  for (const auto& x : gens) {
    if (x.is_zero()) throw Error(Errc::InvalidArgument, "zero is not part of a regular sequence");
    if (free_degree(x) == 0) throw Error(Errc::ImproperIdeal, x.to_string() + " is a unit");
  }
  if (gens.empty()) return;

  bool linear = true;
  for (const auto& x : gens) linear = linear && free_degree(x) <= 1;
  if (linear) {
    kind_ = Kind::Linear;
    std::vector<std::size_t> free;
    for (std::size_t k = 0; k < r.num_vars(); ++k)
      if (is_free(r, k)) free.push_back(k);
    const std::size_t nc = free.size() + 1;
    // rows: coefficients of the free variables, then the constant part
    std::vector<std::vector<Element>> a(gens.size(), std::vector<Element>(nc, r.zero()));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (const auto& [e, c] : gens[i].terms()) {
        Exponents base = e;
        std::size_t col = nc - 1;
        for (std::size_t f = 0; f < free.size(); ++f)
          if (e[free[f]]) {
            col = f;
            base[free[f]] = 0;
          }
        a[i][col] += r.make(Terms{{base, c}});
      }
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col + 1 < nc && row < a.size(); ++col) {
      std::size_t pr = row;
      while (pr < a.size() && a[pr][col].is_zero()) ++pr;
      if (pr == a.size()) continue;
      std::swap(a[row], a[pr]);
      Element inv = a[row][col].inverse();
      for (auto& v : a[row]) v = inv * v;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == row || a[i][col].is_zero()) continue;
        Element f = a[i][col];
        for (std::size_t j = 0; j < nc; ++j) a[i][j] -= f * a[row][j];
      }
      pivots.push_back(col);
      ++row;
    }
    for (std::size_t i = row; i < a.size(); ++i)
      if (!a[i][nc - 1].is_zero()) throw Error(Errc::ImproperIdeal, "the sequence generates the unit ideal");
    if (row < gens.size()) throw Error(Errc::InvalidArgument, "linear parts are dependent; the sequence is not regular");
    for (std::size_t k = 0; k < r.num_vars(); ++k) images_.push_back(r.gen(k));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      Element v = -a[i][nc - 1];
      for (std::size_t f = 0; f < free.size(); ++f)
        if (f != pivots[i]) v -= a[i][f] * r.gen(free[f]);
      images_[free[pivots[i]]] = v;
    }
    return;
  }

  if (gens.size() != 1) throw Error(Errc::Unsupported, "only linear sequences or one univariate polynomial are supported");
  const Element& x = gens[0];
  std::optional<std::size_t> var;
  for (const auto& [e, c] : x.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (is_free(r, k) && e[k]) {
        if (var && *var != k) throw Error(Errc::Unsupported, "nonlinear generators must be univariate");
        var = k;
      }
  kind_ = Kind::Univariate;
  var_ = *var;
  degree_ = free_degree(x);
  Element lead = r.zero();
  for (const auto& [e, c] : x.terms())
    if (e[var_] == degree_) {
      Exponents base = e;
      base[var_] = 0;
      lead += r.make(Terms{{base, c}});
    }
  monic_ = lead.inverse() * x;
}

Element QuotientModel::reduce(const Element& x) const {
  switch (kind_) {
    case Kind::Zero:
      return x;
    case Kind::Linear:
      return rings::RingMap(ring_, ring_, images_)(x);
    case Kind::Univariate: {
      Element y = x;
      for (;;) {
        auto it = y.terms().end();
        for (auto t = y.terms().begin(); t != y.terms().end(); ++t)
          if (t->first[var_] >= degree_) it = t;
        if (it == y.terms().end()) return y;
        Exponents e = it->first;
        e[var_] = static_cast<std::uint16_t>(e[var_] - degree_);
        y -= ring_.make(Terms{{e, it->second}}) * monic_;
      }
    }
  }
  return x;
}

std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t i) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == i) {
      out.push_back(cur);
      return;
    }
    for (std::size_t k = start; k < n; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Element determinant(const RMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::InvalidArgument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m.ring().one();
  if (n == 1) return m(0, 0);
  Element det = m.ring().zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    RMatrix minor(m.ring(), n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Element term = m(0, j) * determinant(minor);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

RMatrix exterior_power(const RMatrix& m, std::size_t i) {
  auto rows = wedge_basis(m.rows(), i), cols = wedge_basis(m.cols(), i);
  RMatrix out(m.ring(), rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = 0; b < cols.size(); ++b) {
      RMatrix sub(m.ring(), i, i);
      for (std::size_t r = 0; r < i; ++r)
        for (std::size_t c = 0; c < i; ++c) sub(r, c) = m(rows[a][r], cols[b][c]);
      out(a, b) = determinant(sub);
    }
  return out;
}

namespace {

FreeComplex koszul_of(const RingWithInvolution& k, const std::vector<Element>& x) {
  const std::size_t d = x.size();
  const Ring& r = k.ring();
  std::vector<std::size_t> ranks;
  for (std::size_t i = d + 1; i-- > 0;) ranks.push_back(wedge_basis(d, i).size());
  std::vector<RMatrix> diffs;
  for (std::size_t i = d; i >= 1; --i) {
    auto src = wedge_basis(d, i), dst = wedge_basis(d, i - 1);
    std::map<std::vector<std::size_t>, std::size_t> where;
    for (std::size_t b = 0; b < dst.size(); ++b) where[dst[b]] = b;
    RMatrix m(r, dst.size(), src.size());
    for (std::size_t s = 0; s < src.size(); ++s)
      for (std::size_t t = 0; t < i; ++t) {
        auto rest = src[s];
        rest.erase(rest.begin() + static_cast<long>(t));
        Element v = x[src[s][t]];
        m(where.at(rest), s) += (t % 2 == 0) ? v : -v;
      }
    diffs.push_back(std::move(m));
  }
  return FreeComplex(k, -static_cast<int>(d), std::move(ranks), std::move(diffs));
}

RMatrix reduced(const QuotientModel& q, const RMatrix& m) {
  RMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = q.reduce(m(i, j));
  return out;
}

std::string mismatch(const RMatrix& got, const RMatrix& want) {
  auto at = got.first_difference(want);
  if (!at) return "";
  if (got.rows() != want.rows() || got.cols() != want.cols()) return "shape mismatch";
  return "entry (" + std::to_string(at->first) + "," + std::to_string(at->second) + "): " +
         got(at->first, at->second).to_string() + " vs " + want(at->first, at->second).to_string();
}

}  // namespace

FreeComplex koszul_complex(const RegularSequenceData& data) {
  QuotientModel q(data.ring.ring(), data.sequence);
  FreeComplex k = koszul_of(data.ring, data.sequence);
  // the augmentation end: the image of d^{-1} is generated by the sequence
  if (data.length() > 0)
    for (std::size_t j = 0; j < data.length(); ++j)
      if (!q.contains(k.diff(-1)(0, j))) throw Error(Errc::InvalidArgument, "augmentation does not kill the image of d");
  return k;
}

BetaTilde beta_tilde(const RegularSequenceData& data, const std::optional<Element>& l) {
  QuotientModel q(data.ring.ring(), data.sequence);
  const Ring& r = data.ring.ring();
  const int d = static_cast<int>(data.length());
  FreeComplex k = koszul_complex(data);
  auto h = chaindual::hom_complex(k, FreeComplex::concentrated(data.ring, 0, 1));
  BetaTilde out{q.reduce(l ? *l : r.one()), RMatrix(r, 1, h.rank(d - 1)), false};
  // Hom(Lambda^d E, L) has the single coordinate f(e_1 ^ ... ^ e_d)
  RMatrix beta(r, 1, 1);
  beta(0, 0) = out.value;
  out.composite = reduced(q, beta * h.diff(d - 1));
  out.composite_zero = out.composite.is_zero();
  return out;
}

RMatrix transition_matrix(const RegularSequenceData& data) {
  const Ring& r = data.ring.ring();
  const std::size_t d = data.length();
  const rings::PrimeField& f = r.scalars();
  RMatrix a(r, d, d);
  if (d == 0) return a;
  int lo = free_degree(data.sequence[0]);
  for (const auto& x : data.sequence) lo = std::min(lo, free_degree(x));
  for (std::size_t i = 0; i < d; ++i) {
    Element target = data.ring.apply(data.sequence[i]);
    int bound = std::max(0, free_degree(target) - lo);
    auto mons = monomials_up_to(r, bound);
    std::vector<Element> cols;
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& m : mons) cols.push_back(monomial(r, m) * data.sequence[j]);
    std::map<Exponents, std::size_t> row_of;
    for (const auto& c : cols)
      for (const auto& [e, v] : c.terms()) row_of.emplace(e, 0);
    for (const auto& [e, v] : target.terms()) row_of.emplace(e, 0);
    std::size_t n = 0;
    for (auto& [e, idx] : row_of) idx = n++;
    rings::ScalarMatrix sys(n, rings::ScalarRow(cols.size(), 0));
    rings::ScalarRow rhs(n, 0);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [e, v] : cols[c].terms()) sys[row_of.at(e)][c] = v;
    for (const auto& [e, v] : target.terms()) rhs[row_of.at(e)] = v;
    auto sol = rings::solve(sys, rhs, f);
    if (!sol) throw Error(Errc::IdealNotInvariant, "sigma(" + data.sequence[i].to_string() + ") = " + target.to_string() +
                                                      " is not in the ideal of the sequence");
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < mons.size(); ++m) {
        const mpq_class& c = (*sol)[j * mons.size() + m];
        if (c != 0) a(i, j) += monomial(r, mons[m]).scaled(c);
      }
  }
  return a;
}

bool TransportReport::all_pass() const {
  for (const auto& s : squares)
    if (!s.pass) return false;
  return true;
}

std::string TransportReport::to_string() const {
  std::ostringstream s;
  s << "transition: " << transition.to_string() << "\n";
  for (const auto& q : squares) {
    s << q.name << ": " << (q.pass ? "pass" : "FAIL");
    if (!q.detail.empty()) s << " (" << q.detail << ")";
    s << "\n";
  }
  return s.str();
}

namespace {

struct Transport {
  TransportReport report;
  Element u, det_n;
};

Transport transport(const RegularSequenceData& data) {
  const Ring& r = data.ring.ring();
  const auto& sig = data.ring;
  const std::size_t d = data.length();
  QuotientModel q(r, data.sequence);
  Transport t{{transition_matrix(data), {}}, r.one(), r.one()};
  const RMatrix& a = t.report.transition;
  RMatrix m = a.transpose();

  std::vector<Element> sx;
  for (const auto& x : data.sequence) sx.push_back(sig.apply(x));
  RMatrix s(r, 1, d), s2(r, 1, d);
  for (std::size_t i = 0; i < d; ++i) {
    s(0, i) = data.sequence[i];
    s2(0, i) = sx[i];
  }
  SquareCheck aug{"(a) augmentation square", true, ""};
  if (s2 != s.apply(sig)) {
    aug.pass = false;
    aug.detail = "s' != sigma(s): " + mismatch(s2, s.apply(sig));
  } else if (s * m != s2) {
    aug.pass = false;
    aug.detail = "s A^T != s': " + mismatch(s * m, s2);
  }

  FreeComplex k = koszul_of(sig, data.sequence), k2 = koszul_of(sig, sx);
  SquareCheck chain{"(b) sigma_P and Lambda(A) are maps of complexes", true, ""};
  for (int p = -static_cast<int>(d); p < 0 && chain.pass; ++p) {
    if (k2.diff(p) != k.diff(p).apply(sig)) {
      chain.pass = false;
      chain.detail = "degree " + std::to_string(p) + ", semilinear square: " + mismatch(k2.diff(p), k.diff(p).apply(sig));
      break;
    }
    auto i = static_cast<std::size_t>(-p);
    RMatrix l = k.diff(p) * exterior_power(m, i), rr = exterior_power(m, i - 1) * k2.diff(p);
    if (l != rr) {
      chain.pass = false;
      chain.detail = "degree " + std::to_string(p) + ", comparison square: " + mismatch(l, rr);
    }
  }

  // sigma on Hom(Lambda^d E, L) at the top generator, then beta~, versus
  // beta~ followed by sigma_omega = sigma_L o (.) o det(sigma_N)
  SquareCheck beta{"(c) beta~ compatibility square", true, ""};
  Element top = exterior_power(m, d)(0, 0);
  Element via_hom = q.reduce(data.line_twist * sig.apply(top));
  RMatrix an = reduced(q, a);
  t.det_n = q.reduce(determinant(an));
  Element via_omega = q.reduce(data.line_twist * sig.apply(t.det_n));
  if (via_hom != via_omega) {
    beta.pass = false;
    beta.detail = via_hom.to_string() + " vs " + via_omega.to_string();
  }
  t.u = via_omega;
  SquareCheck unit{"(d) u sigma(u) = 1 in R/J", true, ""};
  Element uu = q.reduce(t.u * sig.apply(t.u));
  if (uu != q.reduce(r.one())) {
    unit.pass = false;
    unit.detail = "u sigma(u) = " + uu.to_string();
  }
  t.report.squares = {aug, chain, beta, unit};
  return t;
}

}  // namespace

TransportReport involution_transport(const RegularSequenceData& data) { return transport(data).report; }

std::string ConormalSign::u_string() const {
  if (u.is_one()) return "+1";
  if ((-u).is_one()) return "-1";
  return u.to_string();
}

ConormalSign conormal_sign(const RegularSequenceData& data) {
  auto t = transport(data);
  return ConormalSign{t.u, t.det_n, std::move(t.report)};
}

}  // namespace hkt::koszul
