#include "hkt/rings/ring.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hkt/error.hpp"

namespace hkt::rings {

struct Ring::Data {
  unsigned long p = 0;
  PrimeField scalars;
  RingKind kind = RingKind::Rationals;
  FieldInfo field;
  std::vector<Variable> vars;
  std::string descriptor;
  int product_var = -1;
};

namespace {

void add_term(Terms& t, const Exponents& e, const mpq_class& c, const PrimeField& f) {
  if (c == 0) return;
  auto it = t.find(e);
  if (it == t.end()) {
    mpq_class v = c;
    f.reduce(v);
    if (v != 0) t.emplace(e, std::move(v));
    return;
  }
  it->second += c;
  f.reduce(it->second);
  if (it->second == 0) t.erase(it);
}

Exponents pad(const Exponents& e, std::size_t n) {
  Exponents r = e;
  r.resize(n, 0);
  return r;
}

Terms pad_terms(const Terms& t, std::size_t n) {
  Terms r;
  for (const auto& [e, c] : t) r.emplace(pad(e, n), c);
  return r;
}

std::string wrap(const std::string& s) {
  return s.find(" x ") == std::string::npos ? s : "(" + s + ")";
}

// Univariate helpers over F_p for picking a default field polynomial.
using UPoly = std::vector<long>;  // low to high, trimmed

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly umod(UPoly a, const UPoly& b, long p) {
  trim(a);
  long inv = 1;
  for (long x = 1; x < p; ++x)
    if ((x * b.back()) % p == 1) inv = x;
  while (a.size() >= b.size()) {
    long c = (a.back() * inv) % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = ((a[i + shift] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

bool irreducible(const UPoly& f, long p) {
  int k = static_cast<int>(f.size()) - 1;
  for (int deg = 1; deg <= k / 2; ++deg) {
    long count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (long n = 0; n < count; ++n) {
      UPoly g(deg + 1, 0);
      long m = n;
      for (int i = 0; i < deg; ++i) {
        g[i] = m % p;
        m /= p;
      }
      g[deg] = 1;
      if (umod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Ring Ring::from_parts(unsigned long p, RingKind kind, FieldInfo field, std::vector<Variable> vars,
                      std::string descriptor) {
  if (p == 2) throw Error(Errc::CharacteristicTwo, "characteristic 2 rings are not supported");
  if (p != 0 && !is_prime(p)) throw Error(Errc::InvalidArgument, "characteristic must be prime");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i].name == vars[j].name)
        throw Error(Errc::InvalidArgument, "duplicate variable name " + vars[i].name);
  auto d = std::make_shared<Data>();
  d->p = p;
  d->scalars = PrimeField{p};
  d->kind = kind;
  d->field = field;
  for (auto& v : vars) v.reduction = pad_terms(v.reduction, vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].degree == 0) continue;
    for (const auto& [e, c] : vars[i].reduction) {
      for (std::size_t j = 0; j < vars.size(); ++j) {
        if (e[j] == 0) continue;
        if (vars[j].degree == 0)
          throw Error(Errc::Unsupported, "relation of " + vars[i].name + " involves a free variable");
        if (j > i || (j == i && e[j] >= vars[i].degree))
          throw Error(Errc::InvalidArgument, "relation of " + vars[i].name + " is not triangular");
      }
    }
  }
  d->vars = std::move(vars);
  d->descriptor = std::move(descriptor);
  for (std::size_t i = 0; i < d->vars.size(); ++i)
    if (kind == RingKind::Product && d->vars[i].degree == 2 && d->vars[i].reduction.size() == 1) {
      Exponents e(d->vars.size(), 0);
      e[i] = 1;
      if (d->vars[i].reduction.count(e) && d->vars[i].reduction.at(e) == 1) d->product_var = static_cast<int>(i);
    }
  Ring r;
  r.d_ = d;
  return r;
}

Ring Ring::prime_field(unsigned long p) {
  if (p == 2) throw Error(Errc::CharacteristicTwo, "GF(2) is not supported");
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, "GF(" + std::to_string(p) + ") is not a prime field");
  return from_parts(p, RingKind::PrimeField, FieldInfo{}, {}, "GF(" + std::to_string(p) + ")");
}

Ring Ring::rationals() {
  return from_parts(0, RingKind::Rationals, FieldInfo{FieldInfo::Rationals, 1, 0, 0}, {}, "Q");
}

Ring Ring::finite_field(unsigned long p, int k) {
  if (p == 2) throw Error(Errc::CharacteristicTwo, "characteristic 2 fields are not supported");
  if (!is_prime(p)) throw Error(Errc::InvalidArgument, "characteristic must be prime");
  if (k == 1) return prime_field(p);
  long count = 1;
  for (int i = 0; i < k; ++i) count *= static_cast<long>(p);
  for (long n = 0; n < count; ++n) {
    UPoly f(k + 1, 0);
    long m = n;
    for (int i = 0; i < k; ++i) {
      f[i] = m % static_cast<long>(p);
      m /= static_cast<long>(p);
    }
    f[k] = 1;
    if (irreducible(f, static_cast<long>(p))) return finite_field(p, UPoly(f.begin(), f.end() - 1));
  }
  throw Error(Errc::InvalidArgument, "no irreducible polynomial found");
}

Ring Ring::finite_field(unsigned long p, const std::vector<long>& coeffs) {
  int k = static_cast<int>(coeffs.size());
  if (k < 1) throw Error(Errc::InvalidArgument, "empty field polynomial");
  if (p == 2) throw Error(Errc::CharacteristicTwo, "characteristic 2 fields are not supported");
  UPoly f(coeffs.begin(), coeffs.end());
  for (auto& c : f) c = ((c % static_cast<long>(p)) + static_cast<long>(p)) % static_cast<long>(p);
  f.push_back(1);
  if (!irreducible(f, static_cast<long>(p))) throw Error(Errc::InvalidArgument, "field polynomial is reducible");
  if (k == 1) return prime_field(p);
  Variable u{"u", k, {}};
  for (int i = 0; i < k; ++i) {
    if (f[i] == 0) continue;
    Exponents e{static_cast<std::uint16_t>(i)};
    u.reduction[e] = mpq_class(static_cast<long>(p) - f[i]);
  }
  long q = 1;
  for (int i = 0; i < k; ++i) q *= static_cast<long>(p);
  return from_parts(p, RingKind::FiniteField, FieldInfo{FieldInfo::Extension, k, 0, 1}, {u},
                    "GF(" + std::to_string(q) + ")");
}

Ring Ring::quadratic(long d) {
  if (d == 0 || d == 1) throw Error(Errc::InvalidArgument, "radicand must be a non-square");
  long a = d < 0 ? -d : d;
  for (long s = 2; s * s <= a; ++s)
    if (a % (s * s) == 0) throw Error(Errc::InvalidArgument, "radicand must be square-free");
  Variable s{d == -1 ? "i" : "s", 2, {}};
  s.reduction[Exponents{0}] = mpq_class(d);
  std::string desc = d == -1 ? "Q(i)" : "Q(sqrt(" + std::to_string(d) + "))";
  return from_parts(0, RingKind::Quadratic, FieldInfo{FieldInfo::Quadratic, 2, d, 1}, {s}, desc);
}

Ring Ring::polynomial(const Ring& base, const std::vector<std::string>& names) {
  if (names.empty()) throw Error(Errc::InvalidArgument, "polynomial ring needs variables");
  auto vars = base.d_->vars;
  for (const auto& n : names) vars.push_back(Variable{n, 0, {}});
  std::string desc = wrap(base.descriptor()) + "[";
  for (std::size_t i = 0; i < names.size(); ++i) desc += (i ? "," : "") + names[i];
  desc += "]";
  return from_parts(base.characteristic(), RingKind::Polynomial, base.field(), std::move(vars), desc);
}

Ring Ring::quotient(const Ring& poly_ring, const Element& f) {
  if (f.ring() != poly_ring) throw Error(Errc::RingMismatch, "modulus is not in the polynomial ring");
  std::size_t n = poly_ring.num_vars();
  if (n == 0 || poly_ring.var(n - 1).degree != 0)
    throw Error(Errc::InvalidArgument, "quotient needs a polynomial variable");
  std::size_t t = n - 1;
  int deg = 0;
  for (const auto& [e, c] : f.terms()) deg = std::max(deg, static_cast<int>(e[t]));
  if (deg == 0) throw Error(Errc::InvalidArgument, "modulus must have positive degree");
  Variable v = poly_ring.var(t);
  v.degree = deg;
  bool monic = false;
  for (const auto& [e, c] : f.terms()) {
    if (e[t] == deg) {
      Exponents rest = e;
      rest[t] = 0;
      if (std::any_of(rest.begin(), rest.end(), [](auto x) { return x != 0; }) || c != 1)
        throw Error(Errc::InvalidArgument, "modulus must be monic in " + v.name);
      monic = true;
      continue;
    }
    mpq_class neg = -c;
    poly_ring.scalars().reduce(neg);
    v.reduction[e] = neg;
  }
  if (!monic) throw Error(Errc::InvalidArgument, "modulus must be monic");
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < t; ++i) vars.push_back(poly_ring.var(i));
  vars.push_back(v);
  std::string desc = poly_ring.descriptor() + "/(" + f.to_string() + ")";
  // F_p[u]/(irreducible) is a finite field.
  if (n == 1 && poly_ring.characteristic() != 0 && poly_ring.field().kind == FieldInfo::Prime) {
    long p = static_cast<long>(poly_ring.characteristic());
    UPoly g(deg + 1, 0);
    for (const auto& [e, c] : f.terms()) g[e[0]] = mpz_class(c.get_num() % p).get_si();
    if (deg > 1 && irreducible(g, p))
      return from_parts(poly_ring.characteristic(), RingKind::FiniteField,
                        FieldInfo{FieldInfo::Extension, deg, 0, 1}, std::move(vars), desc);
    if (deg == 1) throw Error(Errc::Unsupported, "linear modulus: use the prime field directly");
  }
  return from_parts(poly_ring.characteristic(), RingKind::Quotient, poly_ring.field(), std::move(vars), desc);
}

Ring Ring::product(const Ring& base) {
  auto vars = base.d_->vars;
  std::string name = "e";
  for (int k = 1; base.var_index(name) >= 0; ++k) name = "e" + std::to_string(k);
  Variable e{name, 2, {}};
  Exponents ex(vars.size() + 1, 0);
  ex.back() = 1;
  e.reduction[ex] = 1;
  vars.push_back(e);
  return from_parts(base.characteristic(), RingKind::Product, base.field(), std::move(vars),
                    wrap(base.descriptor()) + " x " + wrap(base.descriptor()));
}

unsigned long Ring::characteristic() const { return d_->p; }
const PrimeField& Ring::scalars() const { return d_->scalars; }
RingKind Ring::kind() const { return d_->kind; }
const FieldInfo& Ring::field() const { return d_->field; }
std::size_t Ring::num_vars() const { return d_->vars.size(); }
const Variable& Ring::var(std::size_t i) const { return d_->vars.at(i); }
const std::string& Ring::descriptor() const { return d_->descriptor; }
int Ring::product_var() const { return d_->product_var; }

int Ring::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < d_->vars.size(); ++i)
    if (d_->vars[i].name == name) return static_cast<int>(i);
  return -1;
}

bool Ring::is_field() const {
  auto k = d_->kind;
  return k == RingKind::PrimeField || k == RingKind::FiniteField || k == RingKind::Rationals ||
         k == RingKind::Quadratic;
}

bool Ring::has_free_vars() const {
  return std::any_of(d_->vars.begin(), d_->vars.end(), [](const Variable& v) { return v.degree == 0; });
}

bool Ring::is_finite() const { return d_->p != 0 && !has_free_vars(); }

std::vector<Exponents> Ring::basis_monomials() const {
  if (has_free_vars()) throw Error(Errc::NotFinite, "ring has polynomial variables");
  std::size_t n = d_->vars.size();
  std::vector<Exponents> out;
  Exponents e(n, 0);
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < n) {
      if (++e[i] < d_->vars[i].degree) break;
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

Element Ring::zero() const { return Element(*this, {}); }
Element Ring::one() const { return scalar(1); }

Element Ring::scalar(const mpq_class& c) const {
  Terms t;
  add_term(t, Exponents(num_vars(), 0), c, scalars());
  return Element(*this, std::move(t));
}

Element Ring::gen(std::size_t i) const {
  Exponents e(num_vars(), 0);
  e.at(i) = 1;
  Terms t{{e, mpq_class(1)}};
  normalize(t);
  return Element(*this, std::move(t));
}

Element Ring::gen(const std::string& name) const {
  int i = var_index(name);
  if (i < 0) throw Error(Errc::InvalidArgument, "no generator named " + name);
  return gen(static_cast<std::size_t>(i));
}

Element Ring::make(Terms t) const {
  normalize(t);
  return Element(*this, std::move(t));
}

void Ring::normalize(Terms& t) const {
  const auto& vars = d_->vars;
  const auto& f = d_->scalars;
  Terms cur;
  for (auto& [e, c] : t) add_term(cur, pad(e, vars.size()), c, f);
  for (;;) {
    bool changed = false;
    Terms next;
    for (const auto& [e, c] : cur) {
      int v = -1;
      for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i)
        if (vars[i].degree > 0 && e[i] >= vars[i].degree) {
          v = i;
          break;
        }
      if (v < 0) {
        add_term(next, e, c, f);
        continue;
      }
      changed = true;
      Exponents base = e;
      base[v] = static_cast<std::uint16_t>(base[v] - vars[v].degree);
      for (const auto& [re, rc] : vars[v].reduction) {
        Exponents ne = base;
        for (std::size_t j = 0; j < ne.size(); ++j) ne[j] = static_cast<std::uint16_t>(ne[j] + re[j]);
        add_term(next, ne, c * rc, f);
      }
    }
    cur = std::move(next);
    if (!changed) break;
  }
  t = std::move(cur);
}

bool Ring::operator==(const Ring& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  if (d_->p != o.d_->p || d_->kind != o.d_->kind || d_->vars.size() != o.d_->vars.size()) return false;
  for (std::size_t i = 0; i < d_->vars.size(); ++i) {
    const auto& a = d_->vars[i];
    const auto& b = o.d_->vars[i];
    if (a.name != b.name || a.degree != b.degree || a.reduction != b.reduction) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Element

bool Element::is_one() const { return *this == ring_.one(); }

bool Element::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

mpq_class Element::constant() const {
  Exponents z(ring_.num_vars(), 0);
  auto it = terms_.find(z);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int Element::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0)));
  return d;
}

Element Element::operator-() const {
  Terms t = terms_;
  for (auto& [e, c] : t) {
    c = -c;
    ring_.scalars().reduce(c);
  }
  return Element(ring_, std::move(t));
}

Element& Element::operator+=(const Element& o) {
  if (ring_ != o.ring_) throw Error(Errc::RingMismatch, "operands live in different rings");
  for (const auto& [e, c] : o.terms_) add_term(terms_, e, c, ring_.scalars());
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (ring_ != o.ring_) throw Error(Errc::RingMismatch, "operands live in different rings");
  for (const auto& [e, c] : o.terms_) add_term(terms_, e, -c, ring_.scalars());
  return *this;
}

Element& Element::operator*=(const Element& o) {
  if (ring_ != o.ring_) throw Error(Errc::RingMismatch, "operands live in different rings");
  Terms out;
  const auto& f = ring_.scalars();
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e = e1;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + e2[i]);
      add_term(out, e, c1 * c2, f);
    }
  ring_.normalize(out);
  terms_ = std::move(out);
  return *this;
}

Element Element::scaled(const mpq_class& c) const { return *this * ring_.scalar(c); }

Element Element::pow(unsigned long n) const {
  Element result = ring_.one();
  Element base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

namespace {

// Algebraic part of the ring: monomials with all free exponents zero.
std::vector<Exponents> algebraic_basis(const Ring& r) {
  std::size_t n = r.num_vars();
  std::vector<Exponents> out;
  Exponents e(n, 0);
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    while (i < n) {
      if (r.var(i).degree == 0) {
        ++i;
        continue;
      }
      if (++e[i] < r.var(i).degree) break;
      e[i] = 0;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

// Inverse of an element of the algebraic part by solving x*y = 1.
Element algebraic_inverse(const Element& x) {
  const Ring& r = x.ring();
  auto basis = algebraic_basis(r);
  std::size_t n = basis.size();
  ScalarMatrix a(n, ScalarRow(n, mpq_class(0)));
  for (std::size_t j = 0; j < n; ++j) {
    Element prod = x * r.make(Terms{{basis[j], mpq_class(1)}});
    for (const auto& [e, c] : prod.terms()) {
      auto it = std::find(basis.begin(), basis.end(), e);
      a[it - basis.begin()][j] = c;
    }
  }
  ScalarRow b(n, mpq_class(0));
  b[0] = 1;
  auto sol = solve(a, b, r.scalars());
  if (!sol) throw Error(Errc::NotAUnit, x.to_string() + " is not a unit");
  Terms t;
  for (std::size_t j = 0; j < n; ++j)
    if ((*sol)[j] != 0) t[basis[j]] = (*sol)[j];
  return r.make(std::move(t));
}

bool has_free_exponent(const Ring& r, const Exponents& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (r.var(i).degree == 0 && e[i] != 0) return true;
  return false;
}

std::size_t algebraic_dim(const Ring& r) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < r.num_vars(); ++i)
    if (r.var(i).degree > 0) d *= static_cast<std::size_t>(r.var(i).degree);
  return d;
}

}  // namespace

Element Element::inverse() const {
  if (is_zero()) throw Error(Errc::NotAUnit, "inverse of zero");
  if (!ring_.has_free_vars()) return algebraic_inverse(*this);
  Terms a0, rest;
  for (const auto& [e, c] : terms_) (has_free_exponent(ring_, e) ? rest : a0)[e] = c;
  Element inv0 = algebraic_inverse(Element(ring_, a0));
  Element r = Element(ring_, rest);
  if (!r.is_nilpotent()) throw Error(Errc::NotAUnit, to_string() + " is not a unit");
  Element q = -(inv0 * r);
  Element sum = ring_.one(), term = ring_.one();
  for (;;) {
    term *= q;
    if (term.is_zero()) break;
    sum += term;
  }
  return inv0 * sum;
}

bool Element::is_unit() const {
  try {
    inverse();
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotAUnit) return false;
    throw;
  }
}

bool Element::is_nilpotent() const {
  std::size_t dim = algebraic_dim(ring_);
  if (!ring_.has_free_vars()) return pow(dim).is_zero();
  // Nilpotent iff every coefficient in the algebraic part is nilpotent.
  std::map<Exponents, Terms> groups;
  for (const auto& [e, c] : terms_) {
    Exponents key(e.size(), 0), alg(e.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) (ring_.var(i).degree == 0 ? key : alg)[i] = e[i];
    groups[key][alg] = c;
  }
  for (auto& [k, t] : groups)
    if (!Element(ring_, t).pow(dim).is_zero()) return false;
  return true;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, mpq_class>> ts(terms_.begin(), terms_.end());
  auto deg = [](const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); };
  std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
    int da = deg(a.first), db = deg(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::string out;
  const auto& f = ring_.scalars();
  for (const auto& [e, c] : ts) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_.var(i).name;
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string cs = f.to_string(c);
    std::string piece;
    if (mono.empty())
      piece = cs;
    else if (cs == "1")
      piece = mono;
    else if (cs == "-1")
      piece = "-" + mono;
    else
      piece = cs + "*" + mono;
    if (!out.empty() && piece[0] != '-') out += "+";
    out += piece;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.to_string(); }

Element random_element(const Ring& r, std::mt19937_64& rng, int max_degree, int coeff_range) {
  std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Exponents> monos = algebraic_basis(r);
  std::size_t n = r.num_vars();
  for (std::size_t i = 0; i < n; ++i) {
    if (r.var(i).degree != 0) continue;
    std::vector<Exponents> next;
    for (const auto& m : monos)
      for (int k = 0; k <= max_degree; ++k) {
        Exponents e = m;
        e[i] = static_cast<std::uint16_t>(k);
        next.push_back(e);
      }
    monos = std::move(next);
  }
  Terms t;
  for (const auto& m : monos)
    if (coin(rng)) t[m] = mpq_class(coeff(rng));
  return r.make(std::move(t));
}

}  // namespace hkt::rings
