#include "hkt/modforms/flmodule.hpp"

#include <algorithm>

#include "hkt/error.hpp"

namespace hkt::modforms {

namespace {

std::size_t pivot_of(const FpVec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return i;
  return v.size();
}

}  // namespace

std::shared_ptr<const TypeInfo> TypeInfo::make(const FiniteRingPtr& ap, CyclicType t) {
  const FiniteRing& a = *ap;
  const int p = a.p();
  if (t.factor < 0 || static_cast<std::size_t>(t.factor) >= a.factors().size())
    throw Error(Errc::InvalidArgument, "no such local factor");
  const auto& f = a.factors()[static_cast<std::size_t>(t.factor)];
  if (t.exponent < 1 || t.exponent > f.length) throw Error(Errc::InvalidArgument, "exponent out of range");
  auto info = std::make_shared<TypeInfo>();
  info->type = t;
  std::vector<Code> gens;
  if (t.exponent < f.length) gens.push_back(a.mul(a.pow(f.uniformizer, static_cast<unsigned>(t.exponent)), f.idempotent));
  Code rest = a.sub(a.one(), f.idempotent);
  if (rest != 0) gens.push_back(rest);
  std::vector<FpVec> basis = gens.empty() ? std::vector<FpVec>{} : a.ideal(gens);
  for (const auto& b : basis) {
    info->ideal_gens.push_back(a.code(b));
    info->sigma_ideal_gens.push_back(a.sigma(a.code(b)));
  }
  info->reduce.resize(a.size());
  info->rep_index.assign(a.size(), -1);
  for (Code c = 0; c < a.size(); ++c) {
    FpVec v = a.vec(c);
    for (const auto& b : basis) {
      std::size_t j = pivot_of(b);
      if (v[j]) v = linalg::vsub(v, linalg::vscale(b, v[j] * linalg::inv_mod(b[j], p), p), p);
    }
    info->reduce[c] = a.code(v);
  }
  for (Code c = 0; c < a.size(); ++c)
    if (info->reduce[c] == c) {
      info->rep_index[c] = static_cast<std::int32_t>(info->reps.size());
      info->reps.push_back(c);
    }
  std::string j;
  for (Code g : gens) j += (j.empty() ? "" : ",") + a.name(g);
  info->name = j.empty() ? "A" : "A/(" + j + ")";
  return info;
}

std::vector<CyclicType> FLModule::types(const FiniteRing& a) {
  std::vector<CyclicType> out;
  for (std::size_t k = 0; k < a.factors().size(); ++k)
    for (int e = a.factors()[k].length; e >= 1; --e) out.push_back({static_cast<int>(k), e});
  return out;
}

FLModule::FLModule(FiniteRingPtr a, std::vector<CyclicType> shape, std::uint64_t bound)
    : ring_(std::move(a)), shape_(std::move(shape)) {
  std::vector<std::pair<CyclicType, std::shared_ptr<const TypeInfo>>> seen;
  for (const auto& t : shape_) {
    std::shared_ptr<const TypeInfo> info;
    for (const auto& [st, si] : seen)
      if (st == t) info = si;
    if (!info) {
      info = TypeInfo::make(ring_, t);
      seen.emplace_back(t, info);
    }
    info_.push_back(info);
    if (size_ > bound / info->size()) throw Error(Errc::EnumerationBoundExceeded, "module exceeds the enumeration bound");
    size_ *= info->size();
    std::vector<std::size_t> pivots, keep;
    for (Code g : info->ideal_gens) pivots.push_back(pivot_of(ring_->vec(g)));
    for (std::size_t i = 0; i < ring_->dim(); ++i)
      if (std::find(pivots.begin(), pivots.end(), i) == pivots.end()) keep.push_back(i);
    fp_dim_ += keep.size();
    keep_.push_back(keep);
  }
}

int FLModule::length() const {
  int l = 0;
  for (const auto& t : shape_) l += t.exponent;
  return l;
}

std::string FLModule::shape_string() const {
  if (shape_.empty()) return "0";
  std::string s;
  std::size_t i = 0;
  while (i < shape_.size()) {
    std::size_t j = i;
    while (j < shape_.size() && shape_[j] == shape_[i]) ++j;
    if (!s.empty()) s += " + ";
    s += info_[i]->name;
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

FLModule::Elem FLModule::element(std::uint64_t index) const {
  Elem x(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    x[i] = info_[i]->reps[index % info_[i]->size()];
    index /= info_[i]->size();
  }
  return x;
}

std::uint64_t FLModule::index(const Elem& x) const {
  std::uint64_t idx = 0, stride = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx += stride * static_cast<std::uint64_t>(info_[i]->rep_index[x[i]]);
    stride *= info_[i]->size();
  }
  return idx;
}

FLModule::Elem FLModule::generator(std::size_t i) const {
  Elem x = zero();
  x[i] = info_[i]->reduce[ring_->one()];
  return x;
}

FLModule::Elem FLModule::add(const Elem& x, const Elem& y) const {
  Elem z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = info_[i]->reduce[ring_->add(x[i], y[i])];
  return z;
}

FLModule::Elem FLModule::neg(const Elem& x) const {
  Elem z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = info_[i]->reduce[ring_->neg(x[i])];
  return z;
}

FLModule::Elem FLModule::act(Code a, const Elem& x) const {
  Elem z(rank());
  for (std::size_t i = 0; i < rank(); ++i) z[i] = info_[i]->reduce[ring_->mul(a, x[i])];
  return z;
}

bool FLModule::is_zero(const Elem& x) const {
  return std::all_of(x.begin(), x.end(), [](Code c) { return c == 0; });
}

FpVec FLModule::to_fp(const Elem& x) const {
  FpVec v;
  v.reserve(fp_dim_);
  for (std::size_t i = 0; i < rank(); ++i) {
    FpVec r = ring_->vec(x[i]);
    for (std::size_t k : keep_[i]) v.push_back(r[k]);
  }
  return v;
}

FLModule::Elem FLModule::from_fp(const FpVec& v) const {
  Elem x(rank());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    FpVec r(ring_->dim(), 0);
    for (std::size_t k : keep_[i]) r[k] = v[pos++];
    x[i] = ring_->code(r);
  }
  return x;
}

FiniteModule FLModule::as_module() const {
  FiniteModule m{ring_, fp_dim_, {}};
  const int p = ring_->p();
  for (std::size_t b = 0; b < ring_->dim(); ++b) {
    FpMatrix act_b(p, fp_dim_, fp_dim_);
    for (std::size_t j = 0; j < fp_dim_; ++j) {
      FpVec e(fp_dim_, 0);
      e[j] = 1;
      FpVec c = to_fp(act(ring_->basis(b), from_fp(e)));
      for (std::size_t i = 0; i < fp_dim_; ++i) act_b.set(i, j, c[i]);
    }
    m.action.push_back(act_b);
  }
  return m;
}

std::vector<FpVec> FLModule::span_fp(const std::vector<Elem>& gens) const {
  std::vector<FpVec> vs;
  for (const auto& g : gens)
    for (std::size_t b = 0; b < ring_->dim(); ++b) vs.push_back(to_fp(act(ring_->basis(b), g)));
  return linalg::span_basis(ring_->p(), fp_dim_, vs);
}

std::uint64_t FLModule::span_size(const std::vector<Elem>& gens) const {
  std::uint64_t s = 1;
  for (std::size_t i = 0, n = span_fp(gens).size(); i < n; ++i) s *= static_cast<std::uint64_t>(ring_->p());
  return s;
}

FLModule FLModule::direct_sum(const FLModule& o) const {
  if (!ring_->same_structure(*o.ring_)) throw Error(Errc::RingMismatch, "modules over different rings");
  std::vector<CyclicType> s = shape_;
  s.insert(s.end(), o.shape_.begin(), o.shape_.end());
  return FLModule(ring_, s, ~std::uint64_t{0});
}

}  // namespace hkt::modforms
