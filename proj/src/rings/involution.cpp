#include "hkt/rings/involution.hpp"

#include <sstream>

#include "hkt/error.hpp"

namespace hkt::rings {

namespace {

Element apply_terms(const Ring& target, const Terms& terms, const std::vector<Element>& images) {
  std::vector<std::vector<Element>> powers(images.size());
  Element out = target.zero();
  for (const auto& [e, c] : terms) {
    Element term = target.scalar(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(target.one());
      while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
      term *= pw[e[i]];
    }
    out += term;
  }
  return out;
}

}  // namespace

RingMap::RingMap(Ring source, Ring target, std::vector<Element> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != source_.num_vars())
    throw Error(Errc::InvalidArgument, "need one image per generator");
  for (const auto& im : images_)
    if (im.ring() != target_) throw Error(Errc::RingMismatch, "image does not lie in the target ring");
  if (source_.characteristic() != target_.characteristic())
    throw Error(Errc::NotAHomomorphism, "characteristics differ");
  for (std::size_t i = 0; i < source_.num_vars(); ++i) {
    const auto& v = source_.var(i);
    if (v.degree == 0) continue;
    Element lhs = images_[i].pow(static_cast<unsigned long>(v.degree));
    Element rhs = apply_terms(target_, v.reduction, images_);
    if (lhs != rhs)
      throw Error(Errc::NotAHomomorphism, "relation of " + v.name + " is not preserved: image " +
                                              images_[i].to_string() + " gives " + (lhs - rhs).to_string());
  }
}

RingMap RingMap::identity(const Ring& r) {
  std::vector<Element> ims;
  for (std::size_t i = 0; i < r.num_vars(); ++i) ims.push_back(r.gen(i));
  return RingMap(r, r, ims);
}

Element RingMap::operator()(const Element& x) const {
  if (x.ring() != source_) throw Error(Errc::DomainMismatch, "element is not in the source ring");
  return apply_terms(target_, x.terms(), images_);
}

RingMap RingMap::compose(const RingMap& inner) const {
  if (inner.target_ != source_) throw Error(Errc::DomainMismatch, "maps are not composable");
  std::vector<Element> ims;
  for (const auto& im : inner.images_) ims.push_back((*this)(im));
  return RingMap(inner.source_, target_, ims);
}

bool RingMap::equals_on_generators(const RingMap& o) const {
  return source_ == o.source_ && target_ == o.target_ && images_ == o.images_;
}

std::string RingMap::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < images_.size(); ++i)
    os << (i ? ", " : "") << source_.var(i).name << " -> " << images_[i].to_string();
  return os.str();
}

bool RingWithInvolution::is_trivial() const {
  for (std::size_t i = 0; i < ring_.num_vars(); ++i)
    if (sigma_.images()[i] != ring_.gen(i)) return false;
  return true;
}

std::string RingWithInvolution::to_string() const {
  return ring_.descriptor() + ", sigma: " + (is_trivial() ? std::string("id") : sigma_.to_string());
}

RingWithInvolution make_ring_with_involution(const Ring& ring, const std::vector<Element>& images) {
  RingWithInvolution r;
  r.ring_ = ring;
  r.sigma_ = RingMap(ring, ring, images);
  for (std::size_t i = 0; i < ring.num_vars(); ++i) {
    Element back = r.sigma_(images[i]);
    if (back != ring.gen(i))
      throw Error(Errc::NotInvolutive, "sigma(sigma(" + ring.var(i).name + ")) = " + back.to_string());
  }
  // Generator-closed sample: pairwise sums and products of 1 and generators.
  std::vector<Element> sample{ring.one()};
  for (std::size_t i = 0; i < ring.num_vars(); ++i) sample.push_back(ring.gen(i));
  for (const auto& a : sample)
    for (const auto& b : sample) {
      if (r.sigma_(a + b) != r.sigma_(a) + r.sigma_(b) || r.sigma_(a * b) != r.sigma_(a) * r.sigma_(b))
        throw Error(Errc::NotAHomomorphism, "sigma fails on " + a.to_string() + ", " + b.to_string());
    }
  return r;
}

RingWithInvolution trivial_involution(const Ring& ring) {
  return make_ring_with_involution(ring, RingMap::identity(ring).images());
}

RingWithInvolution named_involution(const Ring& ring, const std::string& name) {
  std::vector<Element> ims;
  for (std::size_t i = 0; i < ring.num_vars(); ++i) ims.push_back(ring.gen(i));
  const FieldInfo& f = ring.field();
  if (name == "id" || name == "identity") return make_ring_with_involution(ring, ims);
  if (name == "frobenius" || (name == "conj" && f.kind == FieldInfo::Extension)) {
    if (f.kind != FieldInfo::Extension || f.degree % 2 != 0)
      throw Error(Errc::Unsupported, "frobenius involution needs GF(p^k) with k even");
    unsigned long e = 1;
    for (int i = 0; i < f.degree / 2; ++i) e *= ring.characteristic();
    ims[0] = ring.gen(0).pow(e);
    return make_ring_with_involution(ring, ims);
  }
  if (name == "conj") {
    if (f.kind != FieldInfo::Quadratic) throw Error(Errc::Unsupported, "conj needs a quadratic field");
    ims[0] = -ring.gen(0);
    return make_ring_with_involution(ring, ims);
  }
  if (name == "swap") {
    if (ring.product_var() >= 0) {
      auto e = static_cast<std::size_t>(ring.product_var());
      ims[e] = ring.one() - ring.gen(e);
      return make_ring_with_involution(ring, ims);
    }
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < ring.num_vars(); ++i)
      if (ring.var(i).degree == 0) free.push_back(i);
    if (free.size() != 2) throw Error(Errc::Unsupported, "swap needs a product ring or two variables");
    std::swap(ims[free[0]], ims[free[1]]);
    return make_ring_with_involution(ring, ims);
  }
  throw Error(Errc::InvalidArgument, "unknown involution " + name);
}

bool check_equivariant_map(const RingMap& f, const RingWithInvolution& a, const RingWithInvolution& b) {
  if (f.source() != a.ring() || f.target() != b.ring())
    throw Error(Errc::DomainMismatch, "map does not go between the given rings");
  for (std::size_t i = 0; i < a.ring().num_vars(); ++i) {
    Element x = a.ring().gen(i);
    if (b.apply(f(x)) != f(a.apply(x))) return false;
  }
  return true;
}

int sample_involution_properties(const RingWithInvolution& r, std::uint64_t seed, int samples) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int s = 0; s < samples; ++s) {
    Element x = random_element(r.ring(), rng, 2);
    Element y = random_element(r.ring(), rng, 2);
    if (r.apply(r.apply(x)) != x) ++failures;
    if (r.apply(x + y) != r.apply(x) + r.apply(y)) ++failures;
    if (r.apply(x * y) != r.apply(x) * r.apply(y)) ++failures;
  }
  return failures;
}

RingIsoPair RingIsoPair::make(RingMap forward, RingMap backward) {
  if (forward.source() != backward.target() || forward.target() != backward.source())
    throw Error(Errc::DomainMismatch, "maps are not mutually inverse candidates");
  if (!backward.compose(forward).equals_on_generators(RingMap::identity(forward.source())) ||
      !forward.compose(backward).equals_on_generators(RingMap::identity(forward.target())))
    throw Error(Errc::IncompatibleTwistData, "maps are not inverse to each other");
  return RingIsoPair{std::move(forward), std::move(backward)};
}

}  // namespace hkt::rings
