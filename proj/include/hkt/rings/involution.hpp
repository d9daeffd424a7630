#pragma once

#include <random>
#include <string>
#include <vector>

#include "hkt/rings/ring.hpp"

namespace hkt::rings {

// A ring homomorphism given by the images of the source generators.
// Construction checks that every defining relation maps to zero.
class RingMap {
 public:
  RingMap() = default;
  RingMap(Ring source, Ring target, std::vector<Element> images);

  static RingMap identity(const Ring& r);

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<Element>& images() const { return images_; }

  Element operator()(const Element& x) const;
  RingMap compose(const RingMap& inner) const;  // this ∘ inner
  bool equals_on_generators(const RingMap& o) const;
  std::string to_string() const;

 private:
  Ring source_, target_;
  std::vector<Element> images_;
};

class RingWithInvolution {
 public:
  RingWithInvolution() = default;
  const Ring& ring() const { return ring_; }
  const RingMap& sigma() const { return sigma_; }
  Element apply(const Element& x) const { return sigma_(x); }
  bool is_trivial() const;
  std::string to_string() const;

  friend RingWithInvolution make_ring_with_involution(const Ring& ring,
                                                      const std::vector<Element>& images);

 private:
  Ring ring_;
  RingMap sigma_;
};

// Validates: homomorphism (relations), sigma^2 = id on generators, and
// additivity/multiplicativity on products and sums of generators.
RingWithInvolution make_ring_with_involution(const Ring& ring, const std::vector<Element>& images);

RingWithInvolution trivial_involution(const Ring& ring);

// Named involutions: id, frobenius, conj, swap.
RingWithInvolution named_involution(const Ring& ring, const std::string& name);

// sigma_B ∘ f == f ∘ sigma_A on all generators of A.
bool check_equivariant_map(const RingMap& f, const RingWithInvolution& a, const RingWithInvolution& b);

// Sampled check of sigma(sigma(x)) = x, additivity and multiplicativity.
// Returns the number of failures.
int sample_involution_properties(const RingWithInvolution& r, std::uint64_t seed, int samples);

struct RingIsoPair {
  RingMap forward, backward;
  static RingIsoPair make(RingMap forward, RingMap backward);
};

}  // namespace hkt::rings
