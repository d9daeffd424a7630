#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkt/linalg/integer.hpp"
#include "hkt/modforms/form.hpp"

namespace hkt::modforms {

// Budget caps the total number of Gram tables enumerated over all shapes.
struct WittOptions {
  std::uint64_t budget = std::uint64_t{1} << 27;
  std::uint64_t lagrangian_bound = FLModule::kDefaultBound;
};

// Isometry classes of nondegenerate eps-hermitian forms on all modules of
// length <= bound, found by orbit enumeration of Gram tables under Aut(M).
class WittComputation {
 public:
  struct FormClass {
    std::size_t shape;        // index into shapes()
    std::uint64_t rep;        // Gram index of the orbit minimum
    std::uint64_t orbit_size;
    int length;
    bool metabolic;
  };

  WittComputation(FiniteRingPtr a, CoefficientPtr c, int eps, int bound, WittOptions opts = {});

  const FiniteRingPtr& ring() const { return a_; }
  const CoefficientPtr& coefficient() const { return c_; }
  int eps() const { return eps_; }
  int bound() const { return bound_; }
  const std::vector<FormClass>& classes() const { return classes_; }
  std::size_t num_shapes() const { return shapes_.size(); }
  const FLModule& shape_module(std::size_t s) const { return shapes_[s].module; }
  std::uint64_t shape_tables(std::size_t s) const { return shapes_[s].total; }

  HermitianForm class_form(std::size_t c) const;
  // Class of a nondegenerate form of length <= bound; throws Degenerate otherwise.
  std::size_t classify(const HermitianForm& f) const;
  // Class label of every Gram table of a shape (kDegenerate for degenerate ones).
  std::size_t class_of_table(std::size_t shape, std::uint64_t index) const;
  HermitianForm table_form(std::size_t shape, std::uint64_t index) const;
  std::optional<std::uint64_t> table_index(std::size_t shape, const std::vector<Code>& gram) const {
    return encode(shapes_.at(shape), gram);
  }
  static constexpr std::size_t kDegenerate = static_cast<std::size_t>(-1);

  // Relations among classes of length <= b: sums of classes and metabolics.
  std::vector<linalg::IntVec> relations(int b) const;
  std::size_t classes_up_to(int b) const;

 private:
  struct Op {
    enum Kind { Perm, Scale, Transvect } kind;
    std::vector<std::size_t> perm;  // new position -> old position
    std::size_t k = 0, m = 0;
    Code a = 0;
  };
  struct Shape {
    FLModule module;
    std::vector<std::vector<Code>> allowed;  // per upper-triangle slot
    std::vector<std::vector<std::int32_t>> pos;
    std::vector<std::uint64_t> stride;
    std::uint64_t total = 1;
    std::vector<Op> ops;
    std::vector<std::uint16_t> labels;
    std::vector<std::size_t> class_ids;  // local label -> global class
  };

  void build_shapes();
  void enumerate(Shape& s, std::size_t shape_index);
  std::vector<Code> decode(const Shape& s, std::uint64_t index) const;
  std::optional<std::uint64_t> encode(const Shape& s, const std::vector<Code>& gram) const;
  std::vector<Code> apply(const Shape& s, const Op& op, const std::vector<Code>& gram) const;
  std::size_t lookup_sum(std::size_t c1, std::size_t c2) const;

  FiniteRingPtr a_;
  CoefficientPtr c_;
  int eps_;
  int bound_;
  WittOptions opts_;
  std::vector<CyclicType> types_;
  std::vector<Shape> shapes_;
  std::vector<FormClass> classes_;
};

struct WittClassEntry {
  std::size_t id;
  int length;
  std::string shape;
  std::string gram;
  std::uint64_t orbit_size;
  bool metabolic;
  linalg::IntVec element;  // coordinates in the invariant-factor decomposition
};

struct WittGroupPresentation {
  int bound = 0;
  int eps = 1;
  std::string ring;
  std::string coefficient;
  std::vector<std::int64_t> invariant_factors;  // without 1s; 0 stands for Z
  std::vector<WittClassEntry> classes;
  bool stable = false;
  std::string stability_note;

  std::string group_string() const;
  std::string to_text() const;
  std::string to_json() const;
};

// Presentation from the classes of length <= b of an existing computation.
struct PresentationData {
  std::vector<std::int64_t> invariant_factors;
  linalg::IntMatrix coords;  // one row per class (length <= b)
  std::vector<std::int64_t> full_diagonal;  // per coordinate column, 0 for Z
};
PresentationData present(const WittComputation& w, int b);

WittGroupPresentation witt_group(FiniteRingPtr a, CoefficientPtr c, int eps, int bound, WittOptions opts = {});
WittGroupPresentation witt_presentation(const WittComputation& w);
WittGroupPresentation witt_of_product_with_swap(const rings::RingWithInvolution& k, int bound, WittOptions opts = {});

// True when the classes of length < b generate the group at b and the
// invariant factors agree.
bool stable_between(const WittComputation& w, int b);

}  // namespace hkt::modforms
