#include "hkt/modforms/coefficient.hpp"

#include <sstream>

#include "hkt/error.hpp"

namespace hkt::modforms {

DualityCoefficient::DualityCoefficient(FiniteModule module, FpMatrix i, std::string label)
    : module_(std::move(module)), i_(std::move(i)), label_(std::move(label)) {
  const FiniteRing& a = *module_.ring;
  module_.validate();
  if (i_.rows() != module_.dim || i_.cols() != module_.dim)
    throw Error(Errc::Mismatch, "involution matrix has the wrong size");
  for (std::size_t j = 0; j < a.dim(); ++j)
    if (i_ * module_.action[j] != module_.act(a.sigma(a.basis(j))) * i_)
      throw Error(Errc::NotSesquilinear, "coefficient involution is not sigma-semilinear");
  if (!(i_ * i_).is_identity()) throw Error(Errc::NotInvolutive, "coefficient involution does not square to the identity");
  const int p = module_.p();
  for (std::size_t k = 0; k < module_.dim; ++k) {
    if (size_ > kMaxElements / static_cast<std::uint32_t>(p)) throw Error(Errc::EnumerationBoundExceeded, "coefficient module too large");
    size_ *= static_cast<std::uint32_t>(p);
  }
  regular_ = module_.same(FiniteModule::regular(module_.ring));
  add_.resize(std::size_t(size_) * size_);
  neg_.resize(size_);
  inv_.resize(size_);
  act_.resize(std::size_t(a.size()) * size_);
  std::vector<FpVec> vs(size_);
  for (Code x = 0; x < size_; ++x) vs[x] = vec(x);
  for (Code x = 0; x < size_; ++x) {
    for (Code y = 0; y < size_; ++y) add_[x * size_ + y] = code(linalg::vadd(vs[x], vs[y], p));
    neg_[x] = code(linalg::vscale(vs[x], p - 1, p));
    inv_[x] = code(i_.apply(vs[x]));
  }
  for (Code c = 0; c < a.size(); ++c) {
    FpMatrix m = module_.act(c);
    for (Code x = 0; x < size_; ++x) act_[c * size_ + x] = code(m.apply(vs[x]));
  }
}

CoefficientPtr DualityCoefficient::standard(FiniteRingPtr a) {
  return std::make_shared<DualityCoefficient>(FiniteModule::regular(a), a->sigma_matrix(), "A");
}

CoefficientPtr DualityCoefficient::twisted(FiniteRingPtr a, Code c) {
  if (a->mul(c, a->sigma(c)) != a->one()) throw Error(Errc::NotInvolutive, "twist c must satisfy c*sigma(c) = 1");
  return std::make_shared<DualityCoefficient>(FiniteModule::regular(a), a->mult_matrix_of(c) * a->sigma_matrix(),
                                              "A, i = " + a->name(c) + "*sigma");
}

std::vector<Code> DualityCoefficient::annihilated_by(const std::vector<Code>& gens) const {
  std::vector<Code> out;
  for (Code x = 0; x < size_; ++x) {
    bool ok = true;
    for (Code g : gens)
      if (act(g, x) != 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(x);
  }
  return out;
}

std::string DualityCoefficient::name(Code x) const {
  if (regular_) return module_.ring->name(x);
  FpVec v = vec(x);
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    int c = v[i] > module_.p() / 2 ? v[i] - module_.p() : v[i];
    os << (i ? "," : "") << c;
  }
  os << ")";
  return os.str();
}

Code DualityCoefficient::parse(const std::string& text) const {
  if (regular_) {
    auto c = module_.ring->parse(text);
    if (!c) throw Error(Errc::InvalidArgument, "cannot parse coefficient element '" + text + "'");
    return *c;
  }
  std::string s = text;
  for (char& ch : s)
    if (ch == '(' || ch == ')' || ch == ',') ch = ' ';
  std::istringstream is(s);
  FpVec v;
  long c;
  while (is >> c) v.push_back(static_cast<int>(((c % module_.p()) + module_.p()) % module_.p()));
  if (v.size() != module_.dim) throw Error(Errc::InvalidArgument, "coefficient vector '" + text + "' has the wrong length");
  return code(v);
}

bool DualityCoefficient::same(const DualityCoefficient& o) const { return module_.same(o.module_) && i_ == o.i_; }

CoefficientIso CoefficientIso::make(CoefficientPtr source, CoefficientPtr target, FpMatrix m) {
  const auto& ms = source->module();
  const auto& mt = target->module();
  if (!ms.ring->same_structure(*mt.ring)) throw Error(Errc::RingMismatch, "coefficients over different rings");
  if (m.rows() != mt.dim || m.cols() != ms.dim || !linalg::inverse(m))
    throw Error(Errc::NotACoefficientIso, "alpha is not bijective");
  for (std::size_t j = 0; j < ms.ring->dim(); ++j)
    if (m * ms.action[j] != mt.action[j] * m) throw Error(Errc::NotACoefficientIso, "alpha is not A-linear");
  if (target->involution() * m != m * source->involution())
    throw Error(Errc::NotACoefficientIso, "alpha does not intertwine the involutions");
  return CoefficientIso{std::move(source), std::move(target), std::move(m)};
}

Code CoefficientIso::operator()(Code x) const { return target->code(matrix.apply(source->vec(x))); }

}  // namespace hkt::modforms
