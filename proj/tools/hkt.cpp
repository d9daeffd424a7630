// Command-line front end: witt, koszul-sign, devissage-check, localcase,
// transfer, diagonalize, axioms.

#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkt/chaindual/chaindual.hpp"
#include "hkt/devissage/devissage.hpp"
#include "hkt/error.hpp"
#include "hkt/fieldwitt/fieldwitt.hpp"
#include "hkt/koszul/koszul.hpp"
#include "hkt/modforms/duality.hpp"
#include "hkt/rings/parse.hpp"

namespace {

using namespace hkt;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kBound = 3, kNegative = 4 };

int parse_eps(const std::string& s) {
  if (s == "+1" || s == "1") return 1;
  if (s == "-1") return -1;
  throw Error(Errc::ParseError, "epsilon must be +1 or -1, got '" + s + "'");
}

rings::FiniteRingPtr finite_ring(const std::string& descriptor) {
  return rings::FiniteRing::from(rings::parse_descriptor(descriptor));
}

std::vector<rings::Code> parse_codes(const rings::FiniteRingPtr& r, const std::string& list) {
  std::vector<rings::Code> out;
  for (const auto& e : rings::parse_element_list(r->symbolic()->ring(), list)) {
    auto c = r->parse(e.to_string());
    if (!c) throw Error(Errc::ParseError, "cannot read '" + e.to_string() + "' in " + r->descriptor());
    out.push_back(*c);
  }
  return out;
}

struct Options {
  int bound = 4;
  bool json = false;
  std::uint64_t seed = 1;
  std::uint64_t budget = modforms::WittOptions{}.budget;

  modforms::WittOptions witt() const {
    modforms::WittOptions o;
    o.budget = budget;
    return o;
  }
};

int cmd_witt(const Options& o, const std::string& desc, const std::string& eps) {
  auto a = finite_ring(desc);
  auto w = modforms::witt_group(a, modforms::DualityCoefficient::standard(a), parse_eps(eps), o.bound, o.witt());
  if (o.json)
    std::cout << w.to_json() << "\n";
  else
    std::cout << w.to_text();
  return kOk;
}

int cmd_koszul(const Options& o, const std::string& ring, const std::string& seq, const std::string& inv,
               const std::string& twist) {
  rings::RingWithInvolution r = inv.empty() ? rings::parse_descriptor(ring)
                                            : rings::parse_involution(rings::parse_ring(ring), inv);
  auto elems = rings::parse_element_list(r.ring(), seq);
  std::optional<rings::Element> c;
  if (!twist.empty()) c = rings::parse_element(r.ring(), twist);
  auto data = koszul::RegularSequenceData::make(r, elems, c);
  auto s = koszul::conormal_sign(data);
  if (o.json) {
    json j;
    j["ring"] = r.to_string();
    j["sequence"] = seq;
    j["transition"] = s.report.transition.to_string();
    j["det_sigma_conormal"] = s.det_sigma_n.to_string();
    json sq = json::array();
    for (const auto& x : s.report.squares) sq.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    j["squares"] = sq;
    j["u"] = s.u_string();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "ring: " << r.to_string() << "\n";
    std::cout << "sequence: " << seq << "\n";
    std::cout << s.report.to_string();
    std::cout << "det(sigma on J/J^2) = " << s.det_sigma_n.to_string() << "\n";
    std::cout << "u=" << s.u_string() << "\n";
  }
  return s.report.all_pass() ? kOk : kNegative;
}

int cmd_devissage(const Options& o, const std::string& desc, const std::string& eps) {
  auto r = devissage::verify_devissage(finite_ring(desc), parse_eps(eps), o.bound, o.witt());
  std::cout << (o.json ? r.to_json() + "\n" : r.to_text());
  return r.verified() ? kOk : kNegative;
}

int cmd_localcase(const Options& o, const std::string& desc, const std::string& ideal, const std::string& eps) {
  auto a = finite_ring(desc);
  auto r = devissage::verify_localcase_factorization(a, parse_codes(a, ideal), parse_eps(eps), o.bound, o.witt());
  std::cout << (o.json ? r.to_json() + "\n" : r.to_text());
  return r.verified() ? kOk : kNegative;
}

// Entries of the S-form are elements a of S, read as a * lambda for the
// smallest generator lambda of Hom_R(S, R) with eps i(lambda) = lambda.
int cmd_transfer(const Options& o, const std::string& target, const std::string& source, const std::string& gram,
                 const std::string& eps_text, const std::string& mapping) {
  const int eps = parse_eps(eps_text);
  auto s = finite_ring(target);
  auto r = finite_ring(source);
  auto m = rings::parse_ring_map(r->symbolic()->ring(), s->symbolic()->ring(), mapping);
  auto pi = rings::FiniteRingMap::from_symbolic(m, r, s);
  auto flat = transfer::flat_coefficient(pi, modforms::DualityCoefficient::standard(r));
  auto lambda = flat.invariant_generator(eps);
  if (!lambda) throw Error(Errc::Unsupported, "no eps-invariant generator of the transfer coefficient");
  const auto& c = *flat.coefficient;
  auto rows = rings::parse_matrix(s->symbolic()->ring(), gram);
  std::vector<rings::Code> entries;
  for (const auto& row : rows)
    for (const auto& e : row) {
      auto code = s->parse(e.to_string());
      if (!code) throw Error(Errc::ParseError, "cannot read '" + e.to_string() + "' in " + s->descriptor());
      entries.push_back(c.act(*code, *lambda));
    }
  modforms::FLModule free(s, std::vector<modforms::CyclicType>(rows.size(), modforms::CyclicType{0, 1}));
  auto f = modforms::make_form(free, flat.coefficient, entries, eps);
  auto t = transfer::transfer_form(flat, f);
  std::string lam;
  for (std::size_t j = 0; j < s->dim(); ++j)
    lam += (j ? ", " : "") + std::string("lambda(") + s->name(s->basis(j)) + ")=" +
           r->name(flat.base->code(flat.map_of(*lambda).apply(s->vec(s->basis(j)))));
  if (o.json) {
    json j;
    j["lambda"] = lam;
    j["source_gram"] = f.gram_string();
    j["shape"] = t.module().shape_string();
    j["gram"] = t.gram_string();
    j["rank"] = t.rank();
    j["nondegenerate"] = t.is_nondegenerate();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << lam << "\n";
    std::cout << "source gram: " << f.gram_string() << "\n";
    std::cout << "module: " << t.module().shape_string() << "\n";
    std::cout << "gram: " << t.gram_string() << "\n";
    std::cout << (t.is_nondegenerate() ? "nondegenerate" : "degenerate") << "\n";
  }
  return kOk;
}

int cmd_diagonalize(const Options& o, const std::string& desc, const std::string& gram, const std::string& eps) {
  auto k = rings::parse_descriptor(desc);
  fieldwitt::FieldForm f(k, rings::parse_matrix(k.ring(), gram), parse_eps(eps));
  auto d = fieldwitt::diagonalize(f);
  auto inv = fieldwitt::witt_invariants(f);
  if (o.json) {
    json j;
    j["diagonal"] = d.to_string();
    j["invariants"] = inv.to_string();
    j["witt_class"] = inv.witt_class;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << d.to_string() << "\n" << inv.to_string() << "\n";
  }
  return kOk;
}

int cmd_axioms(const Options& o, const std::string& desc, int count, int length, int rank) {
  auto base = rings::parse_descriptor(desc);
  std::mt19937_64 rng(o.seed);
  auto data = chaindual::DualityData::standard(base);
  int failed = 0;
  json runs = json::array();
  for (int n = 0; n < count; ++n) {
    auto e = chaindual::random_free_complex(base, rng, -length / 2, length, static_cast<std::size_t>(rank));
    auto rep = chaindual::verify_duality_axioms(e, data);
    if (!rep.all_pass()) {
      ++failed;
      if (!o.json) std::cout << "complex " << n << ":\n" << e.to_string() << rep.to_string();
    }
    runs.push_back(rep.all_pass());
  }
  if (o.json) {
    json j;
    j["seed"] = o.seed;
    j["count"] = count;
    j["failed"] = failed;
    j["results"] = runs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "seed=" << o.seed << "\n" << (count - failed) << "/" << count << " complexes pass\n";
  }
  return failed ? kNegative : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian forms, Witt groups and duality checks over rings with involution"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--bound", o.bound, "enumeration bound on module length")->check(CLI::NonNegativeNumber);
  app.add_flag("--json", o.json, "structured output");
  app.add_option("--seed", o.seed, "seed for random complexes");
  app.add_option("--budget", o.budget, "cap on enumerated Gram tables");

  std::string desc, eps, seq, inv, twist, gram, source, mapping, ideal;
  int count = 20, length = 3, rank = 2;
  int status = kOk;

  auto* witt = app.add_subcommand("witt", "Witt group of finite length forms");
  witt->add_option("ring", desc)->required();
  witt->add_option("eps", eps)->required();
  witt->add_option("bound", o.bound);

  auto* ks = app.add_subcommand("koszul-sign", "sign of the involution on the conormal line");
  ks->add_option("ring", desc)->required();
  ks->add_option("sequence", seq)->required();
  ks->add_option("involution", inv);
  ks->add_option("--twist", twist, "unit c of the line twist sigma_L = c sigma");

  auto* dv = app.add_subcommand("devissage-check", "transfer along R -> R/m on Witt groups");
  dv->add_option("ring", desc)->required();
  dv->add_option("eps", eps)->required();
  dv->add_option("bound", o.bound);

  auto* lc = app.add_subcommand("localcase", "tower R -> R/J -> k");
  lc->add_option("ring", desc)->required();
  lc->add_option("ideal", ideal)->required();
  lc->add_option("eps", eps)->required();
  lc->add_option("bound", o.bound);

  auto* tr = app.add_subcommand("transfer", "push a free form along a finite map");
  tr->add_option("target", desc)->required();
  tr->add_option("source", source)->required();
  tr->add_option("gram", gram)->required();
  tr->add_option("eps", eps)->default_val("+1");
  tr->add_option("--map", mapping, "images of the source generators");

  auto* dg = app.add_subcommand("diagonalize", "diagonal form and invariants over a field");
  dg->add_option("field", desc)->required();
  dg->add_option("gram", gram)->required();
  dg->add_option("eps", eps)->default_val("+1");

  auto* ax = app.add_subcommand("axioms", "duality axioms on random free complexes");
  ax->add_option("ring", desc)->required();
  ax->add_option("--count", count);
  ax->add_option("--length", length);
  ax->add_option("--rank", rank);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*witt) status = cmd_witt(o, desc, eps);
    if (*ks) status = cmd_koszul(o, desc, seq, inv, twist);
    if (*dv) status = cmd_devissage(o, desc, eps);
    if (*lc) status = cmd_localcase(o, desc, ideal, eps);
    if (*tr) status = cmd_transfer(o, desc, source, gram, eps, mapping);
    if (*dg) status = cmd_diagonalize(o, desc, gram, eps);
    if (*ax) status = cmd_axioms(o, desc, count, length, rank);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == Errc::ParseError) return kParse;
    if (e.code() == Errc::EnumerationBoundExceeded) return kBound;
    return kOther;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return status;
}
