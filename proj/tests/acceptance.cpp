// One pass/fail line per acceptance criterion, with pinned time limits.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hkt/chaindual/chaindual.hpp"
#include "hkt/devissage/devissage.hpp"
#include "hkt/error.hpp"
#include "hkt/fieldwitt/fieldwitt.hpp"
#include "hkt/koszul/koszul.hpp"
#include "hkt/modforms/duality.hpp"
#include "hkt/rings/parse.hpp"

using namespace hkt;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

rings::FiniteRingPtr ring(const std::string& d) { return rings::FiniteRing::from(rings::parse_descriptor(d)); }

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

Outcome conormal_sign() {
  auto k = rings::parse_descriptor("Q[X,Y], sigma=swap");
  auto s = koszul::conormal_sign(koszul::RegularSequenceData::make(k, rings::parse_element_list(k.ring(), "[X - Y]")));
  Outcome o{s.u_string() == "-1" && s.report.all_pass(), "u=" + s.u_string()};
  return o;
}

Outcome complex_dichotomy() {
  Outcome o;
  auto conj = rings::parse_descriptor("Q(i), sigma=conj");
  auto one = conj.ring().scalar(1);
  auto zero_label = fieldwitt::witt_invariants(fieldwitt::diagonal(conj, {one, -one})).witt_class;
  for (int n = 1; n <= 8; ++n) {
    auto inv = fieldwitt::witt_invariants(fieldwitt::diagonal(conj, std::vector<rings::Element>(n, one)));
    if (!inv.signature || inv.signature->first != n || inv.witt_class == zero_label)
      fail(o, "n<1> for n=" + std::to_string(n) + " has class " + inv.witt_class);
  }
  auto triv = rings::parse_descriptor("Q(i)");
  auto t1 = triv.ring().scalar(1);
  auto d11 = fieldwitt::witt_invariants(fieldwitt::diagonal(triv, {t1, t1})).witt_class;
  auto hyp = fieldwitt::witt_invariants(fieldwitt::diagonal(triv, {t1, -t1})).witt_class;
  if (d11 != hyp) fail(o, "diag(1,1) has class " + d11 + " under the trivial involution");
  if (o.pass) o.detail = "signatures n for n=1..8; diag(1,1) ~ " + hyp;
  return o;
}

Outcome devissage_run(const std::string& d) {
  auto r = devissage::verify_devissage(ring(d), 1, 4);
  return Outcome{r.verdict() == "ISOMORPHISM (stable)",
                 r.source.group_string() + " -> " + r.target.group_string() + ", " + r.verdict()};
}

Outcome devissage_oracle() {
  Outcome o;
  std::string summary;
  for (std::string d : {"GF(3)[t]/(t^2)", "GF(3)[t]/(t^2), sigma: t -> -t", "GF(3)[t]/(t^3)",
                        "GF(3)[t]/(t^3), sigma: t -> -t"}) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome r = devissage_run(d);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60) fail(o, d + " took " + std::to_string(secs) + " s");
    if (!r.pass) fail(o, d + ": " + r.detail);
    summary += (summary.empty() ? "" : "; ") + r.detail;
  }
  if (o.pass) o.detail = summary;
  return o;
}

Outcome swap_vanishing() {
  auto w = modforms::witt_of_product_with_swap(rings::parse_descriptor("GF(3)"), 4);
  return Outcome{w.group_string() == "0" && w.stable, w.group_string() + (w.stable ? " (stable)" : " (unstable)")};
}

Outcome transfer_exhaustive() {
  Outcome o;
  auto k = ring("GF(3)");
  auto s = ring("GF(9), sigma=frobenius");
  auto pi = rings::FiniteRingMap::from_symbolic(
      rings::parse_ring_map(k->symbolic()->ring(), s->symbolic()->ring(), ""), k, s);
  auto flat = transfer::flat_coefficient(pi, modforms::DualityCoefficient::standard(k));
  auto lambda = *flat.invariant_generator(1);
  auto one = transfer::transfer_form(flat, modforms::diagonal_form(s, flat.coefficient, {lambda}, 1));
  bool symmetric = true;
  for (std::size_t i = 0; i < one.rank(); ++i)
    for (std::size_t j = 0; j < one.rank(); ++j) symmetric = symmetric && one.entry(i, j) == one.entry(j, i);
  if (one.rank() != 2 || !one.is_nondegenerate() || !symmetric) fail(o, "transfer of <1> is " + one.gram_string());

  modforms::WittComputation w(s, flat.coefficient, 1, 3);
  std::vector<modforms::HermitianForm> forms;
  std::vector<bool> metabolic;
  std::size_t count = 0;
  for (std::size_t sh = 0; sh < w.num_shapes(); ++sh)
    for (std::uint64_t i = 0; i < w.shape_tables(sh); ++i) {
      std::size_t c = w.class_of_table(sh, i);
      if (c == modforms::WittComputation::kDegenerate) continue;
      auto f = w.table_form(sh, i);
      ++count;
      modforms::HermitianForm t = transfer::transfer_form(flat, f);  // throws if degenerate
      if (w.classes()[c].metabolic && !modforms::is_metabolic(t)) fail(o, "metabolic " + f.gram_string() + " not preserved");
      if (f.length() <= 2) {
        forms.push_back(f);
        metabolic.push_back(w.classes()[c].metabolic);
      }
    }
  std::size_t pairs = 0;
  for (const auto& f : forms)
    for (const auto& g : forms) {
      if (f.length() + g.length() > 3 || f.length() == 0 || g.length() == 0) continue;
      ++pairs;
      auto lhs = transfer::transfer_form(flat, modforms::orthogonal_sum(f, g));
      auto rhs = modforms::orthogonal_sum(transfer::transfer_form(flat, f), transfer::transfer_form(flat, g));
      if (!modforms::isometric(lhs, rhs)) fail(o, "sum of " + f.gram_string() + " and " + g.gram_string());
    }
  if (o.pass)
    o.detail = "<1> -> " + one.gram_string() + "; " + std::to_string(count) + " forms, " + std::to_string(pairs) + " sums";
  return o;
}

Outcome axiom_suites() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int complexes = 0;
  for (std::string d : {"GF(3)", "Q"}) {
    auto base = rings::parse_descriptor(d);
    auto data = chaindual::DualityData::standard(base);
    for (int n = 0; n < 50; ++n) {
      auto e = chaindual::random_free_complex(base, rng, -1, 3, 2);
      auto rep = chaindual::verify_duality_axioms(e, data);
      ++complexes;
      if (!rep.all_pass()) fail(o, d + " complex " + std::to_string(n) + ":\n" + rep.to_string());
    }
  }
  int koszul = 0;
  for (auto [desc, seq] : {std::pair{"Q[t]", "[t]"}, {"Q[X,Y]", "[X, Y]"}, {"Q[X,Y]", "[X - Y]"},
                           {"GF(3)[t]", "[t^2 + 1]"}, {"Q[X,Y,Z]", "[X, Y - Z, Z + 1]"}, {"Q[t], sigma: t -> -t", "[t]"},
                           {"Q[X,Y], sigma=swap", "[X - Y]"}, {"Q[X,Y], sigma=swap", "[X + Y - 2]"}}) {
    auto k = rings::parse_descriptor(desc);
    auto data = koszul::RegularSequenceData::make(k, rings::parse_element_list(k.ring(), seq));
    auto kc = koszul::koszul_complex(data);
    for (int p = kc.lo(); p < kc.hi(); ++p)
      if (!(kc.diff(p + 1) * kc.diff(p)).is_zero()) fail(o, std::string(desc) + " d^2 != 0");
    if (!koszul::beta_tilde(data).composite_zero) fail(o, std::string(desc) + " " + seq + ": beta~ o d != 0");
    ++koszul;
  }
  if (o.pass) o.detail = std::to_string(complexes) + " complexes, " + std::to_string(koszul) + " Koszul data";
  return o;
}

Outcome localcase() {
  Outcome o;
  for (std::string d : {"GF(3)[t]/(t^3)", "GF(3)[t]/(t^3), sigma: t -> -t"}) {
    auto a = ring(d);
    auto r = devissage::verify_localcase_factorization(a, {*a->parse("t^2")}, 1, 3);
    if (!r.diagram_commutes) fail(o, d + ": " + r.diagram_detail);
    if (!r.p_star.isomorphism()) fail(o, d + ": p_* " + r.p_star.detail);
    if (o.pass) o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(r.classes_checked) + " classes commute, p_* bijective";
  }
  return o;
}

Outcome field_oracle() {
  Outcome o;
  std::size_t compared = 0;
  for (std::string d : {"GF(3)", "GF(5)"}) {
    auto k = rings::parse_descriptor(d);
    auto a = rings::FiniteRing::from(k);
    modforms::WittComputation w(a, modforms::DualityCoefficient::standard(a), 1, 4);
    auto pd = modforms::present(w, 4);
    auto one = k.ring().scalar(1);
    const std::string trivial = fieldwitt::witt_invariants(fieldwitt::diagonal(k, {one, -one})).witt_class;
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < w.classes().size(); ++c) {
      auto f = w.class_form(c);
      fieldwitt::Matrix g(f.rank(), std::vector<rings::Element>(f.rank()));
      for (std::size_t i = 0; i < f.rank(); ++i)
        for (std::size_t j = 0; j < f.rank(); ++j) g[i][j] = rings::parse_element(k.ring(), a->name(f.entry(i, j)));
      labels.push_back(f.rank() == 0 ? trivial : fieldwitt::witt_invariants(fieldwitt::FieldForm(k, g, 1)).witt_class);
    }
    for (std::size_t x = 0; x < labels.size(); ++x)
      for (std::size_t y = 0; y < labels.size(); ++y) {
        ++compared;
        if ((labels[x] == labels[y]) != (pd.coords[x] == pd.coords[y]))
          fail(o, d + ": classes " + std::to_string(x) + " and " + std::to_string(y) + " disagree");
      }
  }
  if (o.pass) o.detail = std::to_string(compared) + " class pairs, 0 disagreements";
  return o;
}

std::pair<std::string, int> run_cli(const std::string& args) {
  std::string cmd = std::string(HKT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {"", -1};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {out, status};
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::string> runs = {
      "witt 'GF(3), sigma=id' +1 4",
      "witt 'GF(3)xGF(3), sigma=swap' +1 3 --json",
      "koszul-sign 'Q[X,Y]' '[X-Y]' swap",
      "devissage-check 'GF(3)[t]/(t^2), sigma=id' +1 4",
      "localcase 'GF(3)[t]/(t^3)' '[t^2]' +1 3 --json",
      "transfer 'GF(9)/GF(3), sigma=frobenius' 'GF(3)' '[[1]]'",
      "diagonalize 'Q(i), sigma=conj' '[[0,1],[1,0]]'",
      "axioms 'GF(3)' --count 10 --seed 5",
      "axioms 'Q' --count 10 --seed 5 --json",
      "witt 'GF(3)[' +1",
  };
  for (const auto& r : runs) {
    auto a = run_cli(r), b = run_cli(r);
    if (a != b) fail(o, "output differs for: " + r);
    if (a.second == -1 || a.first.empty()) fail(o, "could not run: " + r);
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " invocations byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "conormal sign of (X-Y) under swap", 1, conormal_sign},
      {2, "W(C, conj) infinite order vs W(C) trivial diag(1,1)", 1, complex_dichotomy},
      {3, "devissage isomorphism, four rings at bound 4", 240, devissage_oracle},
      {4, "W(F_3 x F_3, swap) = 0", 30, swap_vanishing},
      {5, "F_9/F_3 transfer on all forms of length <= 3", 60, transfer_exhaustive},
      {6, "duality axioms and Koszul identities", 30, axiom_suites},
      {7, "tower t^3 -> t^2 -> F_3 factorization", 120, localcase},
      {8, "field invariants agree with exhaustive classes", 30, field_oracle},
      {9, "CLI determinism", 120, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.limit_seconds) fail(o, "over the time limit");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", secs, c.limit_seconds);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << timing << "] " << c.name
              << ": " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  return failures ? 1 : 0;
}
