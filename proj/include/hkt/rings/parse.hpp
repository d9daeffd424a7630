#pragma once

#include <string>
#include <vector>

#include "hkt/rings/involution.hpp"
#include "hkt/rings/ring.hpp"

namespace hkt::rings {

// Descriptor grammar (see README):
//   descriptor := ring [ ("," | "with") involution ]
//   involution := "sigma" ("=" | ":") ( name | mapping {"," mapping} )
//   ring       := factor { "x" factor }
//   factor     := atom { "[" ident {"," ident} "]" [ "/(" expr ")" ] }
//   atom       := "GF(" q ")" [ "/GF(" p ")" ] | "Q" | "Q(i)" | "Q(sqrt(" d "))" | "(" ring ")"
Ring parse_ring(const std::string& text);
RingWithInvolution parse_descriptor(const std::string& text);

// Polynomial expression in the generators of r, e.g. "2*t^2 - X*Y + 1/2".
Element parse_element(const Ring& r, const std::string& text);
// "[a, b, c]" or "a, b, c".
std::vector<Element> parse_element_list(const Ring& r, const std::string& text);
// "[[a, b], [c, d]]".
std::vector<std::vector<Element>> parse_matrix(const Ring& r, const std::string& text);
// Involution from a name (id, frobenius, conj, swap) or a mapping list "t -> -t".
// A leading "sigma:" / "sigma=" is accepted.
RingWithInvolution parse_involution(const Ring& r, const std::string& text);
// Ring map from a mapping list; unmapped source generators go to the
// generator of the same name in the target.
RingMap parse_ring_map(const Ring& source, const Ring& target, const std::string& text);

}  // namespace hkt::rings
