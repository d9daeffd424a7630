#include "hkt/rings/parse.hpp"

#include <cctype>

#include "hkt/error.hpp"

namespace hkt::rings {

namespace {

class Cursor {
 public:
  explicit Cursor(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  char peek_raw() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  // Keyword: token not followed by an identifier character.
  bool accept_word(const std::string& w) {
    skip();
    if (s_.compare(pos_, w.size(), w) != 0) return false;
    std::size_t end = pos_ + w.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  bool at_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident() {
    if (!at_ident()) fail("expected an identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  bool at_int() { return std::isdigit(static_cast<unsigned char>(peek())); }
  mpz_class integer() {
    if (!at_int()) fail("expected an integer");
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(s_.substr(start, pos_ - start));
  }
  long small_int() {
    mpz_class z = integer();
    if (!z.fits_slong_p() || z > 1000000) fail("integer too large");
    return z.get_si();
  }
  [[noreturn]] void fail(const std::string& what) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
      if (s_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }
  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  const std::string& text() const { return s_; }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------------ expressions

Element parse_expr(Cursor& c, const Ring& r);

Element parse_primary(Cursor& c, const Ring& r) {
  if (c.accept("(")) {
    Element e = parse_expr(c, r);
    c.expect(")");
    return e;
  }
  if (c.at_int()) {
    mpz_class num = c.integer();
    std::size_t save = c.pos();
    if (c.accept("/")) {
      if (c.at_int()) {
        mpz_class den = c.integer();
        if (den == 0) c.fail("division by zero");
        return r.scalar(mpq_class(num, den));
      }
      c.set_pos(save);
    }
    return r.scalar(mpq_class(num));
  }
  if (c.at_ident()) {
    std::size_t save = c.pos();
    std::string name = c.ident();
    int idx = r.var_index(name);
    if (idx < 0) {
      c.set_pos(save);
      c.fail("unknown generator '" + name + "'");
    }
    return r.gen(static_cast<std::size_t>(idx));
  }
  c.fail("expected a number, generator or '('");
}

Element parse_power(Cursor& c, const Ring& r) {
  Element base = parse_primary(c, r);
  if (c.accept("^")) return base.pow(static_cast<unsigned long>(c.small_int()));
  return base;
}

Element parse_term(Cursor& c, const Ring& r) {
  Element e = parse_power(c, r);
  for (;;) {
    if (c.accept("*")) {
      e *= parse_power(c, r);
      continue;
    }
    char n = c.peek();
    if (std::isalpha(static_cast<unsigned char>(n)) || n == '(') {
      e *= parse_power(c, r);
      continue;
    }
    return e;
  }
}

Element parse_expr(Cursor& c, const Ring& r) {
  Element e = r.zero();
  bool neg = false;
  if (c.accept("+")) {
  } else if (c.peek() == '-' && c.text().compare(c.pos(), 2, "->") != 0) {
    c.accept("-");
    neg = true;
  }
  Element t = parse_term(c, r);
  e = neg ? -t : t;
  for (;;) {
    if (c.accept("+")) {
      e += parse_term(c, r);
    } else if (c.peek() == '-' && c.text().compare(c.pos(), 2, "->") != 0) {
      c.accept("-");
      e -= parse_term(c, r);
    } else {
      return e;
    }
  }
}

// ------------------------------------------------------------ rings

Ring parse_ring_expr(Cursor& c);

Ring parse_atom(Cursor& c) {
  if (c.accept("(")) {
    Ring r = parse_ring_expr(c);
    c.expect(")");
    return r;
  }
  if (c.accept_word("GF")) {
    c.expect("(");
    long q = c.small_int();
    c.expect(")");
    long p = 0;
    int k = 0;
    for (long d = 2; d <= q; ++d)
      if (q % d == 0) {
        p = d;
        break;
      }
    if (p == 0) c.fail("GF(q) needs q >= 2");
    long m = q;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1) c.fail("GF(q) needs a prime power q");
    if (p == 2) throw Error(Errc::CharacteristicTwo, "GF(" + std::to_string(q) + ") has characteristic 2");
    std::size_t save = c.pos();
    if (c.accept("/")) {
      if (c.accept_word("GF")) {
        c.expect("(");
        long base = c.small_int();
        c.expect(")");
        long b = base;
        int kb = 0;
        while (b % p == 0) {
          b /= p;
          ++kb;
        }
        if (b != 1 || k % kb != 0) c.fail("GF(" + std::to_string(base) + ") is not a subfield");
        if (kb != 1) c.fail("only extensions of prime fields are supported");
      } else {
        c.set_pos(save);
      }
    }
    return Ring::finite_field(static_cast<unsigned long>(p), k);
  }
  if (c.accept_word("QQ")) return Ring::rationals();
  if (c.accept_word("Q")) {
    std::size_t save = c.pos();
    if (c.accept("(")) {
      if (c.accept_word("i")) {
        c.expect(")");
        return Ring::quadratic(-1);
      }
      if (c.accept_word("sqrt")) {
        c.expect("(");
        bool neg = c.accept("-");
        long d = c.small_int();
        c.expect(")");
        c.expect(")");
        try {
          return Ring::quadratic(neg ? -d : d);
        } catch (const Error& e) {
          c.fail(e.what());
        }
      }
      c.set_pos(save);
    }
    return Ring::rationals();
  }
  c.fail("expected a ring (GF(q), Q, Q(i), Q(sqrt(d)) or parenthesised ring)");
}

Ring parse_factor(Cursor& c) {
  Ring r = parse_atom(c);
  while (c.peek() == '[') {
    c.expect("[");
    std::vector<std::string> names;
    do {
      names.push_back(c.ident());
    } while (c.accept(","));
    c.expect("]");
    try {
      r = Ring::polynomial(r, names);
    } catch (const Error& e) {
      c.fail(e.what());
    }
    std::size_t save = c.pos();
    if (c.accept("/")) {
      if (!c.accept("(")) {
        c.set_pos(save);
        continue;
      }
      if (names.size() != 1) c.fail("quotients are univariate: adjoin one variable per [t]/(f)");
      Element f = parse_expr(c, r);
      c.expect(")");
      try {
        r = Ring::quotient(r, f);
      } catch (const Error& e) {
        if (e.code() == Errc::CharacteristicTwo) throw;
        c.fail(e.what());
      }
    }
  }
  return r;
}

Ring parse_ring_expr(Cursor& c) {
  Ring r = parse_factor(c);
  for (;;) {
    c.skip();
    char ch = c.peek();
    if (ch == 'x') {
      c.set_pos(c.pos() + 1);
      Ring other = parse_factor(c);
      if (other != r) c.fail("only products R x R of a ring with itself are supported");
      r = Ring::product(r);
      continue;
    }
    if (c.accept("\xC3\x97")) {  // UTF-8 multiplication sign
      Ring other = parse_factor(c);
      if (other != r) c.fail("only products R x R of a ring with itself are supported");
      r = Ring::product(r);
      continue;
    }
    return r;
  }
}

std::vector<Element> mapping_list(Cursor& c, const Ring& source, const Ring& target) {
  std::vector<Element> ims;
  std::vector<bool> given(source.num_vars(), false);
  for (std::size_t i = 0; i < source.num_vars(); ++i) {
    int j = target.var_index(source.var(i).name);
    ims.push_back(j < 0 ? target.zero() : target.gen(static_cast<std::size_t>(j)));
    given[i] = j >= 0;
  }
  auto check = [&] {
    for (std::size_t i = 0; i < given.size(); ++i)
      if (!given[i]) c.fail("generator " + source.var(i).name + " has no image");
  };
  if (c.done()) {
    check();
    return ims;
  }
  do {
    std::size_t save = c.pos();
    std::string name = c.ident();
    int idx = source.var_index(name);
    if (idx < 0) {
      c.set_pos(save);
      c.fail("unknown generator '" + name + "'");
    }
    if (!c.accept("->") && !c.accept("\xE2\x86\xA6") && !c.accept("\xE2\x86\x92")) c.fail("expected '->'");
    ims[static_cast<std::size_t>(idx)] = parse_expr(c, target);
    given[static_cast<std::size_t>(idx)] = true;
  } while (c.accept(",") || c.accept(";"));
  if (!c.done()) c.fail("unexpected trailing input");
  check();
  return ims;
}

RingWithInvolution parse_involution_at(Cursor& c, const Ring& r) {
  if (c.accept_word("sigma")) {
    if (!c.accept("=") && !c.accept(":")) c.fail("expected '=' or ':' after sigma");
  }
  std::size_t save = c.pos();
  if (c.at_ident()) {
    std::string w = c.ident();
    if (c.done() && r.var_index(w) < 0) {
      try {
        return named_involution(r, w);
      } catch (const Error& e) {
        if (e.code() == Errc::InvalidArgument) {
          c.set_pos(save);
          c.fail("unknown involution '" + w + "'");
        }
        throw;
      }
    }
    c.set_pos(save);
  }
  if (c.done()) c.fail("expected an involution");
  auto ims = mapping_list(c, r, r);
  return make_ring_with_involution(r, ims);
}

}  // namespace

Ring parse_ring(const std::string& text) {
  Cursor c(text);
  Ring r = parse_ring_expr(c);
  if (!c.done()) c.fail("unexpected trailing input");
  return r;
}

RingWithInvolution parse_descriptor(const std::string& text) {
  Cursor c(text);
  Ring r = parse_ring_expr(c);
  if (c.done()) return trivial_involution(r);
  if (!c.accept(",") && !c.accept_word("with")) c.fail("expected ',' or 'with' before the involution");
  return parse_involution_at(c, r);
}

Element parse_element(const Ring& r, const std::string& text) {
  Cursor c(text);
  Element e = parse_expr(c, r);
  if (!c.done()) c.fail("unexpected trailing input");
  return e;
}

std::vector<Element> parse_element_list(const Ring& r, const std::string& text) {
  Cursor c(text);
  bool bracket = c.accept("[");
  std::vector<Element> out;
  if (!(bracket && c.peek() == ']')) {
    do {
      out.push_back(parse_expr(c, r));
    } while (c.accept(","));
  }
  if (bracket) c.expect("]");
  if (!c.done()) c.fail("unexpected trailing input");
  return out;
}

std::vector<std::vector<Element>> parse_matrix(const Ring& r, const std::string& text) {
  Cursor c(text);
  c.expect("[");
  std::vector<std::vector<Element>> rows;
  if (c.peek() != ']') {
    do {
      c.expect("[");
      std::vector<Element> row;
      if (c.peek() != ']') {
        do {
          row.push_back(parse_expr(c, r));
        } while (c.accept(","));
      }
      c.expect("]");
      rows.push_back(std::move(row));
    } while (c.accept(","));
  }
  c.expect("]");
  if (!c.done()) c.fail("unexpected trailing input");
  for (const auto& row : rows)
    if (row.size() != rows.size()) throw Error(Errc::InvalidArgument, "matrix must be square");
  return rows;
}

RingWithInvolution parse_involution(const Ring& r, const std::string& text) {
  Cursor c(text);
  return parse_involution_at(c, r);
}

RingMap parse_ring_map(const Ring& source, const Ring& target, const std::string& text) {
  Cursor c(text);
  auto ims = mapping_list(c, source, target);
  return RingMap(source, target, ims);
}

}  // namespace hkt::rings
