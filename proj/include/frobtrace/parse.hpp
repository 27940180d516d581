#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "frobtrace/error.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/poly.hpp"
#include "frobtrace/projective.hpp"

// Text grammars used by the command line:
//
//   poly     = ['+'|'-'] term (('+'|'-') term)*
//   term     = factor ('*' factor)*
//   factor   = uint | var ['^' uint]
//   form     = summand (('+'|'-') summand)*
//   summand  = '(' rational ')' 'd'var ('^' 'd'var)*
//   rational = group ['/' group]       group = '(' poly ')' | poly
//   divisor  = entry (',' entry)*      entry = poly ':' uint | 'H' ':' int
//
// Integer coefficients are reduced mod p. Variables must be declared.

namespace frobtrace {

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::size_t pos() const noexcept { return pos_; }

  bool at_identifier() {
    const char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  std::string identifier() {
    if (!at_identifier()) fail("expected identifier");
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t uint() {
    if (!at_digit()) fail("expected unsigned integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::uint64_t{1} << 40)) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& expected) {
    skip_ws();
    std::string found = pos_ < text_.size() ? "'" + std::string(1, text_[pos_]) + "'" : "end of input";
    throw ParseError(expected + ", found " + found, pos_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class PolyReader {
 public:
  PolyReader(Cursor& cur, const std::vector<std::string>& vars, const FieldRef& field)
      : cur_(cur), vars_(vars), field_(field) {}

  Poly poly() {
    Poly out(field_, vars_.size());
    bool negate = false;
    if (cur_.accept('-')) negate = true;
    else cur_.accept('+');
    while (true) {
      Poly t = term();
      out += negate ? -t : t;
      if (cur_.accept('+')) negate = false;
      else if (cur_.accept('-')) negate = true;
      else break;
    }
    return out;
  }

  std::size_t variable(const std::string& name, std::size_t at) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", at);
    return static_cast<std::size_t>(it - vars_.begin());
  }

 private:
  Poly term() {
    Monomial m(vars_.size());
    std::int64_t coeff = 1;
    const Residue p = field_->p();
    do {
      if (cur_.at_digit()) {
        coeff = static_cast<std::int64_t>((static_cast<std::uint64_t>(coeff) * (cur_.uint() % p)) % p);
      } else if (cur_.at_identifier()) {
        const auto at = cur_.pos();
        const auto index = variable(cur_.identifier(), at);
        std::uint64_t exp = 1;
        if (cur_.accept('^')) exp = cur_.uint();
        m.exps[index] += static_cast<std::uint32_t>(exp);
      } else {
        cur_.fail("expected coefficient or variable");
      }
    } while (cur_.accept('*'));
    return Poly::term(field_, std::move(m), Scalar::from_int(field_, coeff));
  }

  Cursor& cur_;
  const std::vector<std::string>& vars_;
  const FieldRef& field_;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const std::vector<std::string>& vars, const FieldRef& field) {
  detail::Cursor cur(text);
  detail::PolyReader reader(cur, vars, field);
  Poly f = reader.poly();
  if (!cur.at_end()) cur.fail("expected '+', '-' or end of input");
  return f;
}

inline DiffForm parse_form(std::string_view text, const std::vector<std::string>& vars, const FieldRef& field) {
  detail::Cursor cur(text);
  detail::PolyReader reader(cur, vars, field);
  std::optional<DiffForm> out;

  auto group = [&]() -> Poly {
    if (cur.accept('(')) {
      Poly f = reader.poly();
      cur.expect(')');
      return f;
    }
    return reader.poly();
  };

  bool negate = false;
  if (cur.accept('-')) negate = true;
  else cur.accept('+');
  while (true) {
    cur.expect('(');
    Poly num = group();
    Poly den = Poly::constant(field, vars.size(), 1);
    if (cur.accept('/')) {
      const auto at = cur.pos();
      den = group();
      if (den.is_zero()) throw ParseError("denominator is zero", at);
    }
    cur.expect(')');

    std::vector<std::size_t> order;
    do {
      const auto at = cur.pos();
      if (!cur.at_identifier()) cur.fail("expected differential 'd<var>'");
      const std::string token = cur.identifier();
      if (token.size() < 2 || token[0] != 'd') throw ParseError("expected differential 'd<var>', found '" + token + "'", at);
      order.push_back(reader.variable(token.substr(1), at + 1));
    } while (cur.accept('^'));

    if (!out) out.emplace(field, vars.size(), order.size());
    if (out->degree() != order.size()) throw ParseError("summands have different form degrees", cur.pos());
    RationalFn coeff(num, den);
    out->add_wedge(order, negate ? -coeff : coeff);

    if (cur.accept('+')) negate = false;
    else if (cur.accept('-')) negate = true;
    else break;
  }
  if (!cur.at_end()) cur.fail("expected '+', '-' or end of input");
  return *out;
}

/// "f:a,g:b,H:k" on P^n with n = vars.size() - 1. Empty text is the zero divisor.
inline DivisorSpec parse_divisor(std::string_view text, const std::vector<std::string>& vars, const FieldRef& field) {
  if (vars.empty()) throw UsageError("divisors need at least one homogeneous variable");
  DivisorSpec out(field, vars.size() - 1, 0);
  detail::Cursor cur(text);
  if (cur.at_end()) return out;
  detail::PolyReader reader(cur, vars, field);
  do {
    const auto at = cur.pos();
    if (cur.peek() == 'H') {
      // H:k is the hyperplane class; k may be negative.
      std::string word = cur.identifier();
      if (word == "H" && cur.accept(':')) {
        const bool neg = cur.accept('-');
        const auto k = static_cast<int>(cur.uint());
        out.set_k(out.k() + (neg ? -k : k));
        continue;
      }
      throw ParseError("expected 'H:k' or a polynomial entry", at);
    }
    Poly f = reader.poly();
    const std::string entry(text.substr(at, cur.pos() - at));
    cur.expect(':');
    const auto mult = cur.uint();
    if (!f.is_homogeneous()) throw ParseError("hypersurface equation '" + entry + "' is not homogeneous", at);
    if (f.is_zero()) throw ParseError("hypersurface equation '" + entry + "' is zero", at);
    out.add(f, static_cast<unsigned>(mult));
  } while (cur.accept(','));
  if (!cur.at_end()) cur.fail("expected ',' or end of input");
  return out;
}

/// Coefficients (constant term first) of a univariate polynomial in any single variable.
inline std::vector<Residue> parse_modulus(std::string_view text, Residue p) {
  detail::Cursor cur(text);
  std::vector<std::string> names;
  // Collect the single variable name from the text first.
  {
    detail::Cursor scan(text);
    while (!scan.at_end()) {
      if (scan.at_identifier()) {
        const auto at = scan.pos();
        auto id = scan.identifier();
        if (names.empty()) names.push_back(id);
        else if (names[0] != id) throw ParseError("modulus must be univariate, found '" + id + "'", at);
      } else if (scan.at_digit()) {
        scan.uint();
      } else {
        scan.accept(scan.peek());
      }
    }
  }
  if (names.empty()) names.push_back("t");
  const auto field = FieldSpec::prime(p);
  detail::PolyReader reader(cur, names, field);
  Poly f = reader.poly();
  if (!cur.at_end()) cur.fail("expected '+', '-' or end of input");
  std::vector<Residue> out(f.is_zero() ? 0 : static_cast<std::size_t>(f.total_degree()) + 1, 0);
  for (const auto& [m, c] : f.terms()) out[m.exps[0]] = c.coeffs()[0];
  return out;
}

/// Identifiers appearing in the texts, in order of first appearance.
/// Differentials "dX" contribute X; the keyword H before ':' is skipped.
inline std::vector<std::string> infer_vars(const std::vector<std::string>& texts) {
  std::vector<std::string> out;
  auto note = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& text : texts) {
    detail::Cursor scan(text);
    bool after_paren = false;
    while (!scan.at_end()) {
      if (scan.at_identifier()) {
        auto id = scan.identifier();
        if (after_paren && id.size() > 1 && id[0] == 'd') {
          note(id.substr(1));
        } else if (id == "H" && scan.peek() == ':') {
          // hyperplane keyword
        } else {
          note(id);
        }
        continue;
      }
      if (scan.at_digit()) {
        scan.uint();
        continue;
      }
      const char c = scan.peek();
      if (c == ')') after_paren = true;
      else if (c == '+' || c == '-' || c == '(') after_paren = false;
      scan.accept(c);
    }
  }
  return out;
}

}  // namespace frobtrace
