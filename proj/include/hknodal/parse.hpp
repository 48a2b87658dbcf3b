#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hknodal/error.hpp"
#include "hknodal/polynomial.hpp"

namespace hknodal {

namespace detail {

// Recursive-descent reader for
//   poly  := sign? term (("+"|"-") term)*
//   term  := coeff | mono | coeff "*" mono
//   mono  := var pow ("*" var pow)*
//   var   := "x" | "y" | "z"
//   pow   := ("^" uint)?
// Whitespace is ignored everywhere.
class FormParser {
 public:
  FormParser(std::string_view src, PrimeField field) : src_(src), field_(field) {}

  GradedPoly parse() {
    struct Written {
      Monomial mono;
      std::uint32_t coeff;
      std::size_t pos;
    };
    std::vector<Written> written;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
    }
    for (;;) {
      skip_ws();
      const std::size_t start = pos_;
      auto [mono, coeff] = term();
      if (negative) coeff = field_.neg(coeff);
      written.push_back({mono, coeff, start});
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      negative = peek() == '-';
      ++pos_;
    }

    // Homogeneity is judged on the terms that survive reduction mod p.
    const Written* ref = nullptr;
    for (const auto& w : written) {
      if (w.coeff == 0) continue;
      if (!ref) {
        ref = &w;
      } else if (w.mono.degree() != ref->mono.degree()) {
        throw Error(errc::not_homogeneous,
                    "term at column " + std::to_string(w.pos + 1) + " has degree " +
                        std::to_string(w.mono.degree()) + " but term at column " +
                        std::to_string(ref->pos + 1) + " has degree " +
                        std::to_string(ref->mono.degree()));
      }
    }
    std::vector<std::pair<Monomial, std::int64_t>> terms;
    for (const auto& w : written) terms.push_back({w.mono, w.coeff});
    return GradedPoly(field_, terms);
  }

 private:
  std::pair<Monomial, std::uint32_t> term() {
    skip_ws();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      const std::uint32_t c = coefficient();
      skip_ws();
      if (peek() != '*') return {Monomial{}, c};
      ++pos_;
      skip_ws();
      if (!is_var(peek())) fail("expected a variable after '*'");
      return {monomial(), c};
    }
    if (is_var(peek())) return {monomial(), 1};
    fail(at_end() ? "unexpected end of input" : "expected a coefficient or variable");
  }

  Monomial monomial() {
    Monomial m;
    for (;;) {
      skip_ws();
      const char v = peek();
      if (!is_var(v)) fail("expected a variable");
      ++pos_;
      std::uint32_t e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        e = exponent();
      }
      (v == 'x' ? m.ex : v == 'y' ? m.ey : m.ez) += e;
      skip_ws();
      // A '*' followed by a digit would be a coefficient, which the grammar
      // only allows at the start of a term.
      if (peek() != '*') return m;
      ++pos_;
    }
  }

  std::uint32_t coefficient() {
    std::uint64_t r = 0;
    const auto p = field_.characteristic();
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      r = (r * 10 + static_cast<unsigned>(peek() - '0')) % p;
      ++pos_;
    }
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t exponent() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent after '^'");
    std::uint64_t e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned>(peek() - '0');
      if (e > 1'000'000) fail("exponent too large");
      ++pos_;
    }
    return static_cast<std::uint32_t>(e);
  }

  static bool is_var(char c) noexcept { return c == 'x' || c == 'y' || c == 'z'; }
  bool at_end() const noexcept { return pos_ >= src_.size(); }
  char peek() const noexcept { return at_end() ? '\0' : src_[pos_]; }
  void skip_ws() noexcept {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    std::string token = at_end() ? "<end>" : std::string(1, src_[pos_]);
    throw Error(errc::syntax_error, why + " at column " + std::to_string(pos_ + 1) +
                                        " (offending token '" + token + "') in \"" +
                                        std::string(src_) + "\"");
  }

  std::string_view src_;
  PrimeField field_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a homogeneous form over F_p. The zero polynomial is accepted; callers
/// that need a nonzero form must check.
inline GradedPoly parse_form(std::string_view src, PrimeField field) {
  return detail::FormParser(src, field).parse();
}

/// Canonical text: terms in decreasing graded-lex order, coefficients as
/// least residues, unit coefficients omitted. parse_form inverts it.
inline std::string render(const GradedPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string mono;
    auto var = [&mono](char v, std::uint32_t e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += v;
      if (e > 1) mono += '^' + std::to_string(e);
    };
    var('x', t.mono.ex);
    var('y', t.mono.ey);
    var('z', t.mono.ez);
    if (mono.empty())
      out += std::to_string(t.coeff);
    else if (t.coeff == 1)
      out += mono;
    else
      out += std::to_string(t.coeff) + '*' + mono;
  }
  return out;
}

}  // namespace hknodal
