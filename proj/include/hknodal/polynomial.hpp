#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hknodal/error.hpp"
#include "hknodal/prime_field.hpp"

namespace hknodal {

/// A monomial x^ex y^ey z^ez. Ordered graded-lexicographically with x > y > z.
struct Monomial {
  std::uint32_t ex = 0, ey = 0, ez = 0;

  constexpr std::uint32_t degree() const noexcept { return ex + ey + ez; }

  constexpr bool divides(const Monomial& o) const noexcept {
    return ex <= o.ex && ey <= o.ey && ez <= o.ez;
  }

  friend constexpr Monomial operator*(const Monomial& a, const Monomial& b) noexcept {
    return {a.ex + b.ex, a.ey + b.ey, a.ez + b.ez};
  }
  /// Precondition: b divides a.
  friend constexpr Monomial operator/(const Monomial& a, const Monomial& b) noexcept {
    return {a.ex - b.ex, a.ey - b.ey, a.ez - b.ez};
  }

  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
  friend constexpr std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (auto c = a.ex <=> b.ex; c != 0) return c;
    return a.ey <=> b.ey;
  }
};

constexpr std::uint64_t binomial2(std::int64_t n) noexcept {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
}

/// Number of monomials of degree d in three variables, C(d+2, 2).
constexpr std::uint64_t monomial_count(std::int64_t d) noexcept {
  return d < 0 ? 0 : binomial2(d + 2);
}

/// Position of m inside monomial_basis(m.degree()).
constexpr std::size_t monomial_index(const Monomial& m) noexcept {
  const std::size_t d = m.degree(), a = m.ex;
  return a * (d + 1) - a * (a - 1) / 2 + m.ey;
}

/// All monomials of degree d in increasing graded-lex order.
inline std::vector<Monomial> monomial_basis(std::int64_t d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  out.reserve(monomial_count(d));
  const auto deg = static_cast<std::uint32_t>(d);
  for (std::uint32_t a = 0; a <= deg; ++a)
    for (std::uint32_t b = 0; a + b <= deg; ++b) out.push_back({a, b, deg - a - b});
  return out;
}

/// Homogeneous polynomial in x, y, z over F_p. Terms are kept sorted in
/// decreasing monomial order with nonzero reduced coefficients.
class GradedPoly {
 public:
  using coeff_type = PrimeField::value_type;
  struct Term {
    Monomial mono;
    coeff_type coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  explicit GradedPoly(PrimeField field) : field_(field) {}

  /// Builds from arbitrary (monomial, integer) pairs; repeated monomials are
  /// summed. Throws not_homogeneous if the surviving terms differ in degree.
  GradedPoly(PrimeField field, const std::vector<std::pair<Monomial, std::int64_t>>& terms)
      : field_(field) {
    std::map<Monomial, coeff_type> acc;
    for (const auto& [m, c] : terms) {
      auto& slot = acc[m];
      slot = field_.add(slot, field_.reduce(c));
    }
    assign(acc);
  }

  static GradedPoly monomial(PrimeField field, Monomial m, std::int64_t c = 1) {
    return GradedPoly(field, {{m, c}});
  }

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Common degree; nullopt for the zero polynomial.
  std::optional<std::uint32_t> degree() const noexcept {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().mono.degree();
  }

  /// Largest monomial with its coefficient. Precondition: nonzero.
  const Term& leading_term() const { return terms_.front(); }

  coeff_type coefficient(const Monomial& m) const noexcept {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return 0;
  }

  friend bool operator==(const GradedPoly&, const GradedPoly&) = default;

  friend GradedPoly operator+(const GradedPoly& f, const GradedPoly& g) {
    return combine(f, g, false);
  }
  friend GradedPoly operator-(const GradedPoly& f, const GradedPoly& g) {
    return combine(f, g, true);
  }

  friend GradedPoly operator*(const GradedPoly& f, const GradedPoly& g) {
    check_same_field(f, g);
    std::map<Monomial, coeff_type> acc;
    const auto& F = f.field_;
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) {
        auto& slot = acc[a.mono * b.mono];
        slot = F.add(slot, F.mul(a.coeff, b.coeff));
      }
    GradedPoly out(F);
    out.assign(acc);
    return out;
  }

  GradedPoly scaled(coeff_type c) const {
    GradedPoly out(field_);
    c = field_.reduce(c);
    if (c == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff = field_.mul(t.coeff, c);
    return out;
  }

  /// m * f.
  GradedPoly shifted(const Monomial& m) const {
    GradedPoly out(field_);
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.mono = t.mono * m;
    return out;
  }

 private:
  static void check_same_field(const GradedPoly& f, const GradedPoly& g) {
    if (!(f.field_ == g.field_))
      throw Error(errc::field_mismatch, "polynomials over F_" +
                                            std::to_string(f.field_.characteristic()) + " and F_" +
                                            std::to_string(g.field_.characteristic()));
  }

  static GradedPoly combine(const GradedPoly& f, const GradedPoly& g, bool subtract) {
    check_same_field(f, g);
    std::map<Monomial, coeff_type> acc;
    for (const auto& t : f.terms_) acc[t.mono] = t.coeff;
    for (const auto& t : g.terms_) {
      auto& slot = acc[t.mono];
      slot = subtract ? f.field_.sub(slot, t.coeff) : f.field_.add(slot, t.coeff);
    }
    GradedPoly out(f.field_);
    out.assign(acc);
    return out;
  }

  void assign(const std::map<Monomial, coeff_type>& acc) {
    terms_.clear();
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
      if (it->second != 0) terms_.push_back({it->first, it->second});
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree())
        throw Error(errc::not_homogeneous, "terms of degree " +
                                               std::to_string(terms_.front().mono.degree()) +
                                               " and " + std::to_string(t.mono.degree()));
  }

  PrimeField field_;
  std::vector<Term> terms_;
};

/// g^q for q a power of p, via the Frobenius map sum c_m m -> sum c_m^q m^q.
inline GradedPoly frobenius_power(const GradedPoly& g, std::uint64_t q) {
  const auto& F = g.field();
  F.log_p(q);
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  terms.reserve(g.size());
  const auto e = static_cast<std::uint32_t>(q);
  for (const auto& t : g.terms())
    terms.push_back({{t.mono.ex * e, t.mono.ey * e, t.mono.ez * e}, F.pow(t.coeff, q)});
  return GradedPoly(F, terms);
}

}  // namespace hknodal
