#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hknodal/error.hpp"

namespace hknodal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" with den > 0, or just "num" for integers.
inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_integral(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

/// Finitely supported integer Laurent polynomial in T.
class LaurentPoly {
 public:
  using exponent_type = std::int64_t;
  using map_type = std::map<exponent_type, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(std::initializer_list<std::pair<const exponent_type, BigInt>> init) {
    for (const auto& [e, c] : init) add_term(e, c);
  }

  static LaurentPoly constant(const BigInt& c) { return monomial(0, c); }
  static LaurentPoly monomial(exponent_type e, const BigInt& c = 1) {
    LaurentPoly out;
    out.add_term(e, c);
    return out;
  }
  /// (1 - T)^k for k >= 0.
  static LaurentPoly one_minus_T_pow(unsigned k) {
    LaurentPoly out = constant(1);
    const LaurentPoly f{{0, 1}, {1, -1}};
    for (unsigned i = 0; i < k; ++i) out = out * f;
    return out;
  }

  const map_type& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  exponent_type min_exponent() const { return coeffs_.begin()->first; }
  exponent_type max_exponent() const { return coeffs_.rbegin()->first; }

  BigInt coefficient(exponent_type e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? BigInt(0) : it->second;
  }

  void add_term(exponent_type e, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly{} - a; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.coeffs_)
      for (const auto& [eb, cb] : b.coeffs_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend LaurentPoly operator*(const BigInt& k, const LaurentPoly& a) {
    LaurentPoly out;
    if (k == 0) return out;
    for (const auto& [e, c] : a.coeffs_) out.coeffs_.emplace(e, k * c);
    return out;
  }

  /// T^k * this.
  LaurentPoly shifted(exponent_type k) const {
    LaurentPoly out;
    for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e + k, c);
    return out;
  }

  BigInt value_at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : coeffs_) s += c;
    return s;
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  map_type coeffs_;
};

/// The exact quotient b with (1 - T) b = a. Requires a(1) = 0.
inline LaurentPoly div_exact_one_minus_T(const LaurentPoly& a) {
  if (a.is_zero()) return {};
  if (a.value_at_one() != 0)
    throw Error(errc::inexact_division,
                "value at T=1 is " + a.value_at_one().str() + ", not divisible by (1-T)");
  // b_k = sum_{j <= k} a_j, supported on [min, max - 1].
  LaurentPoly b;
  BigInt running = 0;
  for (auto e = a.min_exponent(); e < a.max_exponent(); ++e) {
    running += a.coefficient(e);
    b.add_term(e, running);
  }
  return b;
}

/// Second derivative at T = 1: sum c_k k (k - 1).
inline Rational d2_at_1(const LaurentPoly& a) {
  BigInt s = 0;
  for (const auto& [e, c] : a.coefficients()) s += c * BigInt(e) * BigInt(e - 1);
  return Rational(s);
}

/// (1 - T)^j * sum_{k >= k_lo} f(k) T^k, computed on [k_lo, k_hi] from the
/// j-th differences of f. The result is certified finite by probing: f must
/// vanish at k_lo - 1 and k_lo - 2, and the j-th difference must vanish at
/// k_hi + 1 and k_hi + 2. Otherwise window_not_stable is thrown.
inline LaurentPoly window_transform(const std::function<BigInt(std::int64_t)>& f,
                                    std::int64_t k_lo, std::int64_t k_hi, unsigned j) {
  if (j < 1 || j > 2) throw Error(errc::invalid_argument, "window_transform supports j in {1,2}");
  if (k_hi < k_lo) throw Error(errc::invalid_argument, "empty window");
  if (f(k_lo - 1) != 0 || f(k_lo - 2) != 0)
    throw Error(errc::window_not_stable,
                "sequence does not vanish below k=" + std::to_string(k_lo));

  std::map<std::int64_t, BigInt> cache;
  auto value = [&](std::int64_t k) -> const BigInt& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, k < k_lo ? BigInt(0) : f(k)).first;
    return it->second;
  };
  auto diff = [&](std::int64_t k) {
    return j == 1 ? BigInt(value(k) - value(k - 1))
                  : BigInt(value(k) - 2 * value(k - 1) + value(k - 2));
  };

  if (diff(k_hi + 1) != 0 || diff(k_hi + 2) != 0)
    throw Error(errc::window_not_stable,
                "difference does not vanish above k=" + std::to_string(k_hi));
  LaurentPoly out;
  for (auto k = k_lo; k <= k_hi; ++k) out.add_term(k, diff(k));
  return out;
}

/// "3*T^27 + 12*T^28 + 6*T^30", ascending exponents.
inline std::string render(const LaurentPoly& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : a.coefficients()) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first)
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    first = false;
    std::string power = e == 0 ? "" : e == 1 ? "T" : "T^" + std::to_string(e);
    if (power.empty())
      out += mag.str();
    else if (mag == 1)
      out += power;
    else
      out += mag.str() + "*" + power;
  }
  return out;
}

}  // namespace hknodal
