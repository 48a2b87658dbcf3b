#pragma once

#include <cstdint>
#include <string>

#include "hknodal/error.hpp"

namespace hknodal {

/// Deterministic trial-division test; adequate below 2^31.
constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// The prime field F_p with 2 <= p < 2^31. Elements are least non-negative
/// residues held in 32 bits; products go through 64 bits.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31) ||
        !is_prime(static_cast<std::uint64_t>(p)))
      throw Error(errc::not_prime, std::to_string(p) + " is not a prime below 2^31");
    p_ = static_cast<value_type>(p);
  }

  value_type characteristic() const noexcept { return p_; }

  value_type reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }

  value_type add(value_type a, value_type b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }

  value_type pow(value_type a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % p_, acc = 1 % p_;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<value_type>(acc);
  }

  value_type inv(value_type a) const {
    if (a % p_ == 0) throw Error(errc::division_by_zero, "inverse of 0 in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
  }

  /// Returns n with q == p^n, or throws when q is not a power of p.
  unsigned log_p(std::uint64_t q) const {
    if (q == 0) throw Error(errc::not_power_of_p, "q = 0");
    unsigned n = 0;
    while (q % p_ == 0) {
      q /= p_;
      ++n;
    }
    if (q != 1) throw Error(errc::not_power_of_p, "q is not a power of " + std::to_string(p_));
    return n;
  }

  /// p^n, throwing when it does not fit in 63 bits.
  std::uint64_t power_of_p(unsigned n) const {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (q > (std::uint64_t{1} << 62) / p_)
        throw Error(errc::invalid_argument, "p^n overflows 63 bits");
      q *= p_;
    }
    return q;
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  value_type p_ = 2;
};

}  // namespace hknodal
