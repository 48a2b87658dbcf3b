#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hknodal/error.hpp"
#include "hknodal/laurent.hpp"

namespace hknodal {

constexpr std::int64_t floor_mod(std::int64_t a, std::int64_t m) noexcept {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) noexcept {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// Maximal run of equal consecutive entries of a cycle.
struct Bloc {
  std::int64_t entry = 0;
  std::size_t length = 0;
  int epsilon = 0;       ///< +1 locally maximal, -1 locally minimal, 0 otherwise
  int epsilon_star = 0;  ///< epsilon, except 0 for a locally maximal bloc of zeroes
  friend bool operator==(const Bloc&, const Bloc&) = default;
};

/// Per distinct entry -n: multiplicity r, s = sum of epsilon over its blocs,
/// and the number of locally maximal blocs with that entry.
struct EntryStrand {
  std::int64_t n = 0;
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::int64_t local_maxima = 0;
  friend bool operator==(const EntryStrand&, const EntryStrand&) = default;
};

enum class SeriesMode { closed, direct };

/// Integer tuple up to rotation, stored as its lexicographically least
/// rotation so that equality is structural.
class Cycle {
 public:
  explicit Cycle(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw Error(errc::invalid_argument, "a cycle needs at least one entry");
    canonicalize();
  }

  /// Parses "(2,1,-3)"; the parentheses are optional.
  static Cycle parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (!s.empty() && s.front() == '(') {
      if (s.back() != ')') throw Error(errc::syntax_error, "unbalanced parenthesis in cycle");
      s = s.substr(1, s.size() - 2);
    }
    std::vector<std::int64_t> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = std::min(s.find(',', pos), s.size());
      const std::string item = s.substr(pos, comma - pos);
      std::size_t used = 0;
      try {
        v.push_back(std::stoll(item, &used));
      } catch (const std::exception&) {
        used = 0;
      }
      if (item.empty() || used != item.size())
        throw Error(errc::syntax_error, "bad cycle entry '" + item + "'");
      pos = comma + 1;
    }
    return Cycle(std::move(v));
  }

  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
  std::size_t length() const noexcept { return entries_.size(); }

  bool aperiodic() const {
    const std::size_t r = entries_.size();
    for (std::size_t t = 1; t < r; ++t) {
      if (r % t != 0) continue;
      bool fixed = true;
      for (std::size_t i = 0; i < r && fixed; ++i) fixed = entries_[i] == entries_[(i + t) % r];
      if (fixed) return false;
    }
    return true;
  }

  /// a(k): every entry shifted by 3k.
  Cycle twist(std::int64_t k) const {
    auto v = entries_;
    for (auto& e : v) e += 3 * k;
    return Cycle(std::move(v));
  }

  /// qa: every entry multiplied by q >= 1.
  Cycle scale(std::int64_t q) const {
    if (q < 1) throw Error(errc::invalid_argument, "scale factor must be >= 1");
    auto v = entries_;
    for (auto& e : v) e *= q;
    return Cycle(std::move(v));
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i)
      out += (i ? "," : "") + std::to_string(entries_[i]);
    return out + ")";
  }

  /// Blocs in cyclic order, starting with the first bloc of the canonical rotation.
  std::vector<Bloc> blocs() const {
    require_bloc_structure();
    const std::size_t r = entries_.size();
    std::size_t start = 0;
    while (entries_[start] == entries_[(start + r - 1) % r]) ++start;
    std::vector<Bloc> out;
    for (std::size_t i = 0; i < r; ++i) {
      const auto e = entries_[(start + i) % r];
      if (out.empty() || out.back().entry != e)
        out.push_back({e, 1, 0, 0});
      else
        ++out.back().length;
    }
    const std::size_t nb = out.size();
    for (std::size_t i = 0; i < nb; ++i) {
      const auto prev = out[(i + nb - 1) % nb].entry, next = out[(i + 1) % nb].entry;
      auto& b = out[i];
      b.epsilon = (prev < b.entry && next < b.entry) ? 1 : (prev > b.entry && next > b.entry) ? -1 : 0;
      b.epsilon_star = (b.entry == 0 && b.epsilon == 1) ? 0 : b.epsilon;
    }
    return out;
  }

  /// Number of entries >= 0.
  std::int64_t gamma1() const {
    return std::count_if(entries_.begin(), entries_.end(), [](auto e) { return e >= 0; });
  }
  /// Sum of max(a_i, 0).
  std::int64_t gamma2() const {
    std::int64_t s = 0;
    for (auto e : entries_) s += std::max<std::int64_t>(e, 0);
    return s;
  }
  /// Sum of epsilon* over blocs with entry >= 0.
  std::int64_t gamma3() const {
    std::int64_t s = 0;
    for (const auto& b : blocs())
      if (b.entry >= 0) s += b.epsilon_star;
    return s;
  }

  /// Sum over positive parts p (maximal runs of entries >= 0) of: l(p) if p
  /// is a single bloc of zeroes or all of a, else 1 + l(p).
  std::int64_t theta() const {
    require_bloc_structure();
    const std::size_t r = entries_.size();
    auto neg = std::find_if(entries_.begin(), entries_.end(), [](auto e) { return e < 0; });
    if (neg == entries_.end()) return static_cast<std::int64_t>(r);
    const std::size_t start = static_cast<std::size_t>(neg - entries_.begin());
    std::int64_t total = 0;
    std::size_t i = 0;
    while (i < r) {
      if (entries_[(start + i) % r] < 0) {
        ++i;
        continue;
      }
      std::size_t len = 0;
      bool all_zero = true;
      while (i < r && entries_[(start + i) % r] >= 0) {
        all_zero = all_zero && entries_[(start + i) % r] == 0;
        ++len;
        ++i;
      }
      total += static_cast<std::int64_t>(all_zero ? len : len + 1);
    }
    return total;
  }

  /// sum max(a_i + 1, 0) - theta.
  std::int64_t gamma4() const {
    std::int64_t s = 0;
    for (auto e : entries_) s += std::max<std::int64_t>(e + 1, 0);
    return s - theta();
  }

  /// Strand data keyed by the distinct entries -n, sorted by increasing n.
  std::vector<EntryStrand> entry_strands() const {
    std::map<std::int64_t, EntryStrand> by_n;
    for (auto e : entries_) {
      auto& st = by_n[-e];
      st.n = -e;
      ++st.r;
    }
    for (const auto& b : blocs()) {
      auto& st = by_n[-b.entry];
      st.s += b.epsilon;
      if (b.epsilon == 1) ++st.local_maxima;
    }
    std::vector<EntryStrand> out;
    for (const auto& [n, st] : by_n) out.push_back(st);
    return out;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  void require_bloc_structure() const {
    if (entries_.size() == 1) throw Error(errc::length_one, "bloc invariants need r > 1");
    if (!aperiodic()) throw Error(errc::not_aperiodic, str() + " is periodic");
  }

  void canonicalize() {
    const std::size_t r = entries_.size();
    std::size_t best = 0;
    for (std::size_t t = 1; t < r; ++t) {
      for (std::size_t i = 0; i < r; ++i) {
        const auto a = entries_[(t + i) % r], b = entries_[(best + i) % r];
        if (a != b) {
          if (a < b) best = t;
          break;
        }
      }
    }
    std::rotate(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(best),
                entries_.end());
  }

  std::vector<std::int64_t> entries_;
};

/// Offset and residue class of the contribution attached to an entry -n.
struct StrandShape {
  std::int64_t offset;
  int residue;  ///< n mod 3
};

constexpr StrandShape strand_shape(std::int64_t n) noexcept {
  const int res = static_cast<int>(floor_mod(n, 3));
  const std::int64_t off = res == 1 ? (n + 2) / 3 : res == 2 ? (n + 1) / 3 : n / 3;
  // n + 2, n + 1, n are exact multiples of 3 in the respective cases, so the
  // truncating division is exact for negative n as well.
  return {off, res};
}

/// (1 - T)^2 sum_k gamma_2(a(k)) T^k.
inline LaurentPoly P2(const Cycle& a, SeriesMode mode = SeriesMode::closed);
/// (1 - T)^2 sum_k gamma_3(a(k)) T^k.
inline LaurentPoly P3(const Cycle& a, SeriesMode mode = SeriesMode::closed);
/// (1 - T)^2 sum_k gamma_4(a(k)) T^k.
inline LaurentPoly P4(const Cycle& a, SeriesMode mode = SeriesMode::closed);

namespace detail {

enum class Gamma { two, three, four };

inline std::int64_t gamma_of(const Cycle& a, Gamma which) {
  switch (which) {
    case Gamma::two: return a.gamma2();
    case Gamma::three: return a.gamma3();
    case Gamma::four: return a.gamma4();
  }
  return 0;
}

inline LaurentPoly direct_series(const Cycle& a, Gamma which) {
  const auto [lo_it, hi_it] = std::minmax_element(a.entries().begin(), a.entries().end());
  // Below k_lo every entry of a(k) is negative; from k_hi - 2 on every entry
  // is at least 1. Widen if the probes disagree.
  std::int64_t k_lo = ceil_div(-*hi_it, 3);
  std::int64_t k_hi = ceil_div(1 - *lo_it, 3) + 2;
  auto f = [&](std::int64_t k) { return BigInt(gamma_of(a.twist(k), which)); };
  for (int attempt = 0;; ++attempt) {
    try {
      return window_transform(f, k_lo, k_hi, 2);
    } catch (const Error& e) {
      if (e.code() != errc::window_not_stable || attempt >= 8) throw;
      k_lo -= 3;
      k_hi += 3;
    }
  }
}

inline void require_bloc_structure(const Cycle& a) {
  if (a.length() == 1) throw Error(errc::length_one, "bloc invariants need r > 1");
  if (!a.aperiodic()) throw Error(errc::not_aperiodic, a.str() + " is periodic");
}

}  // namespace detail

inline LaurentPoly P2(const Cycle& a, SeriesMode mode) {
  detail::require_bloc_structure(a);
  if (mode == SeriesMode::direct) return detail::direct_series(a, detail::Gamma::two);
  LaurentPoly out;
  for (const auto& st : a.entry_strands()) {
    const auto [o, res] = strand_shape(st.n);
    const BigInt r = st.r;
    if (res == 1)
      out += LaurentPoly{{o, 2 * r}, {o + 1, r}};
    else if (res == 2)
      out += LaurentPoly{{o, r}, {o + 1, 2 * r}};
    else
      out += LaurentPoly{{o + 1, 3 * r}};
  }
  return out;
}

inline LaurentPoly P3(const Cycle& a, SeriesMode mode) {
  detail::require_bloc_structure(a);
  if (mode == SeriesMode::direct) return detail::direct_series(a, detail::Gamma::three);
  LaurentPoly out;
  for (const auto& st : a.entry_strands()) {
    const auto [o, res] = strand_shape(st.n);
    const BigInt s = st.s, B = st.local_maxima;
    out += LaurentPoly{{o, s}, {o + 1, -s}};
    if (res == 0) out -= LaurentPoly{{o, B}, {o + 1, -2 * B}, {o + 2, B}};
  }
  return out;
}

inline LaurentPoly P4(const Cycle& a, SeriesMode mode) {
  detail::require_bloc_structure(a);
  if (mode == SeriesMode::direct) return detail::direct_series(a, detail::Gamma::four);
  LaurentPoly out;
  for (const auto& st : a.entry_strands()) {
    const auto [o, res] = strand_shape(st.n);
    const BigInt r = st.r, s = st.s, B = st.local_maxima;
    if (res == 1)
      out += LaurentPoly{{o, 2 * r - s}, {o + 1, r + s}};
    else if (res == 2)
      out += LaurentPoly{{o, r - s}, {o + 1, 2 * r + s}};
    else
      out += LaurentPoly{{o, B - s}, {o + 1, 3 * r + s - 2 * B}, {o + 2, B}};
  }
  return out;
}

/// h^0 of the indecomposable bundle with cycle a and multiplicity m: m * gamma_4(a).
inline std::int64_t h0_indecomposable(const Cycle& a, std::int64_t m) {
  if (m < 1) throw Error(errc::invalid_argument, "multiplicity must be >= 1");
  detail::require_bloc_structure(a);
  return m * a.gamma4();
}

}  // namespace hknodal
