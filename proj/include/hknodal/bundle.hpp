#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hknodal/cycle.hpp"
#include "hknodal/error.hpp"
#include "hknodal/laurent.hpp"
#include "hknodal/prime_field.hpp"

namespace hknodal {

/// Invariants (n, r, s, B) attached to one summand O(-n)^r of the pull-back
/// of a bundle to P^1. B is only meaningful when the contribution falls in
/// the residue-0 shape.
struct Strand {
  std::int64_t n = 0;
  std::int64_t r = 1;
  std::int64_t s = 0;
  std::optional<std::int64_t> B;

  void validate() const {
    auto bad = [this](const std::string& why) {
      throw Error(errc::invalid_strand, "strand n=" + std::to_string(n) + ": " + why);
    };
    if (r < 1) bad("r must be >= 1");
    if (s > r || s < -r) bad("|s| must be <= r");
    if (B && (*B < std::max<std::int64_t>(s, 0) || *B > r)) bad("B must lie in [max(s,0), r]");
  }

  friend bool operator==(const Strand&, const Strand&) = default;
};

class ClassificationData {
 public:
  explicit ClassificationData(std::vector<Strand> strands) : strands_(std::move(strands)) {
    if (strands_.empty()) throw Error(errc::invalid_argument, "classification data is empty");
    std::sort(strands_.begin(), strands_.end(),
              [](const Strand& a, const Strand& b) { return a.n < b.n; });
    for (std::size_t i = 0; i < strands_.size(); ++i) {
      strands_[i].validate();
      if (i && strands_[i].n == strands_[i - 1].n)
        throw Error(errc::invalid_argument, "repeated strand n=" + std::to_string(strands_[i].n));
    }
  }

  const std::vector<Strand>& strands() const noexcept { return strands_; }

  /// Rank of the bundle, sum r_i.
  std::int64_t rank() const {
    std::int64_t t = 0;
    for (const auto& s : strands_) t += s.r;
    return t;
  }
  /// Minus the degree, sum r_i n_i.
  std::int64_t degree_pairing() const {
    std::int64_t t = 0;
    for (const auto& s : strands_) t += s.r * s.n;
    return t;
  }

  friend bool operator==(const ClassificationData&, const ClassificationData&) = default;

 private:
  std::vector<Strand> strands_;
};

/// B(a, m, lambda), with lambda recorded only through whether it equals 1.
struct BundleDescriptor {
  Cycle cycle;
  std::int64_t m = 1;
  bool lambda_is_one = true;
};

/// Classification data of B(a, m, lambda). B is filled for strands with
/// n = 0 mod 3; with all_B it is filled for every strand, which is what
/// synthesis in characteristic 3 needs.
inline ClassificationData strands_from_descriptor(const BundleDescriptor& b, bool all_B = false) {
  if (b.m < 1) throw Error(errc::invalid_argument, "multiplicity must be >= 1");
  std::vector<Strand> out;
  if (b.cycle.length() == 1) {
    const std::int64_t n = -b.cycle.entries().front();
    Strand st{n, b.m, 0, std::nullopt};
    if (all_B || floor_mod(n, 3) == 0) st.B = b.lambda_is_one ? 1 : 0;
    out.push_back(st);
  } else {
    for (const auto& es : b.cycle.entry_strands()) {
      Strand st{es.n, b.m * es.r, b.m * es.s, std::nullopt};
      if (all_B || floor_mod(es.n, 3) == 0) st.B = b.m * es.local_maxima;
      out.push_back(st);
    }
  }
  return ClassificationData(std::move(out));
}

/// The Laurent block contributed by one strand at the given qn. Offsets and
/// coefficient pairs follow the residue of qn mod 3:
///   1: T^{(qn+2)/3} ((2r - s) + (r + s) T)
///   2: T^{(qn+1)/3} ((r - s) + (2r + s) T)
///   0: T^{qn/3} (-s + (3r + s) T + B (1 - T)^2)
inline LaurentPoly strand_contribution(const Strand& st, std::int64_t qn) {
  const auto [o, res] = strand_shape(qn);
  const BigInt r = st.r, s = st.s;
  if (res == 1) return LaurentPoly{{o, 2 * r - s}, {o + 1, r + s}};
  if (res == 2) return LaurentPoly{{o, r - s}, {o + 1, 2 * r + s}};
  if (!st.B)
    throw Error(errc::missing_b, "strand n=" + std::to_string(st.n) + " needs B at qn=" +
                                     std::to_string(qn));
  const BigInt B = *st.B;
  return LaurentPoly{{o, B - s}, {o + 1, 3 * r + s - 2 * B}, {o + 2, B}};
}

/// (1 - T)^{-1} poin(W^[q]) predicted from classification data.
inline LaurentPoly synth_series(const ClassificationData& data, std::uint64_t q,
                                const PrimeField& field) {
  field.log_p(q);
  if (field.characteristic() == 3 && q == 1)
    throw Error(errc::forbidden_q, "in characteristic 3 the series formula needs q > 1");
  LaurentPoly u;
  for (const auto& st : data.strands())
    u += strand_contribution(st, static_cast<std::int64_t>(q) * st.n);
  return u;
}

namespace detail {

struct ExtractionState {
  std::vector<std::vector<Strand>> solutions;
  bool crowded = false;  // two candidates at one step, or touching spans
};

inline std::int64_t span_length(std::int64_t qn) { return floor_mod(qn, 3) == 0 ? 3 : 2; }

/// Solves the strand whose contribution starts at `offset` from the residual's
/// coefficients there. nullopt when the values violate the strand invariants.
inline std::optional<Strand> solve_strand(const LaurentPoly& res, std::int64_t n, std::int64_t qn,
                                          std::int64_t offset) {
  auto c = [&](std::int64_t k) {
    const BigInt v = res.coefficient(offset + k);
    return v.convert_to<std::int64_t>();
  };
  Strand st{n, 0, 0, std::nullopt};
  const auto kind = floor_mod(qn, 3);
  if (kind == 1 || kind == 2) {
    const std::int64_t c0 = c(0), c1 = c(1);
    if ((c0 + c1) % 3 != 0) return std::nullopt;
    st.r = (c0 + c1) / 3;
    st.s = kind == 1 ? c1 - st.r : c1 - 2 * st.r;
  } else {
    const std::int64_t c0 = c(0), c1 = c(1), c2 = c(2);
    st.B = c2;
    st.s = c2 - c0;
    const std::int64_t t = c1 - st.s + 2 * c2;
    if (t % 3 != 0) return std::nullopt;
    st.r = t / 3;
  }
  try {
    st.validate();
  } catch (const Error&) {
    return std::nullopt;
  }
  return st;
}

inline void extract_from(const LaurentPoly& residual, std::uint64_t q, std::int64_t last_end,
                         std::vector<Strand>& partial, ExtractionState& state) {
  if (residual.is_zero()) {
    state.solutions.push_back(partial);
    return;
  }
  if (state.solutions.size() > 1) return;
  const std::int64_t o = residual.min_exponent();
  const auto qi = static_cast<std::int64_t>(q);
  // Possible starts: the lowest nonzero coefficient is the first entry of a
  // contribution, or the second/third after leading zero coefficients.
  std::vector<std::pair<Strand, std::int64_t>> viable;
  for (std::int64_t qn : {3 * o - 2, 3 * o - 1, 3 * o, 3 * o - 3, 3 * o - 4, 3 * o - 6}) {
    if (floor_mod(qn, qi) != 0) continue;
    const std::int64_t n = qn / qi;
    if (!partial.empty() && n <= partial.back().n) continue;
    const std::int64_t start = strand_shape(qn).offset;
    if (start > o || start + span_length(qn) <= o) continue;
    auto st = solve_strand(residual, n, qn, start);
    if (!st) continue;
    LaurentPoly next = residual - strand_contribution(*st, qn);
    if (!next.is_zero() && next.min_exponent() < start + span_length(qn)) continue;
    viable.push_back({*st, start});
  }
  if (viable.size() > 1) state.crowded = true;
  for (const auto& [st, start] : viable) {
    const std::int64_t qn = qi * st.n;
    if (start <= last_end) state.crowded = true;
    partial.push_back(st);
    extract_from(residual - strand_contribution(st, qn), q, start + span_length(qn) - 1, partial,
                 state);
    partial.pop_back();
  }
}

}  // namespace detail

/// Recovers classification data from a series computed at a single q.
/// Requires q >= 7: below that, contributions of different strands can share
/// offsets. For q in {7, 8} the separation is additionally checked on the
/// actual candidates.
inline ClassificationData extract_data(const LaurentPoly& u, std::uint64_t q,
                                       const PrimeField& field) {
  field.log_p(q);
  if (field.characteristic() == 3 && q == 1)
    throw Error(errc::forbidden_q, "in characteristic 3 the series formula needs q > 1");
  if (u.is_zero()) throw Error(errc::no_consistent_data, "series is zero");
  for (const auto& [e, c] : u.coefficients())
    if (c < 0) throw Error(errc::no_consistent_data, "negative coefficient at T^" + std::to_string(e));
  if (q < 7)
    throw Error(errc::q_too_small, "q=" + std::to_string(q) +
                                       " is too small to separate strands; increase n");

  detail::ExtractionState state;
  std::vector<Strand> partial;
  detail::extract_from(u, q, std::numeric_limits<std::int64_t>::min(), partial, state);
  if (q < 9 && state.crowded)
    throw Error(errc::q_too_small, "strand contributions are not separated at q=" +
                                       std::to_string(q) + "; increase n");
  if (state.solutions.empty())
    throw Error(errc::no_consistent_data, "no classification data reproduces the series");
  if (state.solutions.size() > 1)
    throw Error(errc::ambiguous_extraction,
                "several classification data sets reproduce the series; rerun at larger q");
  return ClassificationData(state.solutions.front());
}

/// e_n = mu q^2 + alpha q - R(q mod 3).
struct HKCoefficients {
  Rational mu;
  Rational alpha;
  std::map<int, Rational> R;  ///< keyed by q mod 3, attainable classes only
  friend bool operator==(const HKCoefficients&, const HKCoefficients&) = default;
};

/// Residues of p^n mod 3 (n >= 1 when p = 3).
inline std::set<int> attainable_residues(const PrimeField& field) {
  const auto p = field.characteristic();
  if (p == 3) return {0};
  if (p % 3 == 1) return {1};
  return {1, 2};
}

inline HKCoefficients hk_coefficients(const ClassificationData& data,
                                      const std::vector<std::int64_t>& degrees,
                                      const PrimeField& field) {
  HKCoefficients out;
  BigInt rn2 = 0, sn = 0, d2 = 0;
  for (const auto& st : data.strands()) {
    rn2 += BigInt(st.r) * st.n * st.n;
    sn += BigInt(st.s) * st.n;
  }
  for (auto d : degrees) d2 += BigInt(d) * d;
  out.mu = Rational(rn2) / 6 - Rational(3 * d2) / 2;
  out.alpha = Rational(sn) / 3;
  for (int res : attainable_residues(field)) {
    Rational R = 0;
    for (const auto& st : data.strands()) {
      const auto kind = floor_mod(res * st.n, 3);
      if (kind == 1) {
        R += Rational(2 * st.r - 2 * st.s) / 3;
      } else if (kind == 2) {
        R += Rational(2 * st.r - st.s) / 3;
      } else {
        if (!st.B)
          throw Error(errc::missing_b, "strand n=" + std::to_string(st.n) +
                                           " needs B for q = " + std::to_string(res) + " mod 3");
        R += Rational(st.r - *st.B);
      }
    }
    out.R.emplace(res, R);
  }
  return out;
}

inline BigInt big_pow(std::uint64_t base, unsigned n) {
  BigInt q = 1;
  for (unsigned i = 0; i < n; ++i) q *= base;
  return q;
}

/// mu q^2 + alpha q - R(q), q = p^n, which must be an integer.
inline BigInt predict_en(const HKCoefficients& c, const PrimeField& field, unsigned n) {
  if (field.characteristic() == 3 && n == 0)
    throw Error(errc::forbidden_n, "in characteristic 3 the prediction holds for n > 0");
  const BigInt q = big_pow(field.characteristic(), n);
  const int res = static_cast<int>(q % 3);
  auto it = c.R.find(res);
  if (it == c.R.end())
    throw Error(errc::invalid_argument, "R has no entry for q = " + std::to_string(res) + " mod 3");
  const Rational e = c.mu * q * q + c.alpha * q - it->second;
  if (!is_integral(e)) throw Error(errc::non_integral_result, "predicted e_n = " + to_string(e));
  return boost::multiprecision::numerator(e);
}

/// 7/3 q^2 - 1/3 q - R with R = 5/3 for q = 2 mod 3 and R = 1 otherwise.
inline BigInt pardue_closed_form(const PrimeField& field, unsigned n) {
  const BigInt q = big_pow(field.characteristic(), n);
  const BigInt num = 7 * q * q - q - (q % 3 == 2 ? 5 : 3);
  return num / 3;
}

/// Kernel series for J = (x, y, z) on a nodal cubic, by residue of q mod 3.
inline LaurentPoly pardue_series(std::uint64_t q) {
  if (q < 1) throw Error(errc::invalid_argument, "q must be >= 1");
  const auto Q = static_cast<std::int64_t>(q);
  switch (Q % 3) {
    case 1: {
      const auto a = (4 * Q + 2) / 3, b = (5 * Q + 1) / 3;
      return LaurentPoly{{a, 1}, {a + 1, 2}} + LaurentPoly{{b, 2}, {b + 1, 1}};
    }
    case 2: {
      const auto a = (4 * Q + 1) / 3, b = (5 * Q + 2) / 3;
      return LaurentPoly{{a + 1, 3}} + LaurentPoly{{b, 3}};
    }
    default: {
      const auto a = 4 * Q / 3, b = 5 * Q / 3;
      return LaurentPoly{{a + 1, 2}, {a + 2, 1}} + LaurentPoly{{b, 1}, {b + 1, 2}};
    }
  }
}

/// Drops B wherever no q = p^n can put the strand into the residue-0 shape,
/// so data from different sources can be compared.
inline ClassificationData restrict_B(const ClassificationData& data, const PrimeField& field) {
  auto strands = data.strands();
  if (field.characteristic() != 3)
    for (auto& st : strands)
      if (floor_mod(st.n, 3) != 0) st.B.reset();
  return ClassificationData(std::move(strands));
}

/// Classification data of the kernel bundle of (x, y, z): strands
/// (4, 1, 1, B=1) and (5, 1, -1, B=0).
inline ClassificationData pardue_data() {
  return ClassificationData({{4, 1, 1, 1}, {5, 1, -1, 0}});
}

}  // namespace hknodal
