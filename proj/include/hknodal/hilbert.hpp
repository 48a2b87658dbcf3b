#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hknodal/error.hpp"
#include "hknodal/fp_matrix.hpp"
#include "hknodal/laurent.hpp"
#include "hknodal/polynomial.hpp"

namespace hknodal {

/// The data (h, g_1..g_s) over F_p. The quotient A/(J, h) being Artinian is
/// only discovered when the Hilbert function is computed.
class IdealSpec {
 public:
  IdealSpec(GradedPoly h, std::vector<GradedPoly> generators)
      : field_(h.field()), h_(std::move(h)), generators_(std::move(generators)) {
    if (h_.is_zero()) throw Error(errc::zero_polynomial, "h must be nonzero");
    if (*h_.degree() != 3)
      throw Error(errc::invalid_argument, "h must be a cubic, got degree " +
                                              std::to_string(*h_.degree()));
    if (generators_.empty()) throw Error(errc::invalid_argument, "at least one generator required");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!(generators_[i].field() == field_))
        throw Error(errc::field_mismatch, "generator " + std::to_string(i + 1) +
                                              " is over a different field than h");
      if (generators_[i].is_zero())
        throw Error(errc::zero_polynomial, "generator " + std::to_string(i + 1) + " is zero");
    }
  }

  const PrimeField& field() const noexcept { return field_; }
  const GradedPoly& h() const noexcept { return h_; }
  const std::vector<GradedPoly>& generators() const noexcept { return generators_; }

  std::vector<std::int64_t> degrees() const {
    std::vector<std::int64_t> d;
    for (const auto& g : generators_) d.push_back(*g.degree());
    return d;
  }

 private:
  PrimeField field_;
  GradedPoly h_;
  std::vector<GradedPoly> generators_;
};

enum class RankEngine {
  /// Multiples of h are eliminated first; they are already in echelon form
  /// because their leading monomials m * LM(h) are distinct. What remains is a
  /// dense elimination on the columns not divisible by LM(h).
  reduced,
  /// The full matrix on monomial_basis(d), all rows, plain elimination.
  dense,
};

struct HilbertOptions {
  unsigned threads = 1;
  std::optional<std::int64_t> dmax_override;
  RankEngine engine = RankEngine::reduced;
  /// When false, keep going to the safety bound instead of stopping at the
  /// first zero.
  bool stop_at_first_zero = true;
};

struct HilbertData {
  std::vector<std::uint64_t> dims;

  std::uint64_t colength() const {
    return std::accumulate(dims.begin(), dims.end(), std::uint64_t{0});
  }
  friend bool operator==(const HilbertData&, const HilbertData&) = default;
};

namespace detail {

/// dim (A / (rels, h))_d where rels are already-powered forms.
inline std::uint64_t slice_dimension(const PrimeField& F, const GradedPoly& h,
                                     const std::vector<GradedPoly>& rels, std::int64_t d,
                                     RankEngine engine) {
  const std::size_t n = monomial_count(d);
  const auto basis = monomial_basis(d);

  if (engine == RankEngine::dense) {
    FpMatrix mat(F, n);
    auto emit = [&](const GradedPoly& g) {
      const std::int64_t e = d - static_cast<std::int64_t>(*g.degree());
      for (const auto& m : monomial_basis(e)) {
        auto* row = mat.append_row();
        for (const auto& t : g.terms()) row[monomial_index(t.mono * m)] = t.coeff;
      }
    };
    for (const auto& g : rels) emit(g);
    emit(h);
    return n - mat.rank();
  }

  const auto& lead = h.leading_term();
  const auto lead_inv = F.inv(lead.coeff);
  std::vector<std::int64_t> column(n, -1);
  std::size_t standard = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (!lead.mono.divides(basis[i])) column[i] = static_cast<std::int64_t>(standard++);

  FpMatrix mat(F, standard);
  std::vector<PrimeField::value_type> vec(n);
  for (const auto& g : rels) {
    const std::int64_t e = d - static_cast<std::int64_t>(*g.degree());
    for (const auto& m : monomial_basis(e)) {
      // m * g with m divisible by LM(h) is congruent mod h to a combination
      // of rows with standard m, so those rows add nothing.
      if (lead.mono.divides(m)) continue;
      std::fill(vec.begin(), vec.end(), 0);
      for (const auto& t : g.terms()) {
        auto& slot = vec[monomial_index(t.mono * m)];
        slot = F.add(slot, t.coeff);
      }
      for (std::size_t i = n; i-- > 0;) {
        if (vec[i] == 0 || column[i] >= 0) continue;
        const auto factor = F.mul(vec[i], lead_inv);
        const Monomial cofactor = basis[i] / lead.mono;
        for (const auto& t : h.terms()) {
          auto& slot = vec[monomial_index(t.mono * cofactor)];
          slot = F.sub(slot, F.mul(factor, t.coeff));
        }
      }
      auto* row = mat.append_row();
      for (std::size_t i = 0; i < n; ++i)
        if (column[i] >= 0) row[column[i]] = vec[i];
    }
  }
  return standard - mat.rank();
}

}  // namespace detail

inline std::int64_t default_dmax(const IdealSpec& spec, std::uint64_t q) {
  const auto degs = spec.degrees();
  return 3 * static_cast<std::int64_t>(q) * *std::max_element(degs.begin(), degs.end()) + 9;
}

/// Hilbert function of A/(J^[q], h), degree by degree, up to and including
/// the first zero.
inline HilbertData quotient_hilbert(const IdealSpec& spec, std::uint64_t q,
                                    const HilbertOptions& opts = {}) {
  const auto& F = spec.field();
  F.log_p(q);
  std::vector<GradedPoly> powered;
  for (const auto& g : spec.generators()) powered.push_back(frobenius_power(g, q));
  const std::int64_t dmax = opts.dmax_override.value_or(default_dmax(spec, q));
  const unsigned threads = std::max(1u, opts.threads);

  HilbertData out;
  bool reached_zero = false;
  for (std::int64_t base = 0; base <= dmax; base += threads) {
    const std::int64_t top = std::min<std::int64_t>(dmax, base + threads - 1);
    std::vector<std::uint64_t> batch;
    if (threads == 1) {
      batch.push_back(detail::slice_dimension(F, spec.h(), powered, base, opts.engine));
    } else {
      std::vector<std::future<std::uint64_t>> jobs;
      for (std::int64_t d = base; d <= top; ++d)
        jobs.push_back(std::async(std::launch::async, [&, d] {
          return detail::slice_dimension(F, spec.h(), powered, d, opts.engine);
        }));
      for (auto& j : jobs) batch.push_back(j.get());
    }
    for (auto v : batch) {
      out.dims.push_back(v);
      if (v == 0) reached_zero = true;
      if (reached_zero && opts.stop_at_first_zero) return out;
    }
  }
  if (!reached_zero)
    throw Error(errc::not_artinian, "Hilbert function of A/(J^[q],h) at q=" + std::to_string(q) +
                                        " is still nonzero at degree " + std::to_string(dmax));
  return out;
}

/// e_n = dim A/(J^[q], h).
inline std::uint64_t colength(const IdealSpec& spec, std::uint64_t q,
                              const HilbertOptions& opts = {}) {
  return quotient_hilbert(spec, q, opts).colength();
}

inline LaurentPoly hilbert_series(const HilbertData& data) {
  LaurentPoly s;
  for (std::size_t d = 0; d < data.dims.size(); ++d)
    s.add_term(static_cast<std::int64_t>(d), BigInt(data.dims[d]));
  return s;
}

/// (1 - T)^3 hilb.
inline LaurentPoly poin_quotient(const HilbertData& data) {
  return LaurentPoly::one_minus_T_pow(3) * hilbert_series(data);
}

inline LaurentPoly poin_quotient(const IdealSpec& spec, std::uint64_t q,
                                 const HilbertOptions& opts = {}) {
  return poin_quotient(quotient_hilbert(spec, q, opts));
}

/// dim (A/h)_d for d = 0..D, by rank of the multiples of h alone.
inline std::vector<std::uint64_t> curve_hilbert(const GradedPoly& h, std::int64_t D) {
  if (h.is_zero() || *h.degree() != 3)
    throw Error(errc::invalid_argument, "curve_hilbert needs a nonzero cubic");
  std::vector<std::uint64_t> dims;
  for (std::int64_t d = 0; d <= D; ++d)
    dims.push_back(detail::slice_dimension(h.field(), h, {}, d, RankEngine::dense));
  return dims;
}

/// (1 - T^3)(1 - sum T^{q d_i}).
inline LaurentPoly free_part_poin(const std::vector<std::int64_t>& degrees, std::uint64_t q) {
  LaurentPoly tail = LaurentPoly::constant(1);
  for (auto d : degrees) tail.add_term(d * static_cast<std::int64_t>(q), -1);
  return LaurentPoly{{0, 1}, {3, -1}} * tail;
}

/// u = (1 - T)^{-1} poin(W^[q]) = (1 - T)^{-1} [poin(A/(J^[q],h)) - (1-T^3)(1 - sum T^{q d_i})].
inline LaurentPoly kernel_series_from(const HilbertData& data,
                                      const std::vector<std::int64_t>& degrees, std::uint64_t q) {
  return div_exact_one_minus_T(poin_quotient(data) - free_part_poin(degrees, q));
}

inline LaurentPoly kernel_series(const IdealSpec& spec, std::uint64_t q,
                                 const HilbertOptions& opts = {}) {
  return kernel_series_from(quotient_hilbert(spec, q, opts), spec.degrees(), q);
}

/// e_n = (u''(1) - v''(1)) / 2 with v = (1 + T + T^2)(-1 + sum T^{d_i q}).
inline BigInt en_from_series(const LaurentPoly& u, const std::vector<std::int64_t>& degrees,
                             std::uint64_t q) {
  if (degrees.empty()) throw Error(errc::invalid_argument, "degree list is empty");
  LaurentPoly v = LaurentPoly::constant(-1);
  for (auto d : degrees) v.add_term(d * static_cast<std::int64_t>(q), 1);
  v = LaurentPoly{{0, 1}, {1, 1}, {2, 1}} * v;
  const Rational twice = d2_at_1(u) - d2_at_1(v);
  const Rational e = twice / 2;
  if (!is_integral(e))
    throw Error(errc::non_integral_result, "(u''(1) - v''(1))/2 = " + to_string(e));
  return boost::multiprecision::numerator(e);
}

}  // namespace hknodal
