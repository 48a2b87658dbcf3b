#include <gtest/gtest.h>

#include "generators.hpp"
#include "hknodal/hilbert.hpp"

using namespace hknodal;
using namespace hknodal::testing;

namespace {

HilbertOptions dense() {
  HilbertOptions o;
  o.engine = RankEngine::dense;
  return o;
}

errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an exception";
  return errc::invalid_argument;
}

}  // namespace

TEST(QuotientHilbert, MaximalIdealSmallQ) {
  const auto spec = pardue_spec(2);
  EXPECT_EQ(quotient_hilbert(spec, 1).dims, (std::vector<std::uint64_t>{1, 0}));
  EXPECT_EQ(quotient_hilbert(spec, 2).dims, (std::vector<std::uint64_t>{1, 3, 3, 0}));
  EXPECT_EQ(colength(spec, 2), 7u);
  // 7/3 q^2 - 1/3 q - 1 at q = 3.
  EXPECT_EQ(colength(pardue_spec(3), 3), 19u);
}

TEST(QuotientHilbert, EightCubicGenerators) {
  // q = 1 by hand: all of degree <= 2 survives, in degree 3 only x*y^2 does
  // (xyz = h mod J), and degree 4 is killed.
  EXPECT_EQ(quotient_hilbert(cubic_monomials_spec(2), 1).dims,
            (std::vector<std::uint64_t>{1, 3, 6, 1, 0}));
  EXPECT_EQ(colength(cubic_monomials_spec(2), 8), 992u);
  EXPECT_EQ(colength(cubic_monomials_spec(3), 3), 134u);
}

TEST(QuotientHilbert, ReducedEngineMatchesFullMatrix) {
  for (auto [spec, q] : {std::pair{pardue_spec(2), 4}, std::pair{pardue_spec(3), 3},
                         std::pair{pardue_spec(5), 5}, std::pair{cubic_monomials_spec(2), 2},
                         std::pair{cubic_monomials_spec(3), 3}})
    EXPECT_EQ(quotient_hilbert(spec, q), quotient_hilbert(spec, q, dense()));
  for (int i = 0; i < 12; ++i) {
    const std::int64_t p = std::vector<std::int64_t>{2, 3, 5}[uniform(0, 2)];
    const auto spec = random_artinian_spec(p);
    EXPECT_EQ(quotient_hilbert(spec, 1), quotient_hilbert(spec, 1, dense()));
    EXPECT_EQ(quotient_hilbert(spec, p), quotient_hilbert(spec, p, dense()));
  }
}

TEST(QuotientHilbert, SliceBounds) {
  const auto data = quotient_hilbert(cubic_monomials_spec(2), 4);
  EXPECT_EQ(data.dims.front(), 1u);
  EXPECT_EQ(data.dims.back(), 0u);
  for (std::size_t d = 0; d < data.dims.size(); ++d) EXPECT_LE(data.dims[d], monomial_count(d));
}

TEST(QuotientHilbert, TailIsZeroUpToSafetyBound) {
  HilbertOptions opts;
  opts.stop_at_first_zero = false;
  const auto spec = cubic_monomials_spec(2);
  const auto full = quotient_hilbert(spec, 2, opts);
  const auto stopped = quotient_hilbert(spec, 2);
  ASSERT_EQ(full.dims.size(), static_cast<std::size_t>(default_dmax(spec, 2) + 1));
  for (std::size_t d = 0; d < full.dims.size(); ++d)
    EXPECT_EQ(full.dims[d], d < stopped.dims.size() ? stopped.dims[d] : 0u);
}

TEST(QuotientHilbert, ThreadCountDoesNotChangeOutput) {
  HilbertOptions opts;
  opts.threads = 3;
  for (const auto& spec : {cubic_monomials_spec(2), pardue_spec(5)}) {
    const std::uint64_t q = spec.field().characteristic() == 2 ? 8 : 5;
    EXPECT_EQ(quotient_hilbert(spec, q, opts), quotient_hilbert(spec, q));
  }
}

TEST(QuotientHilbert, NotArtinian) {
  EXPECT_EQ(code_of([] { quotient_hilbert(make_spec(2, {"x"}), 1); }), errc::not_artinian);
  EXPECT_EQ(code_of([] { quotient_hilbert(make_spec(5, {"x", "y"}, "x^3+y^3+x*y*z"), 1); }),
            errc::not_artinian);
  HilbertOptions opts;
  opts.dmax_override = 2;
  EXPECT_EQ(code_of([&] { quotient_hilbert(cubic_monomials_spec(2), 1, opts); }), errc::not_artinian);
}

TEST(IdealSpec, Validation) {
  const PrimeField F(5);
  EXPECT_EQ(code_of([&] { IdealSpec(parse_form("x-x", F), {parse_form("x", F)}); }), errc::zero_polynomial);
  EXPECT_EQ(code_of([&] { IdealSpec(parse_form("x^2", F), {parse_form("x", F)}); }), errc::invalid_argument);
  EXPECT_EQ(code_of([&] { IdealSpec(nodal_cubic(F), {}); }), errc::invalid_argument);
  EXPECT_EQ(code_of([&] { IdealSpec(nodal_cubic(F), {parse_form("x", F), parse_form("y-y", F)}); }),
            errc::zero_polynomial);
  EXPECT_EQ(code_of([&] { IdealSpec(nodal_cubic(F), {parse_form("x", PrimeField(7))}); }),
            errc::field_mismatch);
  EXPECT_EQ(code_of([] { quotient_hilbert(pardue_spec(2), 3); }), errc::not_power_of_p);
}

TEST(PoinQuotient, Examples) {
  EXPECT_EQ(poin_quotient(HilbertData{{1, 0}}), LaurentPoly::one_minus_T_pow(3));
  const auto poin = poin_quotient(HilbertData{{1, 3, 3, 0}});
  EXPECT_EQ(poin, LaurentPoly::one_minus_T_pow(3) * (LaurentPoly{{0, 1}, {1, 3}, {2, 3}}));
  EXPECT_EQ(poin, poin_quotient(pardue_spec(2), 2));
  EXPECT_EQ(poin.value_at_one(), 0);
}

TEST(CurveHilbert, ThreeDPattern) {
  const PrimeField F2(2);
  EXPECT_EQ(curve_hilbert(nodal_cubic(F2), 3), (std::vector<std::uint64_t>{1, 3, 6, 9}));
  EXPECT_EQ(curve_hilbert(nodal_cubic(F2), 0), (std::vector<std::uint64_t>{1}));
  EXPECT_EQ(curve_hilbert(nodal_cubic(F2), 10)[10], 30u);
  for (auto [p, h] : {std::pair{3, "x^3+y^3+x*y*z"}, std::pair{5, "y^2*z - x^3 - x^2*z"},
                      std::pair{7, "y^2*z - x^3 - x^2*z"}}) {
    const auto dims = curve_hilbert(parse_form(h, PrimeField(p)), 20);
    for (std::size_t d = 1; d < dims.size(); ++d) EXPECT_EQ(dims[d], 3 * d);
    // (1-T)^3 hilb(A/h) truncated: the first 21 coefficients of 1 - T^3.
    LaurentPoly hilb;
    for (std::size_t d = 0; d < dims.size(); ++d) hilb.add_term(static_cast<std::int64_t>(d), dims[d]);
    const auto poin = LaurentPoly::one_minus_T_pow(3) * hilb;
    for (std::int64_t k = 0; k <= 20; ++k) EXPECT_EQ(poin.coefficient(k), k == 0 ? 1 : k == 3 ? -1 : 0);
  }
}

TEST(KernelSeries, WorkedExamples) {
  EXPECT_EQ(kernel_series(cubic_monomials_spec(2), 8), (LaurentPoly{{27, 3}, {28, 12}, {30, 6}}));
  EXPECT_EQ(kernel_series(cubic_monomials_spec(3), 9), (LaurentPoly{{31, 13}, {32, 2}, {33, 2}, {34, 4}}));
  EXPECT_EQ(kernel_series(pardue_spec(2), 4), (LaurentPoly{{6, 1}, {7, 4}, {8, 1}}));
}

TEST(KernelSeries, RankAtOne) {
  for (const auto& [spec, q] : {std::pair{pardue_spec(2), 16}, std::pair{cubic_monomials_spec(2), 4},
                                std::pair{cubic_monomials_spec(3), 9}, std::pair{pardue_spec(7), 7}}) {
    const auto u = kernel_series(spec, q);
    EXPECT_EQ(u.value_at_one(), 3 * (static_cast<std::int64_t>(spec.generators().size()) - 1));
    for (const auto& [e, c] : u.coefficients()) EXPECT_GE(c, 0);
  }
}

TEST(EnFromSeries, Examples) {
  EXPECT_EQ(en_from_series(LaurentPoly{{6, 1}, {7, 4}, {8, 1}}, {1, 1, 1}, 4), 35);
  EXPECT_EQ(en_from_series(LaurentPoly{{27, 3}, {28, 12}, {30, 6}}, std::vector<std::int64_t>(8, 3), 8), 992);
  EXPECT_EQ(code_of([] { en_from_series(LaurentPoly{}, {}, 1); }), errc::invalid_argument);
}

TEST(EnFromSeries, ConsistencyTriangle) {
  for (int i = 0; i < 12; ++i) {
    const std::int64_t p = std::vector<std::int64_t>{2, 3, 5}[i % 3];
    const auto spec = random_artinian_spec(p);
    for (std::uint64_t q : {std::uint64_t{1}, static_cast<std::uint64_t>(p)}) {
      const auto data = quotient_hilbert(spec, q);
      const auto u = kernel_series_from(data, spec.degrees(), q);
      EXPECT_EQ(en_from_series(u, spec.degrees(), q), data.colength());
      EXPECT_EQ(u.value_at_one(), 3 * (static_cast<std::int64_t>(spec.generators().size()) - 1));
    }
  }
}
