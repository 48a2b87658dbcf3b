#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hknodal {

enum class errc {
  invalid_argument,
  not_prime,
  division_by_zero,
  field_mismatch,
  not_power_of_p,
  syntax_error,
  not_homogeneous,
  zero_polynomial,
  not_artinian,
  inexact_division,
  non_integral_result,
  window_not_stable,
  not_aperiodic,
  length_one,
  missing_b,
  forbidden_q,
  forbidden_n,
  invalid_strand,
  ambiguous_extraction,
  no_consistent_data,
  q_too_small,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "InvalidArgument";
    case errc::not_prime: return "NotPrime";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::field_mismatch: return "FieldMismatch";
    case errc::not_power_of_p: return "NotPowerOfP";
    case errc::syntax_error: return "SyntaxError";
    case errc::not_homogeneous: return "NotHomogeneous";
    case errc::zero_polynomial: return "ZeroPolynomial";
    case errc::not_artinian: return "NotArtinian";
    case errc::inexact_division: return "InexactDivision";
    case errc::non_integral_result: return "NonIntegralResult";
    case errc::window_not_stable: return "WindowNotStable";
    case errc::not_aperiodic: return "NotAperiodic";
    case errc::length_one: return "LengthOne";
    case errc::missing_b: return "MissingB";
    case errc::forbidden_q: return "ForbiddenQ";
    case errc::forbidden_n: return "ForbiddenN";
    case errc::invalid_strand: return "InvalidStrand";
    case errc::ambiguous_extraction: return "AmbiguousExtraction";
    case errc::no_consistent_data: return "NoConsistentData";
    case errc::q_too_small: return "QTooSmall";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; the
/// code identifies the failure class, the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace hknodal
