#include "nkv/scalar.hpp"

#include <cctype>

#include "nkv/error.hpp"

namespace nkv {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UniverseMismatch: return "UniverseMismatch";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::DivisionByZero: return "DivisionByZeroPolynomial";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::DegenerateDegree: return "DegenerateDegree";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotHypersurface: return "NotHypersurface";
    case Errc::SingularMatrix: return "SingularV";
    case Errc::NoStrategy: return "NoStrategy";
    case Errc::RetryExhausted: return "RetryExhausted";
    case Errc::UnsupportedPartition: return "UnsupportedPartition";
    case Errc::UnsupportedCase: return "UnsupportedCase";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::Parse: return "ParseError";
  }
  return "Unknown";
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num = s.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(Errc::Parse, "malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer factorial(long n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "factorial of a negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Integer falling_factorial(long a, long b) {
  if (b < 0) throw Error(Errc::InvalidArgument, "negative falling-factorial length");
  Integer r = 1;
  for (long j = 0; j < b; ++j) r *= Integer(a - j);
  return r;
}

}  // namespace nkv
