#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace nkv {

using Integer = mpz_class;
/// Exact rational scalar. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;

/// Prints `p` or `p/q`.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

/// Accepts `p` or `p/q` with optional sign; throws Error(Errc::Parse).
Rational parse_rational(std::string_view text);

Integer binomial(long n, long k);
Integer factorial(long n);
/// (a)_b = a(a-1)...(a-b+1), with (a)_0 = 1.
Integer falling_factorial(long a, long b);

}  // namespace nkv
