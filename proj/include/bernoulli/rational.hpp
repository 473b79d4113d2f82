#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bernoulli {

/// Exact rational number. GMP keeps every value canonical (lowest terms,
/// positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;

/// Parses "num/den", "num" or "-num/den". Throws Error{ParseError}.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are written as "num/1".
std::string to_string(const Rational& value);

/// Comma separated list of rationals, e.g. "1/2,-1/6".
RationalVector parse_rational_list(std::string_view text, char separator = ',');
std::string join(const RationalVector& values, char separator = ';');

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce, and
/// comparisons of unreduced values are wrong.
Rational ratio(long num, long den);

Integer ipow(const Integer& base, unsigned exponent);
Rational rpow(const Rational& base, unsigned exponent);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

/// Fractional part in [0, 1).
Rational frac(const Rational& value);

/// Returns e such that den(value) == p^e, or -1 when den(value) has any
/// prime factor other than those of p.
int padic_exponent(const Rational& value, unsigned p);

/// t is a grid rational for division number p when t + 1/2 has a finite
/// base-p expansion.
bool is_grid_rational(const Rational& t, unsigned p);

/// Natural logarithm of a positive rational; stays accurate when the
/// numerator and denominator overflow double.
double log_rational(const Rational& value);

long long to_int64(const Integer& value);

}  // namespace bernoulli
