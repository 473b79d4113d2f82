#include "bernoulli/rational.hpp"

#include <cmath>

#include "bernoulli/error.hpp"

namespace bernoulli {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::BadDivisionNumber: return "BadDivisionNumber";
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotGridRational: return "NotGridRational";
    case ErrorCode::GenerationTooLarge: return "GenerationTooLarge";
    case ErrorCode::ADCClassRequired: return "ADCClassRequired";
    case ErrorCode::StripNotContained: return "StripNotContained";
    case ErrorCode::OutOfOpenBox: return "OutOfOpenBox";
    case ErrorCode::DegenerateRadii: return "DegenerateRadii";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "not a rational literal: '" + std::string(text) + "'");
  }
  Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

RationalVector parse_rational_list(std::string_view text, char separator) {
  RationalVector out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(separator, start);
    out.push_back(parse_rational(text.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const RationalVector& values, char separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += separator;
    out += to_string(values[i]);
  }
  return out;
}

Rational ratio(long num, long den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Integer ipow(const Integer& base, unsigned exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Rational rpow(const Rational& base, unsigned exponent) {
  Rational r(ipow(base.get_num(), exponent), ipow(base.get_den(), exponent));
  r.canonicalize();
  return r;
}

Integer floor(const Rational& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& value) { return value - Rational(floor(value)); }

int padic_exponent(const Rational& value, unsigned p) {
  Integer den = value.get_den();
  int e = 0;
  while (den != 1) {
    if (mpz_divisible_ui_p(den.get_mpz_t(), p) == 0) return -1;
    den /= p;
    ++e;
  }
  return e;
}

bool is_grid_rational(const Rational& t, unsigned p) {
  return padic_exponent(t + Rational(1, 2), p) >= 0;
}

namespace {

double log_integer(const Integer& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace

double log_rational(const Rational& value) {
  if (sgn(value) <= 0) throw Error(ErrorCode::InternalInconsistency, "log of nonpositive rational");
  if (value == 1) return 0.0;
  return log_integer(value.get_num()) - log_integer(value.get_den());
}

long long to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw Error(ErrorCode::IndexOutOfRange, "integer does not fit 64 bits");
  return value.get_si();
}

}  // namespace bernoulli
