#include "psc/rational.hpp"

#include <cctype>
#include <limits>

#include <mpfr.h>

#include "psc/error.hpp"

namespace psc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

[[noreturn]] void reject(std::string_view text) {
  throw Error(ErrorCode::NotAFraction, "cannot parse '" + std::string(text) + "' as an exact rational");
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) reject(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }

  std::string digits;
  long scale = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) reject(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) reject(text);
    digits = std::string(whole) + std::string(frac);
    scale = static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) reject(text);
    digits = std::string(s);
  }

  Rational q(BigInt(digits, 10));
  const long shift = exponent - scale;
  if (shift >= 0)
    q *= pow10(static_cast<unsigned long>(shift));
  else
    q /= pow10(static_cast<unsigned long>(-shift));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) reject(text);

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) reject(text);
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

std::uint64_t parse_natural(std::string_view text) {
  const Rational q = parse_rational(text);
  if (q.get_den() != 1 || q < 0)
    throw Error(ErrorCode::InvalidArgument, "'" + std::string(text) + "' is not a natural number");
  if (mpz_sizeinbase(q.get_num_mpz_t(), 2) > 64)
    throw Error(ErrorCode::OutOfRange, "'" + std::string(text) + "' exceeds 64 bits");
  const auto v = to_u128(q.get_num());
  return static_cast<std::uint64_t>(*v);
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, q.get_mpq_t(), MPFR_RNDN);
  const double v = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return v;
}

BigInt floor(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt ceil(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

BigInt to_bigint(u128 v) {
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

std::optional<u128> to_u128(const BigInt& v) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 128) return std::nullopt;
  const BigInt mask = (BigInt(1) << 64) - 1;
  const BigInt lo = v & mask;
  const BigInt hi = v >> 64;
  return (static_cast<u128>(mpz_get_ui(hi.get_mpz_t())) << 64) | mpz_get_ui(lo.get_mpz_t());
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::size_t bit_length(const BigInt& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace psc
