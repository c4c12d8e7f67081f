#include "psc/exactpow.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "psc/error.hpp"

namespace psc {

namespace {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

double log2_of(const BigInt& v) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
  return static_cast<double>(e) + std::log2(m);
}

BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

unsigned long to_ulong(const BigInt& v) {
  if (!v.fits_ulong_p()) throw Error(ErrorCode::Overflow, "exponent component exceeds 64 bits");
  return v.get_ui();
}

// value = (h / d) * prod base_i ^ exponent_i, with base_i >= 1 and
// exponent_i > 0.
struct PowerFactor {
  BigInt base;
  Rational exponent;
};

struct ScaledProduct {
  std::vector<PowerFactor> factors;
  std::uint64_t h = 1;
  std::uint64_t d = 1;

  double log2_magnitude() const {
    double m = std::log2(static_cast<double>(h)) - std::log2(static_cast<double>(d));
    for (const auto& f : factors)
      if (f.base > 1) m += to_double(f.exponent) * log2_of(f.base);
    return m;
  }

  double log_argument() const {
    double a = 0;
    for (const auto& f : factors)
      if (f.base > 1) a += to_double(f.exponent) * log2_of(f.base) * std::log(2.0);
    return a;
  }
};

// Encloses the value of x in [lo, hi] using directed rounding throughout. All
// intermediate quantities are non-negative, so rounding every lower-bound step
// down and every upper-bound step up yields a rigorous enclosure.
void enclose(const ScaledProduct& x, mpfr_prec_t prec, mpfr_ptr lo, mpfr_ptr hi) {
  Mpfr arg_lo(prec), arg_hi(prec), t(prec);
  mpfr_set_zero(arg_lo.get(), 1);
  mpfr_set_zero(arg_hi.get(), 1);
  for (const auto& f : x.factors) {
    if (f.base <= 1) continue;
    const mpz_srcptr num = f.exponent.get_num_mpz_t();
    const mpz_srcptr den = f.exponent.get_den_mpz_t();

    mpfr_set_z(t.get(), f.base.get_mpz_t(), MPFR_RNDD);
    mpfr_log(t.get(), t.get(), MPFR_RNDD);
    mpfr_mul_z(t.get(), t.get(), num, MPFR_RNDD);
    mpfr_div_z(t.get(), t.get(), den, MPFR_RNDD);
    mpfr_add(arg_lo.get(), arg_lo.get(), t.get(), MPFR_RNDD);

    mpfr_set_z(t.get(), f.base.get_mpz_t(), MPFR_RNDU);
    mpfr_log(t.get(), t.get(), MPFR_RNDU);
    mpfr_mul_z(t.get(), t.get(), num, MPFR_RNDU);
    mpfr_div_z(t.get(), t.get(), den, MPFR_RNDU);
    mpfr_add(arg_hi.get(), arg_hi.get(), t.get(), MPFR_RNDU);
  }
  mpfr_exp(lo, arg_lo.get(), MPFR_RNDD);
  mpfr_exp(hi, arg_hi.get(), MPFR_RNDU);
  mpfr_mul_ui(lo, lo, x.h, MPFR_RNDD);
  mpfr_mul_ui(hi, hi, x.h, MPFR_RNDU);
  mpfr_div_ui(lo, lo, x.d, MPFR_RNDD);
  mpfr_div_ui(hi, hi, x.d, MPFR_RNDU);
}

mpfr_prec_t initial_precision(const ScaledProduct& x, double extra_bits) {
  const double mag = std::max(0.0, x.log2_magnitude());
  const double arg = std::max(1.0, x.log_argument());
  const double want = mag + extra_bits + std::log2(arg) + 32.0;
  return static_cast<mpfr_prec_t>(std::max(128.0, std::ceil(want)));
}

// If the product of powers is rational it is an integer P (rational roots of
// integers are integers); returns h*P/d exactly in that case.
std::optional<Rational> exact_value(const ScaledProduct& x, const Caps& caps) {
  BigInt lcm = 1;
  for (const auto& f : x.factors) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), f.exponent.get_den_mpz_t());
  const unsigned long root = to_ulong(lcm);

  double bits = 0;
  for (const auto& f : x.factors)
    if (f.base > 1) bits += to_double(f.exponent) * static_cast<double>(root) * log2_of(f.base);
  if (bits > static_cast<double>(caps.bit_budget)) return std::nullopt;

  BigInt power = 1;
  for (const auto& f : x.factors) {
    const BigInt e = f.exponent.get_num() * (lcm / f.exponent.get_den());
    power *= pow_ui(f.base, to_ulong(e));
  }
  const BigInt r = integer_root(power, root);
  if (pow_ui(r, root) != power) return std::nullopt;
  Rational q(r * BigInt(static_cast<unsigned long>(x.h)), BigInt(static_cast<unsigned long>(x.d)));
  q.canonicalize();
  return q;
}

CertifiedReal frac_of_rational(const Rational& q) {
  Rational fr = q - Rational(floor(q));
  const double v = to_double(fr);
  const Rational err = abs(fr - Rational(v));
  if (err == 0) return {v, 0.0, true};
  return {v, std::nextafter(err.get_d(), 1.0), false};
}

BigInt certified_floor(const ScaledProduct& x, const Caps& caps) {
  mpfr_prec_t prec = initial_precision(x, 16.0);
  for (;;) {
    if (static_cast<std::uint64_t>(prec) > caps.precision_cap)
      throw Error(ErrorCode::PrecisionExhausted, "floor undecided at the precision cap");
    Mpfr lo(prec), hi(prec);
    enclose(x, prec, lo.get(), hi.get());
    BigInt f_lo, f_hi;
    mpfr_get_z(f_lo.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(f_hi.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (f_lo == f_hi) return f_lo;
    prec *= 2;
  }
}

CertifiedReal certified_frac(const ScaledProduct& x, double tol, const Caps& caps,
                             const std::function<std::optional<Rational>()>& exact) {
  if (!(tol > 0x1p-52) || !(tol < 1.0))
    throw Error(ErrorCode::InvalidArgument, "fractional-part tolerance must lie in (2^-52, 1)");
  mpfr_prec_t prec = initial_precision(x, -std::log2(tol));
  bool tried_exact = false;
  for (;;) {
    if (static_cast<std::uint64_t>(prec) > caps.precision_cap)
      throw Error(ErrorCode::PrecisionExhausted, "fractional part undecided at the precision cap");
    Mpfr lo(prec), hi(prec);
    enclose(x, prec, lo.get(), hi.get());
    BigInt f_lo, f_hi;
    mpfr_get_z(f_lo.get_mpz_t(), lo.get(), MPFR_RNDD);
    mpfr_get_z(f_hi.get_mpz_t(), hi.get(), MPFR_RNDD);
    if (f_lo == f_hi) {
      Mpfr a(prec), b(prec), mid(prec), e1(prec), e2(prec);
      mpfr_sub_z(a.get(), lo.get(), f_lo.get_mpz_t(), MPFR_RNDD);
      mpfr_sub_z(b.get(), hi.get(), f_lo.get_mpz_t(), MPFR_RNDU);
      mpfr_add(mid.get(), a.get(), b.get(), MPFR_RNDN);
      mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
      double v = mpfr_get_d(mid.get(), MPFR_RNDN);
      if (v >= 1.0) v = std::nextafter(1.0, 0.0);
      if (v < 0.0) v = 0.0;
      mpfr_d_sub(e1.get(), v, a.get(), MPFR_RNDU);
      mpfr_sub_d(e2.get(), b.get(), v, MPFR_RNDU);
      mpfr_max(e1.get(), e1.get(), e2.get(), MPFR_RNDU);
      const double err = mpfr_get_d(e1.get(), MPFR_RNDU);
      if (err <= tol) return {v, std::max(err, 0.0), false};
    } else if (!tried_exact) {
      tried_exact = true;
      if (exact)
        if (auto q = exact()) return frac_of_rational(*q);
    }
    prec *= 2;
  }
}

// r with r^k = n, if n is a perfect k-th power.
std::optional<BigInt> exact_root(const BigInt& n, unsigned long k) {
  const BigInt r = integer_root(n, k);
  if (pow_ui(r, k) == n) return r;
  return std::nullopt;
}

void check_bits(double bits, const Caps& caps) {
  if (bits > static_cast<double>(caps.bit_budget))
    throw Error(ErrorCode::Overflow, "power needs about " + std::to_string(static_cast<long long>(bits)) +
                                         " bits, over the bit budget");
}

unsigned long checked_numerator(const Rational& v) {
  if (v.get_den() == 1) throw Error(ErrorCode::IntegerExponent, "c = " + v.get_num().get_str() + " is an integer");
  if (v <= 1) throw Error(ErrorCode::OutOfRange, "c = " + to_fraction_string(v) + " is not greater than 1");
  return to_ulong(v.get_num());
}

}  // namespace

RationalExponent::RationalExponent(unsigned long num, unsigned long den) : num_(num), den_(den) {
  if (den_ == 0) throw Error(ErrorCode::NotAFraction, "zero denominator");
  const unsigned long g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (den_ == 1) throw Error(ErrorCode::IntegerExponent, "c = " + std::to_string(num_) + " is an integer");
  if (num_ <= den_) throw Error(ErrorCode::OutOfRange, "c = " + str() + " is not greater than 1");
}

RationalExponent::RationalExponent(const Rational& value)
    : RationalExponent(checked_numerator(value), to_ulong(value.get_den())) {}

std::string RationalExponent::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

RationalExponent parse_exponent(std::string_view text) {
  return RationalExponent(parse_rational(text));
}

BigInt integer_root(const BigInt& a, unsigned long k) {
  if (sgn(a) < 0) throw Error(ErrorCode::InvalidArgument, "integer_root of a negative number");
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "integer_root with k = 0");
  if (a < 2 || k == 1) return a;
  if (bit_length(a) <= k) return 1;  // a < 2^k

  // Floating estimate of log2 of the root.
  const double y = log2_of(a) / static_cast<double>(k);
  BigInt x;
  if (y < 52.0) {
    x = static_cast<unsigned long>(std::floor(std::exp2(y)));
  } else {
    const double whole = std::floor(y);
    const auto mant = static_cast<unsigned long>(std::ldexp(std::exp2(y - whole), 52));
    x = BigInt(mant) << static_cast<mp_bitcnt_t>(whole - 52.0);
  }
  if (x < 1) x = 1;

  const BigInt km1 = static_cast<unsigned long>(k - 1);
  auto newton = [&](const BigInt& v) -> BigInt { return (km1 * v + a / pow_ui(v, k - 1)) / k; };

  // Integer Newton descends monotonically to the floor root from any start at
  // or above it; make sure we start there.
  if (pow_ui(x, k) <= a) x = newton(x) + 1;
  for (;;) {
    BigInt next = newton(x);
    if (next >= x) break;
    x = std::move(next);
  }
  while (pow_ui(x, k) > a) --x;
  while (pow_ui(x + 1, k) <= a) ++x;
  return x;
}

BigInt floor_rational_power(const BigInt& base, const Rational& exponent, const Caps& caps) {
  if (sgn(base) < 0) throw Error(ErrorCode::InvalidArgument, "negative base");
  if (exponent <= 0) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  if (base < 2) return base;
  check_bits(to_double(exponent.get_num()) * log2_of(base), caps);
  return integer_root(pow_ui(base, to_ulong(exponent.get_num())), to_ulong(exponent.get_den()));
}

BigInt floor_pow(const BigInt& n, const RationalExponent& c, const Caps& caps) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "floor_pow needs n >= 2");
  const double lg = log2_of(n);
  check_bits(c.to_double() * lg, caps);

  if (static_cast<double>(c.num()) * lg <= static_cast<double>(caps.exact_path_bits))
    return integer_root(pow_ui(n, c.num()), c.den());

  if (auto r = exact_root(n, c.den())) return pow_ui(*r, c.num());
  ScaledProduct x;
  x.factors.push_back({n, c.value()});
  return certified_floor(x, caps);
}

u128 floor_pow_u128(std::uint64_t n, const RationalExponent& c, const Caps& caps) {
  const BigInt r = floor_pow(BigInt(static_cast<unsigned long>(n)), c, caps);
  if (bit_length(r) > 127)
    throw Error(ErrorCode::Overflow, "floor(" + std::to_string(n) + "^" + c.str() + ") >= 2^127");
  return *to_u128(r);
}

CertifiedReal frac_scaled_pow(const BigInt& n, const RationalExponent& c, std::uint64_t h, std::uint64_t d,
                              double tol, const Caps& caps) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  if (sgn(n) < 0) throw Error(ErrorCode::InvalidArgument, "n must be non-negative");
  if (h == 0 || n == 0) return {0.0, 0.0, true};

  if (auto r = exact_root(n, c.den())) {
    check_bits(static_cast<double>(c.num()) * log2_of(*r), caps);
    Rational q(pow_ui(*r, c.num()) * BigInt(static_cast<unsigned long>(h)), BigInt(static_cast<unsigned long>(d)));
    q.canonicalize();
    return frac_of_rational(q);
  }
  ScaledProduct x;
  x.factors.push_back({n, c.value()});
  x.h = h;
  x.d = d;
  // n is not a perfect den-th power, so h n^c / d is irrational and the
  // escalation always terminates.
  return certified_frac(x, tol, caps, {});
}

CertifiedReal frac_phase(const BigInt& z, const RationalExponent& c, const BigInt& N, const Rational& delta,
                         double tol, const Caps& caps) {
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "frac_phase needs N >= 2");
  if (delta <= 0) throw Error(ErrorCode::InvalidArgument, "frac_phase needs delta > 0");
  if (sgn(z) < 0) throw Error(ErrorCode::InvalidArgument, "z must be non-negative");
  if (z == 0) return {0.0, 0.0, true};

  ScaledProduct x;
  x.factors.push_back({z, c.value()});
  x.factors.push_back({N, delta});
  return certified_frac(x, tol, caps, [&] { return exact_value(x, caps); });
}

}  // namespace psc
