#include "psc/oracle.hpp"

#include <mpfr.h>

#include <cmath>
#include <random>
#include <vector>

namespace psc::oracle {

namespace {

class Mp {
 public:
  Mp() { mpfr_init2(v_, kPrecisionBits); mpfr_set_zero(v_, 1); }
  ~Mp() { mpfr_clear(v_); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Complex accumulator at 256 bits.
struct MpSum {
  Mp re, im;
  void add(Mp& r, Mp& i) {
    mpfr_add(re.get(), re.get(), r.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), i.get(), MPFR_RNDN);
  }
  std::complex<double> value() { return {mpfr_get_d(re.get(), MPFR_RNDN), mpfr_get_d(im.get(), MPFR_RNDN)}; }
};

// t <- m^(num/den), computed as exp((num/den) log m).
void power(Mp& t, std::uint64_t m, const BigInt& num, const BigInt& den) {
  Mp e;
  mpfr_set_ui(t.get(), m, MPFR_RNDN);
  mpfr_log(t.get(), t.get(), MPFR_RNDN);
  mpfr_set_z(e.get(), num.get_mpz_t(), MPFR_RNDN);
  mpfr_mul(t.get(), t.get(), e.get(), MPFR_RNDN);
  mpfr_set_z(e.get(), den.get_mpz_t(), MPFR_RNDN);
  mpfr_div(t.get(), t.get(), e.get(), MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
}

// weight * e(t) into (re, im).
void add_term(MpSum& acc, Mp& t, double weight) {
  Mp fl, re, im;
  mpfr_floor(fl.get(), t.get());
  mpfr_sub(t.get(), t.get(), fl.get(), MPFR_RNDN);
  mpfr_const_pi(fl.get(), MPFR_RNDN);
  mpfr_mul_ui(fl.get(), fl.get(), 2, MPFR_RNDN);
  mpfr_mul(t.get(), t.get(), fl.get(), MPFR_RNDN);
  mpfr_sin_cos(im.get(), re.get(), t.get(), MPFR_RNDN);
  mpfr_mul_d(re.get(), re.get(), weight, MPFR_RNDN);
  mpfr_mul_d(im.get(), im.get(), weight, MPFR_RNDN);
  acc.add(re, im);
}

void scale(Mp& t, std::uint64_t h, std::uint64_t d) {
  mpfr_mul_ui(t.get(), t.get(), h, MPFR_RNDN);
  mpfr_div_ui(t.get(), t.get(), d, MPFR_RNDN);
}

std::vector<std::uint64_t> primes_upto(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= x; ++n)
    if (trial_signature(n).prime) out.push_back(n);
  return out;
}

}  // namespace

BigInt root_by_bisection(const BigInt& a, unsigned long k) {
  if (a < 2 || k == 1) return a;
  BigInt lo = 0;
  BigInt hi = BigInt(1) << static_cast<mp_bitcnt_t>(mpz_sizeinbase(a.get_mpz_t(), 2) / k + 1);
  // Invariant: lo^k <= a < hi^k.
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), mid.get_mpz_t(), k);
    if (p <= a)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BigInt floor_pow(const BigInt& n, unsigned long num, unsigned long den) {
  BigInt p;
  mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), num);
  return root_by_bisection(p, den);
}

TrialSignature trial_signature(std::uint64_t n) {
  TrialSignature s;
  if (n < 2) return s;
  std::uint64_t m = n;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    unsigned e = 0;
    while (m % q == 0) {
      m /= q;
      ++e;
    }
    s.omega_big += e;
    if (e > 1) s.squarefree = false;
  }
  if (m > 1) ++s.omega_big;
  s.prime = s.omega_big == 1;
  return s;
}

std::complex<double> weyl_sum(const RationalExponent& c, const Rational& theta, const Rational& delta,
                              std::uint64_t N) {
  // z_floor = floor(N^theta), by bisection on the exact power.
  const BigInt zf = floor_pow(BigInt(static_cast<unsigned long>(N)), theta.get_num().get_ui(), theta.get_den().get_ui());
  const std::uint64_t z0 = zf.get_ui();
  Mp nd;
  power(nd, N, delta.get_num(), delta.get_den());
  MpSum acc;
  for (std::uint64_t z = 2 * z0; z > z0; --z) {
    Mp t;
    power(t, z, BigInt(c.num()), BigInt(c.den()));
    mpfr_mul(t.get(), t.get(), nd.get(), MPFR_RNDN);
    add_term(acc, t, 1.0);
  }
  return acc.value();
}

std::complex<double> prime_expsum(std::uint64_t x, const RationalExponent& c, std::int64_t h, std::uint64_t d) {
  const auto ps = primes_upto(x);
  const std::uint64_t habs = h < 0 ? 0 - static_cast<std::uint64_t>(h) : static_cast<std::uint64_t>(h);
  MpSum acc;
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) {
    Mp t;
    power(t, *it, BigInt(c.num()), BigInt(c.den()));
    scale(t, habs, d);
    add_term(acc, t, 1.0);
  }
  const auto v = acc.value();
  return h < 0 ? std::conj(v) : v;
}

std::complex<double> trilinear_sum(std::uint64_t D, std::uint64_t M, std::uint64_t L, std::uint64_t h,
                                   const RationalExponent& c, const WeightSpec& weights) {
  std::vector<int> cd(D, 1), am(M, 1), bl(L, 1);
  if (weights.kind == WeightKind::RandomSign) {
    std::mt19937_64 gen(weights.seed);
    for (auto& s : cd) s = (gen() >> 63) ? -1 : 1;
    for (auto& s : am) s = (gen() >> 63) ? -1 : 1;
    for (auto& s : bl) s = (gen() >> 63) ? -1 : 1;
  } else if (weights.kind == WeightKind::Interval) {
    for (std::uint64_t l = L + 1; l <= 2 * L; ++l) bl[l - L - 1] = 2 * l <= 3 * L + 1 ? 1 : 0;
  }
  MpSum acc;
  for (std::uint64_t d = 2 * D; d > D; --d)
    for (std::uint64_t m = 2 * M; m > M; --m)
      for (std::uint64_t l = 2 * L; l > L; --l) {
        const int w = cd[d - D - 1] * am[m - M - 1] * bl[l - L - 1];
        if (w == 0) continue;
        Mp t;
        power(t, l * m, BigInt(c.num()), BigInt(c.den()));
        scale(t, h, d);
        add_term(acc, t, w);
      }
  return acc.value();
}

double triple_sum(std::uint64_t x, std::uint64_t D, std::uint64_t H, const RationalExponent& c) {
  // Lambda(n) for x < n <= 2x by trial division.
  std::vector<std::pair<std::uint64_t, double>> lam;
  for (std::uint64_t n = 2 * x; n > x; --n) {
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    if (m == 1) lam.push_back({n, std::log(static_cast<double>(p))});
  }
  Mp total;
  for (std::uint64_t h = H; h >= 1; --h)
    for (std::uint64_t d = 2 * D; d > D; --d) {
      MpSum inner;
      for (auto& [n, w] : lam) {
        Mp t;
        power(t, n, BigInt(c.num()), BigInt(c.den()));
        scale(t, h, d);
        add_term(inner, t, w);
      }
      Mp a;
      mpfr_hypot(a.get(), inner.re.get(), inner.im.get(), MPFR_RNDN);
      mpfr_add(total.get(), total.get(), a.get(), MPFR_RNDN);
    }
  return mpfr_get_d(total.get(), MPFR_RNDN);
}

}  // namespace psc::oracle
