#include "psc/factor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "psc/error.hpp"
#include "psc/primes.hpp"

namespace psc {

namespace {

constexpr u128 kLimit127 = u128{1} << 127;
constexpr std::uint32_t kTrialLimit = 100'000;

const std::vector<std::uint32_t>& trial_primes() {
  static const std::vector<std::uint32_t> primes = small_primes(kTrialLimit);
  return primes;
}

// Modular arithmetic for moduli below 2^64 (native 128-bit products) and
// below 2^127 (shift-and-add products; a + b never overflows).
struct Mod64 {
  std::uint64_t n;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return (s < a || s >= n) ? s - n : s;
  }
};

struct Mod128 {
  u128 n;
  u128 add(u128 a, u128 b) const {
    const u128 s = a + b;
    return s >= n ? s - n : s;
  }
  u128 mul(u128 a, u128 b) const {
    if ((a >> 64) == 0 && (b >> 64) == 0) {
      // a*b fits in 128 bits exactly.
      return (a * b) % n;
    }
    u128 r = 0;
    for (int bit = 127; bit >= 0; --bit) {
      r = add(r, r);
      if ((b >> bit) & 1) r = add(r, a);
    }
    return r;
  }
};

// Montgomery products for odd n < 2^127, R = 2^128. Only the rho iteration
// uses it: x -> x^2 R^-1 + c is still a polynomial map modulo every prime
// factor, so there is no need to convert in and out of Montgomery form.
struct Mont128 {
  u128 n;
  u128 ninv;  // -n^-1 mod 2^128

  explicit Mont128(u128 modulus) : n(modulus), ninv(1) {
    u128 inv = 1;
    for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;  // Newton: doubles correct bits
    ninv = -inv;
  }

  static void mul_wide(u128 a, u128 b, u128& hi, u128& lo) {
    const std::uint64_t a0 = static_cast<std::uint64_t>(a), a1 = static_cast<std::uint64_t>(a >> 64);
    const std::uint64_t b0 = static_cast<std::uint64_t>(b), b1 = static_cast<std::uint64_t>(b >> 64);
    const u128 p00 = static_cast<u128>(a0) * b0;
    const u128 p01 = static_cast<u128>(a0) * b1;
    const u128 p10 = static_cast<u128>(a1) * b0;
    const u128 p11 = static_cast<u128>(a1) * b1;
    const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) + static_cast<std::uint64_t>(p10);
    lo = (mid << 64) | static_cast<std::uint64_t>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }

  u128 add(u128 a, u128 b) const {
    const u128 s = a + b;
    return s >= n ? s - n : s;
  }
  u128 mul(u128 a, u128 b) const {
    u128 hi, lo, mhi, mlo;
    mul_wide(a, b, hi, lo);
    mul_wide(lo * ninv, n, mhi, mlo);
    const u128 t = hi + mhi + (lo != 0 ? 1 : 0);
    return t >= n ? t - n : t;
  }
};

template <class M, class T>
T pow_mod(const M& m, T base, T e) {
  T r = 1 % m.n;
  base %= m.n;
  while (e != 0) {
    if (e & 1) r = m.mul(r, base);
    base = m.mul(base, base);
    e >>= 1;
  }
  return r;
}

template <class M, class T>
bool strong_probable_prime(const M& m, T a) {
  const T n = m.n;
  a %= n;
  if (a == 0) return true;
  T d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  T x = pow_mod(m, a, d);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = m.mul(x, x);
    if (x == n - 1) return true;
  }
  return false;
}

int jacobi(u128 a, u128 n) {
  // n odd and positive
  a %= n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const unsigned r = static_cast<unsigned>(n & 7);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_square(u128 n) {
  const BigInt v = to_bigint(n);
  return mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

// Strong Lucas probable-prime test with Selfridge's parameters (P = 1).
bool strong_lucas(u128 n) {
  if (is_square(n)) return false;
  const Mod128 m{n};
  long long dd = 5;
  for (;;) {
    const u128 dmod = dd > 0 ? static_cast<u128>(dd) % n : n - static_cast<u128>(-dd) % n;
    const int j = jacobi(dmod, n);
    if (j == -1) break;
    if (j == 0 && static_cast<u128>(dd > 0 ? dd : -dd) != n) return false;
    dd = dd > 0 ? -(dd + 2) : -dd + 2;
  }
  const u128 D = dd > 0 ? static_cast<u128>(dd) % n : n - static_cast<u128>(-dd) % n;
  // Q = (1 - D) / 4
  const long long q_signed = (1 - dd) / 4;
  const u128 Q = q_signed >= 0 ? static_cast<u128>(q_signed) % n : n - static_cast<u128>(-q_signed) % n;

  auto half = [&](u128 x) { return (x & 1) ? (x >> 1) + (n >> 1) + 1 : x >> 1; };  // x/2 mod n, n odd
  auto sub = [&](u128 a, u128 b) { return a >= b ? a - b : a + (n - b); };

  u128 d = n + 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  int top = 127;
  while (((d >> top) & 1) == 0) --top;

  u128 U = 1, V = 1, Qk = Q;
  for (int bit = top - 1; bit >= 0; --bit) {
    U = m.mul(U, V);
    V = sub(m.mul(V, V), m.add(Qk, Qk));
    Qk = m.mul(Qk, Qk);
    if ((d >> bit) & 1) {
      const u128 nu = half(m.add(U, V));               // (P*U + V)/2
      const u128 nv = half(m.add(m.mul(D, U), V));     // (D*U + P*V)/2
      U = nu;
      V = nv;
      Qk = m.mul(Qk, Q);
    }
  }
  if (U == 0 || V == 0) return true;
  for (int r = 1; r < s; ++r) {
    V = sub(m.mul(V, V), m.add(Qk, Qk));
    if (V == 0) return true;
    Qk = m.mul(Qk, Qk);
  }
  return false;
}

template <class M, class T>
T gcd_t(T a, T b) {
  while (b != 0) {
    const T t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// One Brent-rho attempt with f(y) = y^2 + c. Returns a divisor of n (possibly
// n itself on failure) and charges iterations against `budget`.
template <class M, class T>
T brent(const M& m, T c, std::uint64_t& budget) {
  const T n = m.n;
  auto f = [&](T y) { return m.add(m.mul(y, y), c); };
  T y = 2 % n, x = y, ys = y, q = 1, g = 1;
  std::uint64_t r = 1;
  constexpr std::uint64_t kBatch = 128;
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) y = f(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t steps = std::min(kBatch, r - k);
      if (budget < steps) return n;
      budget -= steps;
      for (std::uint64_t i = 0; i < steps; ++i) {
        y = f(y);
        q = m.mul(q, x > y ? x - y : y - x);
      }
      g = gcd_t<M, T>(q, n);
      k += steps;
    }
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      if (budget == 0) return n;
      --budget;
      ys = f(ys);
      g = gcd_t<M, T>(x > ys ? x - ys : ys - x, n);
    } while (g == 1);
  }
  return g;
}

u128 find_divisor(u128 n, std::uint64_t& budget) {
  for (std::uint64_t c = 1; budget > 0; ++c) {
    u128 g;
    if ((n >> 64) == 0) {
      const auto n64 = static_cast<std::uint64_t>(n);
      g = brent<Mod64, std::uint64_t>(Mod64{n64}, c % n64, budget);
    } else {
      g = brent<Mont128, u128>(Mont128{n}, static_cast<u128>(c) % n, budget);
    }
    if (g != 1 && g != n) return g;
  }
  return n;
}

// r^k with saturation at 2^127.
u128 saturating_pow(u128 r, unsigned k) {
  u128 v = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (r != 0 && v > kLimit127 / r) return kLimit127;
    v *= r;
  }
  return v;
}

// (r, k) with r^k = m and k >= 2 maximal, or k = 1. m has no prime factor
// below the trial limit, so k <= 7.
std::pair<u128, unsigned> perfect_power(u128 m) {
  for (unsigned k = 7; k >= 2; --k) {
    const auto guess = static_cast<u128>(std::pow(static_cast<long double>(m), 1.0L / k));
    for (u128 r = guess > 1 ? guess - 1 : 1; r <= guess + 1; ++r)
      if (saturating_pow(r, k) == m) return {r, k};
  }
  return {m, 1};
}

struct Splitter {
  std::uint64_t budget;
  std::vector<u128> primes;
  u128 unfactored = 1;
  bool probabilistic = false;
  bool complete = true;

  void split(u128 m) {
    if (m == 1) return;
    const auto v = is_prime_u128(m);
    if (v.prime) {
      primes.push_back(m);
      probabilistic = probabilistic || v.probabilistic;
      return;
    }
    if (const auto [r, k] = perfect_power(m); k > 1) {
      for (unsigned i = 0; i < k; ++i) split(r);
      return;
    }
    const u128 g = find_divisor(m, budget);
    if (g == m) {
      complete = false;
      unfactored *= m;
      return;
    }
    split(g);
    split(m / g);
  }
};

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const auto p : kBases) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  const Mod64 m{n};
  for (const auto a : kBases)
    if (!strong_probable_prime(m, a)) return false;
  return true;
}

PrimalityVerdict is_prime_u128(u128 n) {
  if (n >= kLimit127) throw Error(ErrorCode::InvalidArgument, "primality input must be below 2^127");
  if ((n >> 64) == 0) return {is_prime(static_cast<std::uint64_t>(n)), false};
  for (const auto p : trial_primes()) {
    if (p > 1000) break;
    if (n % p == 0) return {false, false};
  }
  const Mod128 m{n};
  std::mt19937_64 gen(0x5eed);
  for (int round = 0; round < 64; ++round) {
    const u128 a = 2 + ((static_cast<u128>(gen()) << 64 | gen()) % (n - 3));
    if (!strong_probable_prime(m, a)) return {false, false};
  }
  if (!strong_lucas(n)) return {false, false};
  return {true, true};
}

Factorization factorize(u128 n, const Caps& caps) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "cannot factor 0");
  if (n >= kLimit127) throw Error(ErrorCode::InvalidArgument, "factorization input must be below 2^127");

  Factorization out;
  u128 m = n;
  for (const std::uint32_t p : trial_primes()) {
    if (static_cast<u128>(p) * p > m) break;
    if (m % p != 0) continue;
    unsigned k = 0;
    do {
      m /= p;
      ++k;
    } while (m % p == 0);
    out.factors.push_back({p, k});
  }
  if (m == 1) return out;
  const u128 trial_bound = static_cast<u128>(kTrialLimit) * kTrialLimit;
  if (m < trial_bound) {
    out.factors.push_back({m, 1});
    return out;
  }

  Splitter s{caps.rho_iterations, {}};
  s.split(m);
  std::sort(s.primes.begin(), s.primes.end());
  for (std::size_t i = 0; i < s.primes.size();) {
    std::size_t j = i;
    while (j < s.primes.size() && s.primes[j] == s.primes[i]) ++j;
    out.factors.push_back({s.primes[i], static_cast<unsigned>(j - i)});
    i = j;
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  out.unfactored = s.unfactored;
  out.complete = s.complete;
  out.probabilistic = s.probabilistic;
  return out;
}

FactorSignature factor_signature(u128 n, const Caps& caps) {
  const Factorization f = factorize(n, caps);
  if (!f.complete)
    throw Error(ErrorCode::FactorizationTimeout,
                "rho budget exhausted factoring " + to_string(n) + "; cofactor " + to_string(f.unfactored));
  FactorSignature sig;
  sig.n = n;
  for (const auto& pk : f.factors) {
    sig.omega_big += pk.k;
    if (pk.k > 1) sig.squarefree = false;
  }
  sig.prime = sig.omega_big == 1;
  sig.probabilistic = f.probabilistic;
  return sig;
}

}  // namespace psc
