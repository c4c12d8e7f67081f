#include "psc/expsum.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "psc/constants.hpp"
#include "psc/error.hpp"
#include "psc/parallel.hpp"
#include "psc/primes.hpp"

namespace psc {

namespace {

constexpr std::size_t kChunk = 4096;

// Neumaier summation on each component.
struct ComplexSum {
  double re = 0, im = 0, cre = 0, cim = 0;

  static void add(double& s, double& comp, double v) {
    const double t = s + v;
    if (std::fabs(s) >= std::fabs(v))
      comp += (s - t) + v;
    else
      comp += (v - t) + s;
    s = t;
  }
  void operator+=(std::complex<double> z) {
    add(re, cre, z.real());
    add(im, cim, z.imag());
  }
  std::complex<double> value() const { return {re + cre, im + cim}; }
};

std::complex<double> e_of_frac(double t) {
  if (t >= 0.5) t -= 1.0;
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

// Sums term(i) for i in [0, count) in fixed chunks; the chunk partials are
// merged in chunk order, both reversed when `reverse` is set.
template <class Term>
std::complex<double> sum_terms(std::uint64_t count, const SumOptions& opt, Term&& term) {
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  auto partials = detail::map_chunks<std::complex<double>>(chunks, opt.exec.jobs, [&](std::size_t ci) {
    const std::uint64_t lo = ci * kChunk;
    const std::uint64_t hi = std::min<std::uint64_t>(count, lo + kChunk);
    ComplexSum acc;
    if (opt.reverse)
      for (std::uint64_t i = hi; i-- > lo;) acc += term(i);
    else
      for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
    return acc.value();
  });
  ComplexSum total;
  if (opt.reverse)
    for (std::size_t i = partials.size(); i-- > 0;) total += partials[i];
  else
    for (const auto& p : partials) total += p;
  return total.value();
}

void finish(SumEval& ev) {
  if (ev.bound && *ev.bound > 0) ev.ratio = std::abs(ev.value) / *ev.bound;
}

std::uint64_t checked_product(std::initializer_list<std::uint64_t> xs, std::uint64_t cap, const char* what) {
  u128 p = 1;
  for (auto x : xs) {
    p *= x;
    if (p > cap)
      throw Error(ErrorCode::RangeTooLarge, std::string(what) + " exceeds the cap of " + std::to_string(cap));
  }
  return static_cast<std::uint64_t>(p);
}

}  // namespace

unsigned k_of(const Rational& c, const Rational& theta, const Rational& delta) {
  if (theta <= 0 || delta <= 0) throw Error(ErrorCode::InvalidArgument, "theta and delta must be positive");
  Rational v = c + delta / theta;
  v.canonicalize();
  return static_cast<unsigned>(floor(v).get_ui()) + 1;
}

Rational rho_of(unsigned k, const Rational& epsilon) {
  if (k < 3) throw Error(ErrorCode::InvalidArgument, "rho needs k >= 3, got k = " + std::to_string(k));
  if (epsilon < 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
  if (epsilon >= Rational(k - 2))
    throw Error(ErrorCode::NonPositiveRho, "epsilon >= k - 2 leaves no positive rho");
  const long kk = k;
  Rational r = (Rational(kk - 2) - epsilon) / Rational(kk * (kk + 1) * (2 * kk - 1));
  r.canonicalize();
  return r;
}

VinogradovParams vinogradov_params(const RationalExponent& c, const Rational& theta, const Rational& delta,
                                   const Rational& epsilon) {
  VinogradovParams p;
  p.c = c;
  p.theta = theta;
  p.delta = delta;
  p.epsilon = epsilon;
  p.k = k_of(c.value(), theta, delta);
  p.rho = rho_of(p.k, epsilon);
  return p;
}

std::string to_string(WeightKind w) {
  switch (w) {
    case WeightKind::Unit: return "unit";
    case WeightKind::Interval: return "interval";
    case WeightKind::RandomSign: return "random";
  }
  return "?";
}

WeightKind parse_weight_kind(std::string_view text) {
  if (text == "unit") return WeightKind::Unit;
  if (text == "interval") return WeightKind::Interval;
  if (text == "random") return WeightKind::RandomSign;
  throw Error(ErrorCode::InvalidArgument, "unknown weights '" + std::string(text) + "' (unit, interval, random)");
}

std::string to_string(SumKind k) {
  switch (k) {
    case SumKind::Weyl: return "weyl";
    case SumKind::Prime: return "prime";
    case SumKind::Trilinear: return "trilinear";
    case SumKind::Triple: return "triple";
  }
  return "?";
}

SumEval weyl_sum(const RationalExponent& c, const Rational& theta, const Rational& delta, std::uint64_t N,
                 const Rational& epsilon, const SumOptions& opt, const Caps& caps) {
  if (N < 2) throw Error(ErrorCode::InvalidArgument, "N must be at least 2");
  WeylParams p;
  p.vino = vinogradov_params(c, theta, delta, epsilon);
  p.N = N;
  const BigInt zf = floor_rational_power(BigInt(static_cast<unsigned long>(N)), theta, caps);
  if (zf > BigInt(static_cast<unsigned long>(caps.weyl_terms)))
    throw Error(ErrorCode::RangeTooLarge, "N^theta exceeds the cap of " + std::to_string(caps.weyl_terms) + " terms");
  p.z_floor = zf.get_ui();

  const BigInt bigN(static_cast<unsigned long>(N));
  SumEval ev;
  ev.kind = SumKind::Weyl;
  ev.terms = p.z_floor;
  ev.value = sum_terms(p.z_floor, opt, [&](std::uint64_t i) {
    const BigInt z(static_cast<unsigned long>(p.z_floor + 1 + i));
    return e_of_frac(frac_phase(z, c, bigN, delta, kPhaseTol, caps).value);
  });
  ev.trivial_bound = static_cast<double>(ev.terms);
  ev.bound = std::pow(static_cast<double>(N), to_double(theta * (1 - p.vino.rho)));
  ev.params = p;
  finish(ev);
  return ev;
}

SumEval prime_expsum(std::uint64_t x, const RationalExponent& c, std::int64_t h, std::uint64_t d,
                     const SumOptions& opt, const Caps& caps) {
  if (h == 0) throw Error(ErrorCode::InvalidArgument, "h must be non-zero");
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "d must be positive");
  const std::vector<std::uint64_t> ps = primes_in(0, x, opt.exec, caps);
  const std::uint64_t habs = h < 0 ? 0 - static_cast<std::uint64_t>(h) : static_cast<std::uint64_t>(h);

  SumEval ev;
  ev.kind = SumKind::Prime;
  ev.params = PrimeSumParams{x, c, h, d};
  ev.terms = ps.size();
  ev.value = sum_terms(ps.size(), opt, [&](std::uint64_t i) {
    return e_of_frac(frac_scaled_pow(BigInt(static_cast<unsigned long>(ps[i])), c, habs, d, kPhaseTol, caps).value);
  });
  if (h < 0) ev.value = std::conj(ev.value);
  ev.trivial_bound = static_cast<double>(ev.terms);
  if (c.value() >= Rational(11, 5) && x >= 2)
    ev.bound = std::pow(static_cast<double>(x), 1.0 - to_double(regime_constants(c.value()).sigma));
  finish(ev);
  return ev;
}

TrilinearBound trilinear_bound(double D, double L, double M, double X) {
  if (!(D >= 1 && L >= 1 && M >= 1)) throw Error(ErrorCode::InvalidArgument, "D, L, M must be at least 1");
  const double dl = D * L;
  TrilinearBound b;
  b.value = dl * M * (1.0 / std::sqrt(dl) + std::cbrt(std::sqrt(X / (dl * M * M)))) * std::log(2.0 * dl);
  b.x_at_least_dl = X >= dl;
  return b;
}

SumEval trilinear_sum(std::uint64_t D, std::uint64_t M, std::uint64_t L, std::uint64_t h, const RationalExponent& c,
                      const WeightSpec& weights, const SumOptions& opt, const Caps& caps) {
  if (D == 0 || M == 0 || L == 0) throw Error(ErrorCode::InvalidArgument, "D, M, L must be positive");
  if (h == 0) throw Error(ErrorCode::InvalidArgument, "h must be positive");
  const std::uint64_t terms = checked_product({D, M, L}, caps.trilinear_terms, "D*M*L");

  std::vector<int> cd(D, 1), am(M, 1), bl(L, 1);
  if (weights.kind == WeightKind::RandomSign) {
    std::mt19937_64 gen(weights.seed);
    for (auto* w : {&cd, &am, &bl})
      for (int& s : *w) s = (gen() >> 63) ? -1 : 1;
  } else if (weights.kind == WeightKind::Interval) {
    const std::uint64_t top = (3 * L + 1) / 2;  // ceil(3L/2)
    for (std::uint64_t i = 0; i < L; ++i) bl[i] = (L + 1 + i <= top) ? 1 : 0;
  }

  TrilinearParams p;
  p.D = D;
  p.M = M;
  p.L = L;
  p.h = h;
  p.c = c;
  p.weights = weights;
  const double cd_ = c.to_double();
  p.X = static_cast<double>(h) / static_cast<double>(D) * std::pow(static_cast<double>(L), cd_) *
        std::pow(static_cast<double>(M), cd_);
  const TrilinearBound tb = trilinear_bound(static_cast<double>(D), static_cast<double>(L), static_cast<double>(M), p.X);
  p.x_at_least_dl = tb.x_at_least_dl;

  SumEval ev;
  ev.kind = SumKind::Trilinear;
  ev.terms = terms;
  ev.value = sum_terms(terms, opt, [&](std::uint64_t i) -> std::complex<double> {
    const std::uint64_t li = i % L, mi = (i / L) % M, di = i / (L * M);
    const int w = cd[di] * am[mi] * bl[li];
    if (w == 0) return {0.0, 0.0};
    const BigInt lm = BigInt(static_cast<unsigned long>(L + 1 + li)) * static_cast<unsigned long>(M + 1 + mi);
    return static_cast<double>(w) * e_of_frac(frac_scaled_pow(lm, c, h, D + 1 + di, kPhaseTol, caps).value);
  });
  std::uint64_t nonzero_b = 0;
  for (int b : bl) nonzero_b += b != 0;
  ev.trivial_bound = static_cast<double>(D) * static_cast<double>(M) * static_cast<double>(nonzero_b);
  ev.bound = tb.value;
  ev.params = p;
  finish(ev);
  return ev;
}

SumEval triple_sum(std::uint64_t x, std::uint64_t D, std::uint64_t H, const RationalExponent& c,
                   const SumOptions& opt, const Caps& caps) {
  if (x < 2) throw Error(ErrorCode::InvalidArgument, "x must be at least 2");
  if (D == 0) throw Error(ErrorCode::InvalidArgument, "D must be positive");
  if (x > caps.mangoldt_limit / 2)
    throw Error(ErrorCode::RangeTooLarge, "2x exceeds the Mangoldt cap of " + std::to_string(caps.mangoldt_limit));
  checked_product({H, D, x}, caps.triple_evaluations, "H*D*x");

  const MangoldtTable table = mangoldt_table(2 * x, opt.exec, caps);
  const auto entries = table.range(x, 2 * x);
  std::vector<double> lambda(entries.size());
  ComplexSum lambda_total;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    lambda[i] = std::log(static_cast<double>(entries[i].p));
    lambda_total += lambda[i];
  }

  // Pair index -> (h, d) in the chosen loop order.
  const std::uint64_t pairs = H * D;
  auto pair_of = [&](std::uint64_t i) {
    return opt.swap_loops ? std::pair{1 + i % H, D + 1 + i / H} : std::pair{1 + i / D, D + 1 + i % D};
  };
  SumOptions inner_opt = opt;
  inner_opt.exec.jobs = 1;
  auto values = detail::map_chunks<double>(pairs, opt.exec.jobs, [&](std::size_t i) {
    const auto [h, d] = pair_of(i);
    const auto inner = sum_terms(entries.size(), inner_opt, [&](std::uint64_t j) {
      const BigInt n(static_cast<unsigned long>(entries[j].n));
      return lambda[j] * e_of_frac(frac_scaled_pow(n, c, h, d, kPhaseTol, caps).value);
    });
    return std::abs(inner);
  });
  ComplexSum total;
  if (opt.reverse)
    for (std::size_t i = values.size(); i-- > 0;) total += values[i];
  else
    for (double v : values) total += v;

  SumEval ev;
  ev.kind = SumKind::Triple;
  ev.params = TripleParams{x, D, H, c};
  ev.terms = pairs * entries.size();
  ev.value = {total.value().real(), 0.0};
  ev.trivial_bound = static_cast<double>(pairs) * lambda_total.value().real();
  const double lx = std::log(static_cast<double>(x));
  ev.bound = static_cast<double>(D) * static_cast<double>(x) / (lx * lx * lx);
  finish(ev);
  return ev;
}

std::uint64_t triple_default_H(std::uint64_t x, std::uint64_t D) {
  if (x < 2) throw Error(ErrorCode::InvalidArgument, "x must be at least 2");
  const double lx = std::log(static_cast<double>(x));
  return static_cast<std::uint64_t>(std::ceil(static_cast<double>(D) * lx * lx * lx));
}

}  // namespace psc
