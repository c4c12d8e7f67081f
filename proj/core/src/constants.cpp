#include "psc/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "psc/error.hpp"
#include "psc/expsum.hpp"

namespace psc {

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational from_double(double v) {
  // Exact binary value of v.
  Rational r(v);
  r.canonicalize();
  return r;
}

Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  m.canonicalize();
  return m;
}

// The eleven inequalities as lhs < rhs in (c, theta, alpha).
using Inequality = std::function<std::pair<Rational, Rational>(const Rational&, const Rational&, const Rational&)>;

const std::array<std::pair<const char*, Inequality>, 11>& level_system() {
  static const std::array<std::pair<const char*, Inequality>, 11> sys{{
      {"i", [](const Rational& c, const Rational& t, const Rational& a) { return std::pair{Rational(2 * t + 2 * a), c}; }},
      {"ii", [](const Rational& c, const Rational& t, const Rational& a) { return std::pair{Rational(c + 5 * t + 2 * a), q(2)}; }},
      {"iii", [](const Rational& c, const Rational& t, const Rational&) { return std::pair{Rational(q(365, 3) + 32 * c + 147 * t), q(174)}; }},
      {"iv", [](const Rational& c, const Rational& t, const Rational&) { return std::pair{Rational(q(8, 3) + c + 2 * t), q(4)}; }},
      {"v", [](const Rational& c, const Rational& t, const Rational&) { return std::pair{Rational(2 + c + 4 * t), q(4)}; }},
      {"vi", [](const Rational&, const Rational& t, const Rational& a) { return std::pair{Rational(1 + t - 2 * a), q(1)}; }},
      {"vii", [](const Rational&, const Rational& t, const Rational& a) { return std::pair{Rational(1 + t / 2 - a), q(1)}; }},
      {"viii", [](const Rational&, const Rational& t, const Rational&) { return std::pair{Rational(q(2, 3) + t), q(1)}; }},
      {"ix", [](const Rational& c, const Rational& t, const Rational&) { return std::pair{Rational(1 - c / 2 + 3 * t / 2), q(1)}; }},
      {"x", [](const Rational& c, const Rational& t, const Rational& a) { return std::pair{Rational(2 * t + (1 + a) / 2), c}; }},
      {"xi", [](const Rational& c, const Rational& t, const Rational& a) { return std::pair{Rational(2 * c + 6 * t + a), q(3)}; }},
  }};
  return sys;
}

// Intersects `set` with {theta : p + s theta < 0}.
void restrict(OpenInterval& iv, const Rational& p, const Rational& s) {
  if (sgn(s) == 0) {
    if (p >= 0) iv.hi = iv.lo;  // empty
    return;
  }
  Rational root = -p / s;
  root.canonicalize();
  if (sgn(s) > 0)
    iv.hi = std::min(iv.hi, root);
  else
    iv.lo = std::max(iv.lo, root);
}

bool all_hold(const std::vector<InequalityReport>& reps) {
  return std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.holds; });
}

void check_table_R(unsigned R) {
  if (R < 8 || R > 19) throw Error(ErrorCode::InvalidR, "R must lie in 8..19, got " + std::to_string(R));
}

}  // namespace

Rational greaves_delta_exact(unsigned R) {
  switch (R) {
    case 0:
    case 1:
      throw Error(ErrorCode::InvalidR, "delta_R is defined for R >= 2");
    case 2: return q(44560, 1000000);
    case 3: return q(74267, 1000000);
    case 4: return q(103974, 1000000);
    default: return q(124820, 1000000);
  }
}

double greaves_delta(unsigned R) { return to_double(greaves_delta_exact(R)); }

unsigned greaves_min_R(double rho) {
  if (!(rho > 0) || !std::isfinite(rho)) throw Error(ErrorCode::InvalidArgument, "rho must be positive and finite");
  for (unsigned R = 2;; ++R)
    if (static_cast<double>(R) - greaves_delta(R) > rho) return R;
}

InequalityReport make_report(std::string id, Rational lhs, Rational rhs) {
  InequalityReport r;
  r.id = std::move(id);
  r.slack = rhs - lhs;
  r.slack.canonicalize();
  r.holds = r.slack > kStrictness;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

Rational LevelParams::alpha() const {
  Rational a = theta + kappa;
  a.canonicalize();
  return std::max(a, q(1, 20));
}

std::vector<InequalityReport> level_inequalities(const LevelParams& params) {
  if (params.theta <= 0 || params.kappa <= 0)
    throw Error(ErrorCode::InvalidArgument, "theta and kappa must be positive");
  const Rational alpha = params.alpha();
  std::vector<InequalityReport> out;
  for (const auto& [id, ineq] : level_system()) {
    auto [lhs, rhs] = ineq(params.c, params.theta, alpha);
    out.push_back(make_report(id, lhs, rhs));
  }
  return out;
}

ThetaFeasibility feasible_thetas(const Rational& c, unsigned R, const Rational& kappa, bool greaves_degree) {
  if (R < 2) throw Error(ErrorCode::InvalidR, "R must be at least 2");
  if (kappa <= 0) throw Error(ErrorCode::InvalidArgument, "kappa must be positive");

  OpenInterval range{q(0), q(1, R)};
  if (greaves_degree) {
    Rational lo = c / (Rational(R) - greaves_delta_exact(R));
    lo.canonicalize();
    range = {lo, q(1)};
  }

  // alpha = 1/20 while theta + kappa <= 1/20, theta + kappa beyond.
  Rational knee = q(1, 20) - kappa;
  knee.canonicalize();
  struct Piece {
    OpenInterval iv;
    Rational alpha0, alpha1;  // alpha = alpha0 + alpha1 theta
  };
  std::vector<Piece> pieces{
      {{range.lo, std::min(range.hi, knee)}, q(1, 20), q(0)},
      {{std::max(range.lo, knee), range.hi}, kappa, q(1)},
  };

  ThetaFeasibility out;
  for (auto& piece : pieces) {
    for (const auto& [id, ineq] : level_system()) {
      auto g = [&](const Rational& t) {
        auto [lhs, rhs] = ineq(c, t, Rational(piece.alpha0 + piece.alpha1 * t));
        return Rational(lhs - rhs);
      };
      const Rational p = g(q(0));
      const Rational s = g(q(1)) - p;
      restrict(piece.iv, p, s);
    }
    if (piece.iv.lo < piece.iv.hi) out.intervals.push_back(piece.iv);
  }

  // Widest interval's midpoint, confirmed against the direct check.
  const OpenInterval* best = nullptr;
  for (const auto& iv : out.intervals)
    if (!best || iv.hi - iv.lo > best->hi - best->lo) best = &iv;
  if (best) {
    const Rational mid = midpoint(best->lo, best->hi);
    if (mid > 0 && all_hold(level_inequalities({c, mid, kappa}))) out.witness = mid;
  }
  return out;
}

MaxCResult max_c_feasible(unsigned R, double tol, bool greaves_degree) {
  check_table_R(R);
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  MaxCResult out;
  out.R = R;
  out.greaves_degree = greaves_degree;

  auto feasible = [&](const Rational& c) { return feasible_thetas(c, R, kKappaGuard, greaves_degree).feasible(); };
  Rational lo = 1 + kKappaGuard;
  Rational hi = q(2);
  lo.canonicalize();
  if (!feasible(lo)) return out;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2;
  }
  const Rational eps = from_double(tol);
  while (hi - lo > eps) {
    const Rational mid = midpoint(lo, hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  out.feasible = true;
  out.c_lo = lo;
  out.c_hi = hi;
  out.c_max = to_double(lo);
  return out;
}

std::vector<AdmissiblePair> admissible_pairs() {
  static const std::array<std::pair<unsigned, long>, 12> raw{{{8, 10521},
                                                             {9, 11056},
                                                             {10, 11308},
                                                             {11, 11494},
                                                             {12, 11649},
                                                             {13, 11780},
                                                             {14, 11891},
                                                             {15, 11988},
                                                             {16, 12073},
                                                             {17, 12148},
                                                             {18, 12214},
                                                             {19, 12273}}};
  std::vector<AdmissiblePair> out;
  for (const auto& [R, c] : raw) out.push_back({R, q(c, 10000)});
  return out;
}

RegimeConstants regime_constants(const Rational& c) {
  if (c <= 1) throw Error(ErrorCode::OutOfRange, "regime constants need c > 1");
  RegimeConstants r;
  r.c = c;
  r.coeff = c < 3 ? 179 : 88;
  Rational denom = 16 * c * c + Rational(r.coeff) * c - q(115, 100) / c;
  r.sigma = 1 / denom;
  r.sigma.canonicalize();
  r.beta = Rational(r.coeff == 179 ? 47 : 20) * r.sigma;
  r.c1 = c + r.sigma;
  r.c2 = c - 1 + 3 * r.sigma;
  r.beta.canonicalize();
  r.c1.canonicalize();
  r.c2.canonicalize();
  return r;
}

RBound r_bound(const Rational& c) {
  if (c < q(11, 5)) throw Error(ErrorCode::OutOfRange, "the R bound applies for c >= 11/5");
  const RegimeConstants k = regime_constants(c);
  RBound out;
  out.c = c;
  out.real_bound = 16 * c * c * c + Rational(k.coeff) * c * c;
  out.c_over_sigma = c / k.sigma + q(115, 100);
  out.real_bound.canonicalize();
  out.c_over_sigma.canonicalize();
  out.identity_holds = out.real_bound == out.c_over_sigma;
  out.integer_R = greaves_min_R(to_double(c / k.sigma) + 1e-9);
  return out;
}

std::string to_string(RegimeInequality id) {
  switch (id) {
    case RegimeInequality::C1: return "c1";
    case RegimeInequality::C2A: return "c2a";
    case RegimeInequality::C2B: return "c2b";
    case RegimeInequality::BetaCap: return "beta-cap";
  }
  return "?";
}

RegimeInequality parse_regime_inequality(std::string_view text) {
  if (text == "c1") return RegimeInequality::C1;
  if (text == "c2a") return RegimeInequality::C2A;
  if (text == "c2b") return RegimeInequality::C2B;
  if (text == "beta-cap") return RegimeInequality::BetaCap;
  throw Error(ErrorCode::InvalidArgument, "unknown inequality '" + std::string(text) + "' (c1, c2a, c2b, beta-cap)");
}

InequalityReport regime_inequality(RegimeInequality id, const Rational& c) {
  const RegimeConstants k = regime_constants(c);
  const Rational& s = k.sigma;
  const Rational& b = k.beta;
  switch (id) {
    case RegimeInequality::C1: {
      const Rational t = q(1, 2) - b;
      const Rational& c1 = k.c1;
      Rational expr = (c1 * t * t * t - t * t * t * t) / ((c1 + t) * (c1 + 1 - 2 * b) * (2 * c1 + t));
      return make_report(to_string(id), s, expr);
    }
    case RegimeInequality::C2A: {
      const Rational& c2 = k.c2;
      Rational expr = (q(8, 27) * c2 - q(16, 81)) / ((c2 + q(4, 3)) * (c2 + 2) * (2 * c2 + 2));
      return make_report(to_string(id), 2 * s, expr);
    }
    case RegimeInequality::C2B: {
      const Rational& c2 = k.c2;
      const Rational u = 1 - 2 * b;
      Rational expr =
          (c2 * u * u * u - u * u * u * u) / ((c2 + 2 - 4 * b) * (c2 + 3 - 6 * b) * (2 * c2 + 3 - 6 * b));
      return make_report(to_string(id), 2 * s, expr);
    }
    case RegimeInequality::BetaCap:
      return make_report(to_string(id), b, q(1, 10));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown inequality");
}

std::vector<InequalityReport> regime_inequalities(const Rational& c) {
  return {regime_inequality(RegimeInequality::C1, c), regime_inequality(RegimeInequality::C2A, c),
          regime_inequality(RegimeInequality::C2B, c), regime_inequality(RegimeInequality::BetaCap, c)};
}

ThresholdResult threshold(RegimeInequality id, const Rational& lo, const Rational& hi, const Rational& tol) {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "threshold needs lo < hi");
  if (tol <= 0) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  if (lo <= 1) throw Error(ErrorCode::OutOfRange, "threshold search needs c > 1");

  constexpr int kScan = 100;
  std::vector<Rational> grid;
  std::vector<bool> holds;
  for (int i = 0; i < kScan; ++i) {
    Rational ci = lo + (hi - lo) * Rational(i, kScan - 1);
    ci.canonicalize();
    holds.push_back(regime_inequality(id, ci).holds);
    grid.push_back(std::move(ci));
  }

  ThresholdResult out;
  out.id = id;
  int first_rise = -1;
  for (int i = 1; i < kScan; ++i) {
    if (holds[i] != holds[i - 1]) ++out.sign_changes;
    if (first_rise < 0 && !holds[i - 1] && holds[i]) first_rise = i;
  }
  if (first_rise < 0)
    throw Error(ErrorCode::NoCrossing, "inequality " + to_string(id) + " does not start to hold on [" +
                                           to_fraction_string(lo) + ", " + to_fraction_string(hi) + "]");
  out.multi_crossing = out.sign_changes > 1;

  Rational a = grid[first_rise - 1], b = grid[first_rise];
  while (b - a > tol) {
    const Rational mid = midpoint(a, b);
    (regime_inequality(id, mid).holds ? b : a) = mid;
  }
  out.bracket_lo = a;
  out.bracket_hi = b;
  out.c = to_double(b);
  return out;
}

F1F2 f1_f2(const Rational& t, const Rational& c, const Rational& epsilon) {
  const RegimeConstants k = regime_constants(c);
  const Rational& c1 = k.c1;
  const Rational& c2 = k.c2;
  const Rational& e = epsilon;
  const Rational t3 = t * t * t;
  const Rational t4 = t3 * t;
  F1F2 out;
  out.f1 = (c1 * t3 - (1 + e) * t4) / ((c1 + t) * (c1 + 2 * t) * (2 * c1 + t));
  out.f2 = ((c2 + 2 * e) * t3 - (1 + e) * t4) / ((c2 + 2 * t + 2 * e) * (c2 + 3 * t + 2 * e) * (2 * c2 + 3 * t + 4 * e));
  out.f1.canonicalize();
  out.f2.canonicalize();
  return out;
}

namespace {

// Scans theta in [theta_lo, theta_hi] and, for each theta, delta over
// [delta_lo(theta), delta_hi(theta)] restricted to delta > 0.
MarginWindow scan_window(const Rational& c, const Rational& eps, const Rational& theta_lo, const Rational& theta_hi,
                         const Rational& target, const std::function<OpenInterval(const Rational&)>& delta_range,
                         unsigned theta_steps, unsigned delta_steps) {
  MarginWindow w;
  w.theta_lo = theta_lo;
  w.theta_hi = theta_hi;
  w.target = target;
  bool first = true;
  Rational worst;
  for (unsigned i = 0; i <= theta_steps; ++i) {
    Rational theta = theta_lo + (theta_hi - theta_lo) * Rational(i, theta_steps);
    theta.canonicalize();
    const OpenInterval dr = delta_range(theta);
    for (unsigned j = 0; j <= delta_steps; ++j) {
      Rational delta = dr.lo + (dr.hi - dr.lo) * Rational(j, delta_steps);
      delta.canonicalize();
      if (delta <= 0) continue;
      ++w.points;
      const unsigned k = k_of(c, theta, delta);
      Rational margin;
      if (k < 3 || Rational(k - 2) <= eps) {
        margin = -target;  // no admissible rho: count as a full miss
      } else {
        margin = theta * rho_of(k, eps) - target;
      }
      if (first || margin < worst) {
        first = false;
        worst = margin;
        w.worst_theta = theta;
        w.worst_delta = delta;
        w.worst_k = k;
      }
    }
  }
  w.worst_margin = first ? 0.0 : to_double(worst);
  w.passes = !first && worst >= 0;
  return w;
}

}  // namespace

MarginReport margin_verify(const Rational& c, const Rational& epsilon, unsigned theta_steps, unsigned delta_steps) {
  if (c < q(11, 5)) throw Error(ErrorCode::OutOfRange, "margin verification needs c >= 11/5");
  if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (theta_steps == 0 || delta_steps == 0) throw Error(ErrorCode::InvalidArgument, "grid needs at least one step");

  MarginReport r;
  r.c = c;
  r.epsilon = epsilon;
  r.regime = regime_constants(c);
  const Rational& s = r.regime.sigma;
  const Rational& b = r.regime.beta;

  // Type I: 1/2 - beta <= theta <= 1, (1 - theta) c - sigma <= delta <= (1 - theta) c + sigma.
  r.type1 = scan_window(
      c, epsilon, q(1, 2) - b, q(1), s + epsilon,
      [&](const Rational& t) {
        const Rational mid = (1 - t) * c;
        return OpenInterval{mid - s, mid + s};
      },
      theta_steps, delta_steps);

  // Type II: 2/3 <= theta <= 1 - 2 beta,
  // (1 - theta)(c - 1) - sigma <= delta <= (1 - theta)(c - 1) + 3 sigma + 2 eps.
  r.type2 = scan_window(
      c, epsilon, q(2, 3), 1 - 2 * b, 2 * s + 3 * epsilon,
      [&](const Rational& t) {
        const Rational mid = (1 - t) * (c - 1);
        return OpenInterval{mid - s, mid + 3 * s + 2 * epsilon};
      },
      theta_steps, delta_steps);

  const Rational f1_low = f1_f2(q(1, 2) - b, c, epsilon).f1;
  const Rational f2_low = std::min(f1_f2(q(2, 3), c, epsilon).f2, f1_f2(1 - 2 * b, c, epsilon).f2);
  r.f1_minorant_margin = to_double(f1_low - (s + epsilon));
  r.f2_minorant_margin = to_double(f2_low - (2 * s + 3 * epsilon));
  return r;
}

}  // namespace psc
