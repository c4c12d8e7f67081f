#pragma once

// Exact evaluation of the explicit constants and inequality systems behind
// the almost-prime results for floor(p^c). Everything with rational inputs is
// decided in exact rational arithmetic.

#include <optional>
#include <string>
#include <vector>

#include "psc/rational.hpp"

namespace psc {

// Greaves' sieve constants delta_R. Errors: InvalidR (R < 2).
Rational greaves_delta_exact(unsigned R);
double greaves_delta(unsigned R);

// Least R >= 2 with R - delta_R > rho. Errors: InvalidArgument (rho <= 0).
unsigned greaves_min_R(double rho);

inline const Rational kStrictness{1, 1000000000000};  // 1e-12

struct InequalityReport {
  std::string id;
  Rational lhs;
  Rational rhs;
  Rational slack;  // rhs - lhs
  bool holds = false;  // slack > 1e-12
};

InequalityReport make_report(std::string id, Rational lhs, Rational rhs);

// (c, theta, kappa) for the eleven level-of-distribution inequalities, with
// alpha = max(1/20, theta + kappa) and u0 = x^alpha.
struct LevelParams {
  Rational c;
  Rational theta;
  Rational kappa;

  Rational alpha() const;
};

// Items i..xi, in order.
std::vector<InequalityReport> level_inequalities(const LevelParams& params);

struct OpenInterval {
  Rational lo;
  Rational hi;
};

struct ThetaFeasibility {
  std::vector<OpenInterval> intervals;  // theta values satisfying all eleven inequalities
  std::optional<Rational> witness;      // verified by level_inequalities with every slack > 1e-12
  bool feasible() const { return witness.has_value(); }
};

// Every inequality is affine in theta on each of the two pieces of alpha, so
// the feasible theta set is an intersection of half-lines. By default theta
// ranges over (0, 1/R). With `greaves_degree` the degree condition
// c/theta < R - delta_R is imposed instead, i.e. theta in (c/(R - delta_R), 1).
ThetaFeasibility feasible_thetas(const Rational& c, unsigned R, const Rational& kappa, bool greaves_degree = false);

struct MaxCResult {
  unsigned R = 0;
  bool greaves_degree = false;
  bool feasible = false;  // false when no c > 1 works at all
  double c_max = 0.0;     // supremum within +-tol
  Rational c_lo;          // largest verified-feasible c found
  Rational c_hi;          // smallest verified-infeasible c found
};

inline const Rational kKappaGuard{1, 1000000000};  // the kappa -> 0+ limit

// Errors: InvalidR (R outside 8..19), InvalidArgument (tol <= 0).
MaxCResult max_c_feasible(unsigned R, double tol, bool greaves_degree = false);

struct AdmissiblePair {
  unsigned R;
  Rational c_R;
};

// The twelve published (R, c_R) pairs, R = 8..19.
std::vector<AdmissiblePair> admissible_pairs();

struct RegimeConstants {
  Rational c;
  unsigned coeff = 179;  // 179 for c < 3, 88 for c >= 3
  Rational sigma;        // 1 / (16c^2 + coeff c - 1.15/c)
  Rational beta;         // 47 sigma or 20 sigma
  Rational c1;           // c + sigma
  Rational c2;           // c - 1 + 3 sigma
};

// Errors: OutOfRange (c <= 1).
RegimeConstants regime_constants(const Rational& c);

struct RBound {
  Rational c;
  Rational real_bound;      // 16c^3 + coeff c^2
  Rational c_over_sigma;    // c / sigma + 1.15
  bool identity_holds = false;
  unsigned integer_R = 0;   // greaves_min_R(c/sigma + 1e-9)
};

// Errors: OutOfRange (c < 11/5).
RBound r_bound(const Rational& c);

enum class RegimeInequality {
  C1,       // Type I lead term at t = 1/2 - beta exceeds sigma
  C2A,      // Type II term at t = 2/3 exceeds 2 sigma
  C2B,      // Type II term at t = 1 - 2 beta exceeds 2 sigma
  BetaCap,  // beta < 0.1
};

std::string to_string(RegimeInequality id);
RegimeInequality parse_regime_inequality(std::string_view text);

// Reported in the form lhs < rhs: sigma (or 2 sigma) on the left, the
// rational expression on the right; beta < 1/10 for the cap.
InequalityReport regime_inequality(RegimeInequality id, const Rational& c);
std::vector<InequalityReport> regime_inequalities(const Rational& c);

struct ThresholdResult {
  RegimeInequality id = RegimeInequality::C1;
  double c = 0.0;  // least c (within tol) where the inequality starts to hold
  Rational bracket_lo;
  Rational bracket_hi;
  bool multi_crossing = false;
  unsigned sign_changes = 0;
};

// Errors: InvalidArgument (lo >= hi, tol <= 0), NoCrossing.
ThresholdResult threshold(RegimeInequality id, const Rational& lo, const Rational& hi, const Rational& tol);

struct F1F2 {
  Rational f1;
  Rational f2;
};

// f1(t) = (c1 t^3 - (1+eps) t^4) / ((c1+t)(c1+2t)(2c1+t)),
// f2(t) = ((c2+2eps) t^3 - (1+eps) t^4) / ((c2+2t+2eps)(c2+3t+2eps)(2c2+3t+4eps)).
F1F2 f1_f2(const Rational& t, const Rational& c, const Rational& epsilon);

struct MarginWindow {
  Rational theta_lo, theta_hi;
  Rational target;             // sigma + eps (Type I) or 2 sigma + 3 eps (Type II)
  std::uint64_t points = 0;    // grid points with delta > 0
  double worst_margin = 0.0;   // min over the grid of theta * rho - target
  Rational worst_theta, worst_delta;
  unsigned worst_k = 0;
  bool passes = false;         // worst_margin >= 0
};

struct MarginReport {
  Rational c;
  Rational epsilon;
  RegimeConstants regime;
  MarginWindow type1;
  MarginWindow type2;
  double f1_minorant_margin = 0.0;  // f1(1/2 - beta) - (sigma + eps)
  double f2_minorant_margin = 0.0;  // min(f2(2/3), f2(1 - 2 beta)) - (2 sigma + 3 eps)
  bool passes() const { return type1.passes && type2.passes; }
};

inline constexpr unsigned kMarginThetaSteps = 200;
inline constexpr unsigned kMarginDeltaSteps = 40;

// Errors: OutOfRange (c < 11/5), InvalidArgument (eps <= 0).
MarginReport margin_verify(const Rational& c, const Rational& epsilon, unsigned theta_steps = kMarginThetaSteps,
                           unsigned delta_steps = kMarginDeltaSteps);

}  // namespace psc
