#include <gtest/gtest.h>

#include <random>

#include "psc/constants.hpp"
#include "psc/error.hpp"

using namespace psc;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const InequalityReport& find(const std::vector<InequalityReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.id == id) return r;
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST(GreavesDelta, Values) {
  EXPECT_EQ(greaves_delta_exact(2), q("0.044560"));
  EXPECT_EQ(greaves_delta_exact(3), q("0.074267"));
  EXPECT_EQ(greaves_delta_exact(4), q("0.103974"));
  EXPECT_EQ(greaves_delta_exact(5), q("0.124820"));
  EXPECT_EQ(greaves_delta_exact(100), q("0.124820"));
  EXPECT_DOUBLE_EQ(greaves_delta(2), 0.04456);
  try {
    greaves_delta_exact(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidR);
  }
}

TEST(GreavesDelta, MinR) {
  EXPECT_EQ(greaves_min_R(4.8), 5u);
  EXPECT_EQ(greaves_min_R(4.9), 6u);
  EXPECT_EQ(greaves_min_R(0.5), 2u);
  EXPECT_THROW(greaves_min_R(0.0), Error);
}

TEST(LevelInequalities, Examples) {
  const auto ok = level_inequalities({q("1.0521"), q("0.12"), q("1e-4")});
  ASSERT_EQ(ok.size(), 11u);
  for (const auto& r : ok) EXPECT_TRUE(r.holds) << r.id;

  const auto bad = level_inequalities({q("1.3"), q("0.12"), q("1e-4")});
  const auto& iii = bad[2];
  EXPECT_FALSE(iii.holds);
  EXPECT_NEAR(to_double(iii.lhs), 180.9067, 1e-3);
  EXPECT_EQ(iii.rhs, 174);
}

TEST(LevelInequalities, SixthHoldsWhenAlphaIsThetaPlusKappa) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational theta(static_cast<long>(rng() % 1000 + 50), 1000);
    const Rational kappa(static_cast<long>(rng() % 1000 + 1), 100000);
    EXPECT_TRUE(level_inequalities({q("1.1"), theta, kappa})[5].holds);
  }
}

TEST(FeasibleThetas, TablePairsWithWitness) {
  const auto pairs = admissible_pairs();
  ASSERT_EQ(pairs.size(), 12u);
  EXPECT_EQ(pairs.front().R, 8u);
  EXPECT_EQ(pairs.front().c_R, q("1.0521"));
  EXPECT_EQ(pairs.back().R, 19u);
  EXPECT_EQ(pairs.back().c_R, q("1.2273"));
  for (const auto& p : pairs) {
    const auto f = feasible_thetas(p.c_R, p.R, q("1e-6"));
    ASSERT_TRUE(f.feasible()) << p.R;
    EXPECT_LT(*f.witness, Rational(1, p.R));
    for (const auto& r : level_inequalities({p.c_R, *f.witness, q("1e-6")})) EXPECT_TRUE(r.holds);
  }
}

TEST(MaxC, DefaultModeIsLimitedByFourth) {
  double prev = 0;
  for (unsigned R = 8; R <= 19; ++R) {
    const auto m = max_c_feasible(R, 1e-6);
    EXPECT_TRUE(m.feasible);
    EXPECT_NEAR(m.c_max, 4.0 / 3.0, 1e-5) << R;
    EXPECT_GE(m.c_max, prev - 1e-6);
    EXPECT_LT(m.c_lo, m.c_hi);
    prev = m.c_max;
  }
  EXPECT_GE(max_c_feasible(8, 1e-6).c_max, 1.0521);
  EXPECT_GE(max_c_feasible(19, 1e-6).c_max, 1.2273);
}

TEST(MaxC, GreavesDegreeMode) {
  const auto a = max_c_feasible(8, 1e-6, true);
  const auto b = max_c_feasible(19, 1e-6, true);
  EXPECT_NEAR(a.c_max, 1.03290, 1e-4);
  EXPECT_NEAR(b.c_max, 1.20559, 1e-4);
  EXPECT_GE(a.c_max, 1.03227);  // grid lower bounds
  EXPECT_GE(b.c_max, 1.20516);
}

TEST(MaxC, Errors) {
  EXPECT_THROW(max_c_feasible(7, 1e-6), Error);
  EXPECT_THROW(max_c_feasible(20, 1e-6), Error);
  EXPECT_THROW(max_c_feasible(8, 0), Error);
}

TEST(Regime, Constants) {
  const auto a = regime_constants(Rational(11, 5));
  EXPECT_EQ(a.sigma, Rational(1100, 517789));
  EXPECT_EQ(a.beta, Rational(51700, 517789));
  EXPECT_NEAR(to_double(a.sigma), 0.0021244, 1e-7);
  EXPECT_EQ(a.coeff, 179u);
  const auto b = regime_constants(3);
  EXPECT_EQ(b.sigma, Rational(60, 24457));
  EXPECT_EQ(b.beta, Rational(1200, 24457));
  EXPECT_EQ(b.coeff, 88u);
  EXPECT_EQ(regime_constants(Rational(5, 2)).sigma, Rational(25, 13676));
  EXPECT_THROW(regime_constants(1), Error);
}

TEST(Regime, RBound) {
  const auto a = r_bound(Rational(11, 5));
  EXPECT_EQ(a.real_bound, Rational(129591, 125));
  EXPECT_TRUE(a.identity_holds);
  EXPECT_EQ(a.integer_R, 1036u);
  EXPECT_EQ(r_bound(3).real_bound, 1224);
  EXPECT_EQ(r_bound(Rational(5, 2)).real_bound, Rational(5475, 4));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rational c(static_cast<long>(rng() % 100000 + 220000), 100000);
    const auto r = r_bound(c);
    EXPECT_TRUE(r.identity_holds);
    EXPECT_EQ(r.c_over_sigma, r.real_bound);
  }
  EXPECT_THROW(r_bound(2), Error);
}

TEST(Regime, Inequalities) {
  const auto at = regime_inequalities(q("2.081"));
  EXPECT_TRUE(find(at, "c1").holds);
  const auto hi = regime_inequalities(q("2.198"));
  EXPECT_TRUE(find(hi, "c2a").holds);
  EXPECT_TRUE(find(hi, "c2b").holds);
  EXPECT_TRUE(find(hi, "beta-cap").holds);
  EXPECT_FALSE(find(regime_inequalities(q("2.19")), "c2b").holds);
  // Type I already holds well below 2.081; the crossing sits near 1.419.
  EXPECT_TRUE(find(regime_inequalities(2), "c1").holds);
  EXPECT_FALSE(find(regime_inequalities(q("1.4")), "c1").holds);
  EXPECT_EQ(parse_regime_inequality("c2b"), RegimeInequality::C2B);
  EXPECT_EQ(to_string(RegimeInequality::BetaCap), "beta-cap");
}

TEST(Regime, Thresholds) {
  const Rational tol(1, 1000000);
  EXPECT_NEAR(threshold(RegimeInequality::C1, q("1.1"), q("2.4"), tol).c, 1.41924969, 2e-6);
  EXPECT_NEAR(threshold(RegimeInequality::C2A, q("1.8"), q("2.4"), tol).c, 2.16388550, 2e-6);
  const auto b = threshold(RegimeInequality::C2B, q("1.8"), q("2.4"), tol);
  EXPECT_NEAR(b.c, 2.19726516, 2e-6);
  EXPECT_FALSE(b.multi_crossing);
  EXPECT_LE(b.bracket_hi - b.bracket_lo, tol);
  try {
    threshold(RegimeInequality::C1, q("2.5"), 3, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoCrossing);
  }
  EXPECT_THROW(threshold(RegimeInequality::C1, 3, 2, tol), Error);
}

TEST(F1F2, ShapeOnGrid) {
  const auto z = f1_f2(0, Rational(5, 2), q("0.01"));
  EXPECT_EQ(z.f1, 0);
  EXPECT_EQ(z.f2, 0);

  Rational prev = -1;
  for (int i = 0; i <= 1000; ++i) {
    const auto f = f1_f2(Rational(i, 1000), Rational(5, 2), q("0.01"));
    EXPECT_GT(f.f1, prev) << i;
    prev = f.f1;
  }

  int turns = 0;
  Rational last = f1_f2(0, Rational(11, 5), q("0.01")).f2;
  bool rising = true;
  for (int i = 1; i <= 1000; ++i) {
    const Rational v = f1_f2(Rational(i, 1000), Rational(11, 5), q("0.01")).f2;
    if (rising && v < last) {
      rising = false;
      ++turns;
    } else if (!rising && v > last) {
      ++turns;
    }
    last = v;
  }
  EXPECT_EQ(turns, 1);
}

TEST(Margins, PassAtModerateC) {
  for (const char* c : {"2.2", "2.5"}) {
    const auto m = margin_verify(q(c), q("1e-3"));
    EXPECT_TRUE(m.passes()) << c;
    EXPECT_GT(m.type1.points, 0u);
  }
  const auto m = margin_verify(Rational(5, 2), q("1e-3"));
  EXPECT_NEAR(m.type1.worst_margin, 1.54e-5, 1e-6);
  EXPECT_NEAR(m.type2.worst_margin, 2.86e-3, 1e-5);
}

TEST(Margins, MinorantsNeedSmallEpsilon) {
  for (const char* c : {"2.2", "2.5"}) {
    const auto fine = margin_verify(q(c), q("1e-6"), 10, 4);
    EXPECT_GT(fine.f1_minorant_margin, 0) << c;
    EXPECT_GT(fine.f2_minorant_margin, 0) << c;
    const auto coarse = margin_verify(q(c), q("1e-3"), 10, 4);
    EXPECT_LT(coarse.f2_minorant_margin, 0) << c;
  }
}

TEST(Margins, CoarseEpsilonFailsForLargerC) {
  const auto m3 = margin_verify(3, q("1e-3"));
  EXPECT_FALSE(m3.passes());
  EXPECT_NEAR(m3.type1.worst_margin, -3.57e-4, 1e-5);
  EXPECT_NEAR(m3.type2.worst_margin, -5.02e-4, 1e-5);
  EXPECT_FALSE(margin_verify(5, q("1e-3")).passes());
}

TEST(Margins, TypeOneAtFullTheta) {
  const auto m = margin_verify(Rational(5, 2), q("1e-3"));
  EXPECT_EQ(m.type1.theta_hi, 1);
  EXPECT_THROW(margin_verify(2, q("1e-3")), Error);
  EXPECT_THROW(margin_verify(3, 0), Error);
}
