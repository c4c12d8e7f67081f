#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "psc/error.hpp"
#include "psc/experiments.hpp"
#include "psc/primes.hpp"

using namespace psc;

namespace {

const RationalExponent k32(3, 2);
const RationalExponent k75(7, 5);
const RationalExponent kTable8(10521, 10000);

}  // namespace

TEST(PsSample, MembersForTwenty) {
  const auto s = ps_sample(20, k32);
  EXPECT_EQ(s.pi_x(), 8u);
  const std::vector<u128> want = {2, 5, 11, 18, 36, 46, 70, 82};
  EXPECT_EQ(s.members, want);
}

TEST(Census, SmallExamples) {
  EXPECT_EQ(almost_prime_census(20, k32, 1).count, 3u);
  EXPECT_EQ(almost_prime_census(20, k32, 50).count, 8u);
  const auto r = almost_prime_census(20, k32, 2);
  EXPECT_EQ(r.pi_x, 8u);
  EXPECT_NEAR(r.eta_hat, r.count * std::pow(std::log(20.0), 2) / 20.0, 1e-12);
}

TEST(Census, FrozenCountsAtTenThousand) {
  struct Row {
    RationalExponent c;
    std::uint64_t r1, r2, r3, r8;
  };
  for (const Row& row : {Row{k75, 105, 355, 689, 1210}, Row{k32, 82, 317, 621, 1211},
                         Row{kTable8, 135, 456, 768, 1217}}) {
    const auto s = ps_sample(10'000, row.c);
    EXPECT_EQ(almost_prime_census(s, 1).count, row.r1) << row.c.str();
    EXPECT_EQ(almost_prime_census(s, 2).count, row.r2) << row.c.str();
    EXPECT_EQ(almost_prime_census(s, 3).count, row.r3) << row.c.str();
    EXPECT_EQ(almost_prime_census(s, 8).count, row.r8) << row.c.str();
    EXPECT_EQ(almost_prime_census(s, 127).count, 1229u);
  }
}

TEST(Census, MonotoneInRAndX) {
  const auto s = ps_sample(5000, kTable8);
  std::uint64_t prev = 0;
  for (unsigned R = 1; R <= 20; ++R) {
    const auto n = almost_prime_census(s, R).count;
    EXPECT_GE(n, prev);
    prev = n;
  }
  prev = 0;
  for (std::uint64_t x = 100; x <= 5000; x += 700) {
    const auto n = almost_prime_census(x, kTable8, 4).count;
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Squarefree, Examples) {
  const auto r = squarefree_census(20, k32);
  EXPECT_EQ(r.count, 6u);
  EXPECT_DOUBLE_EQ(r.ratio, 0.75);
  EXPECT_NEAR(r.deviation, 0.75 - 0.6079271019, 1e-9);
  EXPECT_NEAR(kSixOverPiSquared, 6.0 / (M_PI * M_PI), 1e-15);
  EXPECT_EQ(squarefree_census(10'000, k75).count, 723u);
  EXPECT_EQ(squarefree_census(10'000, k32).count, 697u);
  EXPECT_EQ(squarefree_census(10'000, kTable8).count, 740u);
}

TEST(PsPrimes, Examples) {
  EXPECT_EQ(ps_prime_count(10, k32).pi_c, 3u);
  EXPECT_EQ(ps_prime_count(2, k32).pi_c, 1u);
  EXPECT_EQ(ps_prime_count(10'000, k75).pi_c, 105u);
  EXPECT_EQ(ps_prime_count(10'000, k32).pi_c, 82u);
  EXPECT_EQ(ps_prime_count(10'000, kTable8).pi_c, 135u);
  const auto r = ps_prime_count(10'000, k32);
  EXPECT_NEAR(r.balog_ref, 1e4 / (1.5 * std::pow(std::log(1e4), 2)), 1e-9);
}

TEST(Residues, Examples) {
  EXPECT_EQ(residue_histogram(1000, k32, 1).counts, (std::vector<std::uint64_t>{168}));
  EXPECT_EQ(residue_histogram(20, k32, 2).counts, (std::vector<std::uint64_t>{6, 2}));
  const auto h5 = residue_histogram(20, k32, 5);
  EXPECT_EQ(std::accumulate(h5.counts.begin(), h5.counts.end(), std::uint64_t{0}), 8u);
  EXPECT_EQ(residue_histogram(10'000, k75, 7).counts,
            (std::vector<std::uint64_t>{169, 176, 186, 170, 184, 180, 164}));
  EXPECT_EQ(residue_histogram(10'000, k32, 7).counts,
            (std::vector<std::uint64_t>{218, 180, 190, 145, 162, 172, 162}));
  EXPECT_EQ(residue_histogram(10'000, kTable8, 7).counts,
            (std::vector<std::uint64_t>{171, 176, 173, 178, 175, 178, 178}));
}

TEST(LevelError, Examples) {
  EXPECT_EQ(level_error(20, k32, 1).E, 0.0);
  EXPECT_DOUBLE_EQ(level_error(20, k32, 2).E, 2.0);
  const auto s = ps_sample(10'000, kTable8);
  EXPECT_NEAR(level_error(s, 20, DensityModel::One).E, 375.65688025854433, 1e-9);
  EXPECT_NEAR(level_error(s, 20, DensityModel::Coprime).E, 3094.115277777778, 1e-9);
  EXPECT_GE(level_error(s, 20, DensityModel::One, true).E, level_error(s, 20, DensityModel::One).E);
}

TEST(LevelError, ModelNames) {
  EXPECT_EQ(parse_density_model("one"), DensityModel::One);
  EXPECT_EQ(parse_density_model("coprime"), DensityModel::Coprime);
  EXPECT_EQ(to_string(DensityModel::Coprime), "coprime");
  EXPECT_THROW(parse_density_model("other"), Error);
}

TEST(Discrepancy, ClosedForms) {
  const std::vector<double> single{0.0};
  EXPECT_DOUBLE_EQ(star_discrepancy(single), 1.0);
  std::vector<double> grid;
  for (int k = 0; k < 10; ++k) grid.push_back(k / 10.0);
  EXPECT_NEAR(star_discrepancy(grid), 0.1, 1e-15);
  std::vector<double> shuffled(grid.rbegin(), grid.rend());
  EXPECT_EQ(star_discrepancy(shuffled), star_discrepancy(grid));
}

TEST(Discrepancy, Frozen) {
  const auto r = star_discrepancy(1000, k32, 1, 1);
  EXPECT_EQ(r.n_points, 168u);
  EXPECT_NEAR(r.dstar, 0.12961001671781064, 1e-12);
  EXPECT_GT(r.dstar, 0.0);
  EXPECT_LE(r.dstar, 1.0);
}

TEST(Experiments, JobsInvariance) {
  const auto a = ps_sample(200'000, kTable8, Exec{1});
  const auto b = ps_sample(200'000, kTable8, Exec{4});
  EXPECT_EQ(a.members, b.members);
  EXPECT_EQ(almost_prime_census(a, 3, Exec{1}).count, almost_prime_census(b, 3, Exec{4}).count);
  EXPECT_EQ(level_error(a, 30, DensityModel::One, false, Exec{1}).E,
            level_error(b, 30, DensityModel::One, false, Exec{4}).E);
  EXPECT_EQ(star_discrepancy(50'000, kTable8, 1, 7, Exec{1}).dstar,
            star_discrepancy(50'000, kTable8, 1, 7, Exec{4}).dstar);
}

TEST(PsSample, MembersPast127BitsOverflow) {
  try {
    ps_sample(20, RationalExponent(100, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
}
