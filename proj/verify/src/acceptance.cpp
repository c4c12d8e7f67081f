#include "psc/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "psc/constants.hpp"
#include "psc/error.hpp"
#include "psc/experiments.hpp"
#include "psc/expsum.hpp"
#include "psc/factor.hpp"
#include "psc/oracle.hpp"
#include "psc/parallel.hpp"

namespace psc::verify {

namespace {

Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// A random rational lo + (hi - lo) u / 2^20, u uniform in [0, 2^20).
Rational random_rational(std::mt19937_64& gen, const Rational& lo, const Rational& hi) {
  const auto u = static_cast<long>(gen() >> 44);
  Rational r = lo + (hi - lo) * Rational(u, 1L << 20);
  r.canonicalize();
  return r;
}

struct Outcome {
  bool ok;
  Json detail;
};

Outcome greaves_constants(const Exec&) {
  const std::map<unsigned, const char*> expected{
      {2, "0.044560"}, {3, "0.074267"}, {4, "0.103974"}, {5, "0.124820"}, {6, "0.124820"}, {100, "0.124820"}};
  bool ok = true;
  Json values = Json::object();
  for (const auto& [R, text] : expected) {
    const Rational got = greaves_delta_exact(R);
    ok = ok && got == parse_rational(text);
    values[std::to_string(R)] = exact(got);
  }
  return {ok, Json{{"delta", values}}};
}

Outcome cubic_identity(const Exec&) {
  std::mt19937_64 gen(2);
  bool ok = true;
  unsigned checked = 0;
  auto run = [&](const Rational& lo, const Rational& hi, long coeff) {
    for (int i = 0; i < 100; ++i) {
      const Rational c = random_rational(gen, lo, hi);
      const RegimeConstants k = regime_constants(c);
      const Rational lhs = c / k.sigma + q(115, 100);
      const Rational rhs = 16 * c * c * c + coeff * c * c;
      ok = ok && lhs == rhs && k.coeff == static_cast<unsigned>(coeff);
      ++checked;
    }
  };
  run(q(11, 5), q(3), 179);
  run(q(3), q(50), 88);
  return {ok, Json{{"checked", checked}}};
}

Outcome thresholds(const Exec&) {
  const Rational tol = q(1, 1000);
  Json d;
  bool ok = true;
  try {
    const ThresholdResult t = threshold(RegimeInequality::C1, q(11, 10), q(12, 5), tol);
    d["c1"] = to_json(t);
    ok = ok && t.c >= 2.079 && t.c <= 2.083;
  } catch (const Error& e) {
    d["c1"] = Json{{"error", e.what()}};
    ok = false;
  }
  d["c1_holds_at_2081"] = regime_inequality(RegimeInequality::C1, q(2081, 1000)).holds;
  const ThresholdResult a = threshold(RegimeInequality::C2A, q(9, 5), q(12, 5), tol);
  const ThresholdResult b = threshold(RegimeInequality::C2B, q(9, 5), q(12, 5), tol);
  const double c2 = std::max(a.c, b.c);
  d["c2a"] = to_json(a);
  d["c2b"] = to_json(b);
  d["c2_max"] = c2;
  ok = ok && c2 >= 2.196 && c2 <= 2.200;
  return {ok, d};
}

Outcome beta_cap(const Exec&) {
  bool ok = true;
  Json rows = Json::array();
  for (const Rational& c : {q(3), q(7, 2), q(5), q(10), q(100)}) {
    const RegimeConstants k = regime_constants(c);
    bool row_ok = k.coeff == 88 && k.beta == 20 * k.sigma && k.beta < q(1, 10);
    Json holds = Json::object();
    for (const auto& r : regime_inequalities(c)) {
      holds[r.id] = r.holds;
      row_ok = row_ok && r.holds;
    }
    ok = ok && row_ok;
    rows.push_back(Json{{"c", exact(c)}, {"beta", exact(k.beta)}, {"holds", holds}, {"ok", row_ok}});
  }
  return {ok, Json{{"rows", rows}}};
}

Outcome table_feasibility(const Exec&) {
  bool ok = true;
  Json rows = Json::array();
  for (const auto& [R, c] : admissible_pairs()) {
    const ThetaFeasibility f = feasible_thetas(c, R, q(1, 1000000));
    const bool row_ok = f.feasible() && *f.witness > 0 && *f.witness < q(1, R);
    ok = ok && row_ok;
    rows.push_back(Json{{"R", R}, {"c_R", exact(c)}, {"feasibility", to_json(f)}, {"ok", row_ok}});
  }
  return {ok, Json{{"pairs", rows}}};
}

Outcome floor_pow_equivalence(const Exec& exec) {
  struct Case {
    unsigned long n, num, den;
  };
  std::mt19937_64 gen(6);
  std::vector<Case> cases;
  while (cases.size() < 1000) {
    const unsigned long n = 2 + gen() % 99999;
    const unsigned long den = 2 + gen() % 15;
    const unsigned long num = den + 1 + gen() % (2 * den - 1);
    Rational c(num, den);
    c.canonicalize();
    if (c.get_den() == 1) continue;
    cases.push_back({n, num, den});
  }
  auto mismatches = detail::map_chunks<std::vector<Json>>(10, exec.jobs, [&](std::size_t chunk) {
    std::vector<Json> bad;
    for (std::size_t i = chunk * 100; i < chunk * 100 + 100; ++i) {
      const auto& k = cases[i];
      const RationalExponent c(static_cast<long>(k.num), static_cast<long>(k.den));
      const BigInt got = floor_pow(BigInt(k.n), c);
      const BigInt want = oracle::floor_pow(BigInt(k.n), k.num, k.den);
      if (got != want) bad.push_back(Json{{"n", k.n}, {"c", c.str()}, {"got", got.get_str()}, {"want", want.get_str()}});
    }
    return bad;
  });
  Json bad = Json::array();
  for (auto& chunk : mismatches)
    for (auto& m : chunk) bad.push_back(std::move(m));
  return {bad.empty(), Json{{"cases", cases.size()}, {"mismatches", bad}}};
}

Outcome omega_equivalence(const Exec& exec) {
  constexpr std::uint64_t kLimit = 1'000'000, kChunkSize = 10'000;
  auto parts = detail::map_chunks<std::vector<std::uint64_t>>(kLimit / kChunkSize, exec.jobs, [&](std::size_t i) {
    std::vector<std::uint64_t> bad;
    for (std::uint64_t n = i * kChunkSize + 1; n <= (i + 1) * kChunkSize; ++n) {
      const FactorSignature s = factor_signature(n);
      const oracle::TrialSignature t = oracle::trial_signature(n);
      if (s.omega_big != t.omega_big || s.squarefree != t.squarefree || s.prime != t.prime) bad.push_back(n);
    }
    return bad;
  });
  Json bad = Json::array();
  for (const auto& p : parts)
    for (auto n : p) bad.push_back(n);
  return {bad.empty(), Json{{"limit", kLimit}, {"mismatches", bad}}};
}

Outcome squarefree_density(const Exec& exec) {
  const SquarefreeReport r = squarefree_census(1'000'000, RationalExponent(7, 5), exec);
  return {std::fabs(r.ratio - 0.6079271019) <= 0.01, to_json(r)};
}

Outcome almost_prime_density(const Exec& exec) {
  const CensusReport r = almost_prime_census(1'000'000, RationalExponent(10521, 10000), 8, exec);
  return {r.eta_hat >= 1.0, to_json(r)};
}

Outcome ps_prime_sanity(const Exec& exec) {
  const PsPrimeReport r = ps_prime_count(1'000'000, RationalExponent(3, 2), exec);
  const double ratio = static_cast<double>(r.pi_c) / r.balog_ref;
  Json d = to_json(r);
  d["ratio"] = ratio;
  return {ratio >= 0.5 && ratio <= 2.0, d};
}

Outcome equidistribution(const Exec& exec) {
  const PsSample s = ps_sample(1'000'000, RationalExponent(10521, 10000), exec);
  const double pi = static_cast<double>(s.pi_x());
  double worst = 0.0;
  std::uint64_t worst_d = 0, worst_s = 0;
  for (std::uint64_t d = 1; d <= 50; ++d) {
    const ResidueHistogram h = residue_histogram(s, d);
    for (std::uint64_t r = 0; r < d; ++r) {
      const double expected = pi / static_cast<double>(d);
      const double rel = std::fabs(static_cast<double>(h.counts[r]) - expected) / expected;
      if (rel > worst) {
        worst = rel;
        worst_d = d;
        worst_s = r;
      }
    }
  }
  const LevelReport l1 = level_error(s, 1);
  Json d{{"pi_x", s.pi_x()}, {"worst_relative_deviation", worst}, {"worst_d", worst_d}, {"worst_s", worst_s},
         {"level_error_D1", l1.E}};
  return {worst <= 0.1 && l1.E == 0.0, d};
}

Json compare(const std::string& what, std::complex<double> got, std::complex<double> want, const SumEval& ev,
             bool& ok) {
  const double rel = std::abs(got - want) / std::max(std::abs(want), 1.0);
  const bool within = std::abs(ev.value) <= ev.trivial_bound + 1e-6;
  ok = ok && rel <= 1e-9 && within;
  return Json{{"sum", what},
              {"terms", ev.terms},
              {"value", Json::array({got.real(), got.imag()})},
              {"oracle", Json::array({want.real(), want.imag()})},
              {"relative_error", rel},
              {"within_trivial_bound", within}};
}

Outcome expsum_correctness(const Exec& exec) {
  SumOptions opt;
  opt.exec = exec;
  bool ok = true;
  Json rows = Json::array();
  {
    const RationalExponent c(5, 2);
    const auto ev = weyl_sum(c, q(1), q(3, 10), 10'000, q(1, 1000), opt);
    rows.push_back(compare("weyl c=5/2 theta=1 delta=3/10 N=1e4", ev.value, oracle::weyl_sum(c, q(1), q(3, 10), 10'000), ev, ok));
  }
  {
    const RationalExponent c(11, 5);
    const auto ev = weyl_sum(c, q(1, 2), q(1), 1'000'000, q(1, 1000), opt);
    rows.push_back(compare("weyl c=11/5 theta=1/2 delta=1 N=1e6", ev.value, oracle::weyl_sum(c, q(1, 2), q(1), 1'000'000), ev, ok));
  }
  {
    const RationalExponent c(11, 5);
    const auto ev = prime_expsum(100'000, c, 3, 7, opt);
    rows.push_back(compare("prime x=1e5 c=11/5 h=3 d=7", ev.value, oracle::prime_expsum(100'000, c, 3, 7), ev, ok));
  }
  {
    const RationalExponent c(10521, 10000);
    const WeightSpec w{WeightKind::RandomSign, 42};
    const auto ev = trilinear_sum(8, 32, 32, 1, c, w, opt);
    rows.push_back(compare("trilinear D=8 M=32 L=32 h=1 random seed 42", ev.value,
                           oracle::trilinear_sum(8, 32, 32, 1, c, w), ev, ok));
  }
  {
    const RationalExponent c(3, 2);
    const WeightSpec w{WeightKind::Interval, 0};
    const auto ev = trilinear_sum(4, 16, 40, 2, c, w, opt);
    rows.push_back(compare("trilinear D=4 M=16 L=40 h=2 interval", ev.value, oracle::trilinear_sum(4, 16, 40, 2, c, w), ev, ok));
  }
  {
    const RationalExponent c(7, 5);
    const auto ev = triple_sum(1000, 2, 4, c, opt);
    rows.push_back(compare("triple x=1000 D=2 H=4 c=7/5", ev.value, oracle::triple_sum(1000, 2, 4, c), ev, ok));
  }
  return {ok, Json{{"instances", rows}}};
}

// f values on the grid t = i/1000, i = 0..1000.
std::vector<Rational> f_grid(const Rational& c, const Rational& eps, bool second) {
  std::vector<Rational> out;
  for (int i = 0; i <= 1000; ++i) {
    const F1F2 f = f1_f2(q(i, 1000), c, eps);
    out.push_back(second ? f.f2 : f.f1);
  }
  return out;
}

Outcome margin_argument(const Exec&) {
  bool ok = true;
  Json margins = Json::array();
  for (const Rational& c : {q(11, 5), q(5, 2), q(3), q(5)}) {
    const MarginReport r = margin_verify(c, q(1, 1000));
    ok = ok && r.passes();
    margins.push_back(to_json(r));
  }
  Json f1 = Json::array();
  for (const Rational& c : {q(8, 5), q(11, 5), q(3), q(10)})
    for (const Rational& eps : {q(0), q(1, 100)}) {
      const auto v = f_grid(c, eps, false);
      bool inc = true;
      for (std::size_t i = 1; i < v.size(); ++i) inc = inc && v[i] > v[i - 1];
      ok = ok && inc;
      f1.push_back(Json{{"c", exact(c)}, {"epsilon", exact(eps)}, {"increasing", inc}});
    }
  Json f2 = Json::array();
  for (const Rational& c : {q(11, 5), q(5, 2), q(3)})
    for (const Rational& eps : {q(0), q(1, 100)}) {
      const auto v = f_grid(c, eps, true);
      unsigned maxima = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const bool left = i == 0 || v[i] > v[i - 1];
        const bool right = i + 1 == v.size() || v[i] > v[i + 1];
        if (left && right) ++maxima;
      }
      ok = ok && maxima == 1;
      f2.push_back(Json{{"c", exact(c)}, {"epsilon", exact(eps)}, {"local_maxima", maxima}});
    }
  return {ok, Json{{"margins", margins}, {"f1", f1}, {"f2", f2}}};
}

Outcome determinism(const Exec&) {
  std::map<unsigned, std::vector<std::string>> runs;
  for (unsigned jobs : {1u, 4u})
    for (int id = 1; id < kCriteria; ++id)
      runs[jobs].push_back(canonical(run_criterion(id, Exec{jobs})).dump());
  Json differing = Json::array();
  for (int id = 1; id < kCriteria; ++id)
    if (runs[1][id - 1] != runs[4][id - 1]) differing.push_back(id);
  return {differing.empty(), Json{{"jobs", Json::array({1, 4})}, {"differing", differing}}};
}

struct Criterion {
  const char* name;
  double budget_ms;
  Outcome (*run)(const Exec&);
};

const Criterion kTable[kCriteria] = {
    {"greaves constants", 1.0, greaves_constants},
    {"cubic identity", 1000.0, cubic_identity},
    {"thresholds", 1000.0, thresholds},
    {"beta cap", 1000.0, beta_cap},
    {"admissible pairs feasible", 1000.0, table_feasibility},
    {"floor_pow oracle equivalence", 10'000.0, floor_pow_equivalence},
    {"omega oracle equivalence", 30'000.0, omega_equivalence},
    {"squarefree density", 120'000.0, squarefree_density},
    {"almost-prime density", 120'000.0, almost_prime_density},
    {"ps-prime count sanity", 120'000.0, ps_prime_sanity},
    {"equidistribution", 120'000.0, equidistribution},
    {"exponential sum correctness", 60'000.0, expsum_correctness},
    {"margin argument", 10'000.0, margin_argument},
    {"determinism", 600'000.0, determinism},
};

}  // namespace

CriterionResult run_criterion(int id, const Exec& exec) {
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::InvalidArgument, "criterion id must be in 1..14");
  const Criterion& c = kTable[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = c.name;
  r.budget_ms = c.budget_ms;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = c.run(exec);
    r.ok = o.ok;
    r.detail = std::move(o.detail);
  } catch (const Error& e) {
    r.ok = false;
    r.detail = Json{{"error", e.what()}};
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const Exec& exec,
                                            const std::function<void(const CriterionResult&)>& sink) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run_criterion(id, exec));
    if (sink) sink(out.back());
  }
  return out;
}

Json canonical(const CriterionResult& r) {
  return Json{{"id", r.id}, {"name", r.name}, {"ok", r.ok}, {"detail", r.detail}};
}

}  // namespace psc::verify
