#include "psc/serialize.hpp"

namespace psc {

namespace {

// u128 values outside the double-exact range go out as decimal strings.
Json big(u128 v) {
  if (v <= (u128{1} << 53)) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json exact(const Rational& q) {
  Json j;
  j["exact"] = to_fraction_string(q);
  j["value"] = to_double(q);
  return j;
}

Json to_json(const RationalExponent& c) { return c.str(); }

Json to_json(const CertifiedReal& r) {
  return Json{{"value", r.value}, {"error_bound", r.error_bound}, {"exact", r.exact}};
}

Json to_json(const Factorization& f) {
  Json factors = Json::array();
  for (const auto& pk : f.factors) factors.push_back(Json::array({big(pk.p), pk.k}));
  return Json{{"factors", factors},
              {"unfactored", big(f.unfactored)},
              {"complete", f.complete},
              {"probabilistic", f.probabilistic}};
}

Json to_json(const FactorSignature& s) {
  return Json{{"n", big(s.n)},
              {"omega_big", s.omega_big},
              {"squarefree", s.squarefree},
              {"prime", s.prime},
              {"probabilistic", s.probabilistic}};
}

Json to_json(const CensusReport& r) {
  return Json{{"x", r.x}, {"c", to_json(r.c)}, {"R", r.R}, {"count", r.count}, {"pi_x", r.pi_x}, {"eta_hat", r.eta_hat}};
}

Json to_json(const SquarefreeReport& r) {
  return Json{{"x", r.x},         {"c", to_json(r.c)},  {"count", r.count},
              {"pi_x", r.pi_x},   {"ratio", r.ratio},   {"six_over_pi_squared", kSixOverPiSquared},
              {"deviation", r.deviation}};
}

Json to_json(const PsPrimeReport& r) {
  return Json{{"x", r.x}, {"c", to_json(r.c)}, {"pi_c", r.pi_c}, {"pi_x", r.pi_x}, {"balog_ref", r.balog_ref}};
}

Json to_json(const ResidueHistogram& r) {
  return Json{{"x", r.x}, {"c", to_json(r.c)}, {"d", r.d}, {"counts", r.counts}};
}

Json to_json(const LevelReport& r) {
  return Json{{"x", r.x},
              {"c", to_json(r.c)},
              {"D", r.D},
              {"model", to_string(r.model)},
              {"all_residues", r.all_residues},
              {"N", r.N},
              {"E", r.E},
              {"normalized", r.normalized}};
}

Json to_json(const DiscrepancyReport& r) {
  return Json{{"x", r.x}, {"c", to_json(r.c)}, {"h", r.h}, {"d", r.d}, {"n_points", r.n_points}, {"dstar", r.dstar}};
}

Json to_json(const VinogradovParams& p) {
  return Json{{"c", to_json(p.c)},     {"theta", exact(p.theta)}, {"delta", exact(p.delta)},
              {"epsilon", exact(p.epsilon)}, {"k", p.k},          {"rho", exact(p.rho)}};
}

Json to_json(const SumEval& e) {
  Json params = std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, WeylParams>) {
          Json j = to_json(p.vino);
          j["N"] = p.N;
          j["z_floor"] = p.z_floor;
          return j;
        } else if constexpr (std::is_same_v<T, PrimeSumParams>) {
          return Json{{"x", p.x}, {"c", to_json(p.c)}, {"h", p.h}, {"d", p.d}};
        } else if constexpr (std::is_same_v<T, TrilinearParams>) {
          return Json{{"D", p.D},
                      {"M", p.M},
                      {"L", p.L},
                      {"h", p.h},
                      {"c", to_json(p.c)},
                      {"weights", to_string(p.weights.kind)},
                      {"seed", p.weights.seed},
                      {"X", p.X},
                      {"x_at_least_dl", p.x_at_least_dl}};
        } else {
          return Json{{"x", p.x}, {"D", p.D}, {"H", p.H}, {"c", to_json(p.c)}};
        }
      },
      e.params);
  return Json{{"kind", to_string(e.kind)},
              {"params", params},
              {"value", complex_json(e.value)},
              {"abs", std::abs(e.value)},
              {"terms", e.terms},
              {"trivial_bound", e.trivial_bound},
              {"bound", optional_json(e.bound)},
              {"ratio", optional_json(e.ratio)}};
}

Json to_json(const InequalityReport& r) {
  return Json{{"id", r.id}, {"lhs", exact(r.lhs)}, {"rhs", exact(r.rhs)}, {"slack", exact(r.slack)}, {"holds", r.holds}};
}

Json to_json(const ThetaFeasibility& f) {
  Json intervals = Json::array();
  for (const auto& iv : f.intervals) intervals.push_back(Json::array({exact(iv.lo), exact(iv.hi)}));
  return Json{{"feasible", f.feasible()},
              {"intervals", intervals},
              {"witness", f.witness ? exact(*f.witness) : Json(nullptr)}};
}

Json to_json(const MaxCResult& r) {
  Json j{{"R", r.R}, {"greaves_degree", r.greaves_degree}, {"feasible", r.feasible}};
  if (r.feasible) {
    j["c_max"] = r.c_max;
    j["c_lo"] = exact(r.c_lo);
    j["c_hi"] = exact(r.c_hi);
  }
  return j;
}

Json to_json(const AdmissiblePair& p) { return Json{{"R", p.R}, {"c_R", exact(p.c_R)}}; }

Json to_json(const RegimeConstants& r) {
  return Json{{"c", exact(r.c)},         {"coeff", r.coeff}, {"sigma", exact(r.sigma)},
              {"beta", exact(r.beta)}, {"c1", exact(r.c1)}, {"c2", exact(r.c2)}};
}

Json to_json(const RBound& r) {
  return Json{{"c", exact(r.c)},
              {"real_bound", exact(r.real_bound)},
              {"c_over_sigma_plus", exact(r.c_over_sigma)},
              {"identity_holds", r.identity_holds},
              {"integer_R", r.integer_R}};
}

Json to_json(const ThresholdResult& r) {
  return Json{{"id", to_string(r.id)},
              {"c", r.c},
              {"bracket", Json::array({exact(r.bracket_lo), exact(r.bracket_hi)})},
              {"multi_crossing", r.multi_crossing},
              {"sign_changes", r.sign_changes}};
}

Json to_json(const F1F2& f) { return Json{{"f1", exact(f.f1)}, {"f2", exact(f.f2)}}; }

Json to_json(const MarginWindow& w) {
  return Json{{"theta", Json::array({exact(w.theta_lo), exact(w.theta_hi)})},
              {"target", exact(w.target)},
              {"points", w.points},
              {"worst_margin", w.worst_margin},
              {"worst_theta", exact(w.worst_theta)},
              {"worst_delta", exact(w.worst_delta)},
              {"worst_k", w.worst_k},
              {"passes", w.passes}};
}

Json to_json(const MarginReport& r) {
  return Json{{"c", exact(r.c)},
              {"epsilon", exact(r.epsilon)},
              {"regime", to_json(r.regime)},
              {"type1", to_json(r.type1)},
              {"type2", to_json(r.type2)},
              {"f1_minorant_margin", r.f1_minorant_margin},
              {"f2_minorant_margin", r.f2_minorant_margin},
              {"passes", r.passes()}};
}

}  // namespace psc
