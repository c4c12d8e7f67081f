#include "psc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "psc/acceptance.hpp"
#include "psc/constants.hpp"
#include "psc/error.hpp"
#include "psc/experiments.hpp"
#include "psc/expsum.hpp"
#include "psc/serialize.hpp"

namespace psc::cli {

namespace {

struct Globals {
  std::string format = "jsonl";
  unsigned jobs = Exec::default_jobs();
  std::uint64_t seed = 0;
  std::string tol;
  bool no_timing = false;

  Exec exec() const { return Exec{jobs}; }
};

// Flattens nested objects into dotted keys; arrays stay JSON text.
void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

// Writes RunRecords: JSONL as they come, CSV once all rows are known.
class Writer {
 public:
  Writer(std::ostream& out, bool csv, bool timing) : out_(out), csv_(csv), timing_(timing) {}

  void emit(const std::string& command, Json params, Json result) {
    const auto now = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now - start_).count();
    start_ = now;
    if (csv_) {
      std::vector<std::pair<std::string, std::string>> row;
      flatten(result, "", row);
      for (const auto& [k, v] : row)
        if (std::find(columns_.begin(), columns_.end(), k) == columns_.end()) columns_.push_back(k);
      rows_.emplace_back(row.begin(), row.end());
      return;
    }
    Json rec;
    rec["command"] = command;
    rec["params"] = std::move(params);
    rec["result"] = std::move(result);
    rec["tool_version"] = version();
    rec["elapsed_ms"] = timing_ ? static_cast<std::uint64_t>(ms) : 0;
    out_ << rec.dump() << '\n';
    out_.flush();
  }

  void finish() {
    if (!csv_ || rows_.empty()) return;
    for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << csv_field(columns_[i]);
    out_ << "\r\n";
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        const auto it = row.find(columns_[i]);
        out_ << (i ? "," : "") << (it == row.end() ? "" : csv_field(it->second));
      }
      out_ << "\r\n";
    }
  }

  bool timing() const { return timing_; }

 private:
  std::ostream& out_;
  bool csv_;
  bool timing_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::vector<std::string> columns_;
  std::vector<std::map<std::string, std::string>> rows_;
};

// Flat key=value files. Each key goes to the deepest selected subcommand
// that owns an option of that name, falling back towards the root.
class FlatConfig : public CLI::Config {
 public:
  explicit FlatConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    std::vector<const CLI::App*> chain{root_};
    for (;;) {
      const auto subs = chain.back()->get_subcommands();
      if (subs.empty()) break;
      chain.push_back(subs.front());
    }
    std::vector<CLI::ConfigItem> items;
    for (std::string line; std::getline(in, line);) {
      line = CLI::detail::trim_copy(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw CLI::ConfigError("config line without '=': " + line);
      CLI::ConfigItem item;
      item.name = CLI::detail::trim_copy(line.substr(0, eq));
      item.inputs = {CLI::detail::trim_copy(line.substr(eq + 1))};
      for (std::size_t level = chain.size(); level-- > 0;) {
        if (owns(chain[level], item.name)) {
          for (std::size_t i = 1; i <= level; ++i) item.parents.push_back(chain[i]->get_name());
          break;
        }
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  static bool owns(const CLI::App* app, const std::string& name) {
    return app->get_option_no_throw("--" + name) != nullptr ||
           (name.size() == 1 && app->get_option_no_throw("-" + name) != nullptr);
  }

  const CLI::App* root_;
};

RationalExponent exponent_arg(const std::string& s) { return parse_exponent(s); }
std::uint64_t natural_arg(const std::string& s) { return parse_natural(s); }
Rational rational_arg(const std::string& s) { return parse_rational(s); }

std::string decimal(const Rational& q, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, to_double(q));
  return buf;
}

using Action = std::function<void(Writer&)>;

struct Registry {
  std::vector<std::pair<CLI::App*, Action>> actions;
  void add(CLI::App* app, Action a) { actions.emplace_back(app, std::move(a)); }
};

struct Args {
  std::string n, c, x, R, d, D, H, M, L, h, N, theta, delta, eps, kappa, lo, hi, id, model = "one",
      weights = "unit", fixtures = "fixtures";
  bool all_residues = false, reverse = false, swap_loops = false, greaves = false, record = false;
  unsigned theta_steps = kMarginThetaSteps, delta_steps = kMarginDeltaSteps;
  int criterion = 0;
};

void add_c(CLI::App* app, Args& a, bool required = true) {
  auto* o = app->add_option("-c,--c", a.c, "exponent, as a fraction or decimal (e.g. 3/2, 1.0521)");
  if (required) o->required();
}
void add_x(CLI::App* app, Args& a) {
  app->add_option("-x,--x", a.x, "upper limit for the primes (scientific notation allowed)")->required();
}

void register_sequence_commands(CLI::App& app, Args& a, Globals& g, Registry& reg) {
  auto* floor_cmd = app.add_subcommand("floor", "floor(n^c), exactly");
  floor_cmd->add_option("-n,--n", a.n, "integer n >= 2")->required();
  add_c(floor_cmd, a);
  reg.add(floor_cmd, [&](Writer& w) {
    const RationalExponent c = exponent_arg(a.c);
    const Rational nq = rational_arg(a.n);
    if (nq.get_den() != 1) throw Error(ErrorCode::InvalidArgument, "n must be an integer");
    const BigInt n = nq.get_num();
    w.emit("floor", Json{{"n", n.get_str()}, {"c", c.str()}}, Json{{"value", floor_pow(n, c).get_str()}});
  });

  auto* census = app.add_subcommand("census", "count R-almost primes among floor(p^c), p <= x");
  add_x(census, a);
  add_c(census, a);
  census->add_option("-R,--R", a.R, "largest admissible Omega")->required();
  reg.add(census, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    const auto R = static_cast<unsigned>(natural_arg(a.R));
    w.emit("census", Json{{"x", x}, {"c", c.str()}, {"R", R}}, to_json(almost_prime_census(x, c, R, g.exec())));
  });

  auto* sqf = app.add_subcommand("squarefree", "squarefree members floor(p^c), p <= x");
  add_x(sqf, a);
  add_c(sqf, a);
  reg.add(sqf, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    w.emit("squarefree", Json{{"x", x}, {"c", c.str()}}, to_json(squarefree_census(x, c, g.exec())));
  });

  auto* psp = app.add_subcommand("psprimes", "primes p <= x with floor(p^c) prime");
  add_x(psp, a);
  add_c(psp, a);
  reg.add(psp, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    w.emit("psprimes", Json{{"x", x}, {"c", c.str()}}, to_json(ps_prime_count(x, c, g.exec())));
  });

  auto* hist = app.add_subcommand("histogram", "residues of floor(p^c) modulo d");
  add_x(hist, a);
  add_c(hist, a);
  hist->add_option("-d,--d", a.d, "modulus")->required();
  reg.add(hist, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    const auto d = natural_arg(a.d);
    w.emit("histogram", Json{{"x", x}, {"c", c.str()}, {"d", d}}, to_json(residue_histogram(x, c, d, g.exec())));
  });

  auto* lvl = app.add_subcommand("leveldist", "level-of-distribution error sum over d <= D");
  add_x(lvl, a);
  add_c(lvl, a);
  lvl->add_option("--D", a.D, "largest modulus")->required();
  lvl->add_option("--model", a.model, "density model: one or coprime")->capture_default_str();
  lvl->add_flag("--all-residues", a.all_residues, "maximise over every residue class");
  reg.add(lvl, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    const auto D = natural_arg(a.D);
    const auto model = parse_density_model(a.model);
    w.emit("leveldist",
           Json{{"x", x}, {"c", c.str()}, {"D", D}, {"model", to_string(model)}, {"all_residues", a.all_residues}},
           to_json(level_error(x, c, D, model, a.all_residues, g.exec())));
  });

  auto* disc = app.add_subcommand("discrepancy", "star discrepancy of {h p^c / d}, p <= x");
  add_x(disc, a);
  add_c(disc, a);
  disc->add_option("--h", a.h, "numerator h")->default_str("1");
  disc->add_option("-d,--d", a.d, "denominator d")->default_str("1");
  reg.add(disc, [&](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    const auto h = natural_arg(a.h.empty() ? "1" : a.h);
    const auto d = natural_arg(a.d.empty() ? "1" : a.d);
    w.emit("discrepancy", Json{{"x", x}, {"c", c.str()}, {"h", h}, {"d", d}},
           to_json(star_discrepancy(x, c, h, d, g.exec())));
  });
}

void register_expsum(CLI::App& app, Args& a, Globals& g, Registry& reg) {
  auto* es = app.add_subcommand("expsum", "exponential sums with their analytic comparators");
  es->require_subcommand(1);
  auto options = [&] {
    SumOptions o;
    o.exec = g.exec();
    o.reverse = a.reverse;
    o.swap_loops = a.swap_loops;
    return o;
  };

  auto* weyl = es->add_subcommand("weyl", "sum over z ~ N^theta of e(z^c N^delta)");
  add_c(weyl, a);
  weyl->add_option("--theta", a.theta, "Theta > 0")->required();
  weyl->add_option("--delta", a.delta, "Delta > 0")->required();
  weyl->add_option("-N,--N", a.N, "N >= 2")->required();
  weyl->add_option("--eps", a.eps, "epsilon in rho (default 1/1000)");
  weyl->add_flag("--reverse", a.reverse, "sum in reverse order");
  reg.add(weyl, [&, options](Writer& w) {
    const auto c = exponent_arg(a.c);
    const Rational theta = rational_arg(a.theta), delta = rational_arg(a.delta);
    const Rational eps = a.eps.empty() ? Rational(1, 1000) : rational_arg(a.eps);
    const auto N = natural_arg(a.N);
    w.emit("expsum weyl",
           Json{{"c", c.str()},
                {"theta", to_fraction_string(theta)},
                {"delta", to_fraction_string(delta)},
                {"N", N},
                {"eps", to_fraction_string(eps)},
                {"reverse", a.reverse}},
           to_json(weyl_sum(c, theta, delta, N, eps, options())));
  });

  auto* prime = es->add_subcommand("prime", "sum over p <= x of e(h p^c / d)");
  add_x(prime, a);
  add_c(prime, a);
  prime->add_option("--h", a.h, "non-zero integer h")->required();
  prime->add_option("-d,--d", a.d, "denominator d")->default_str("1");
  prime->add_flag("--reverse", a.reverse, "sum in reverse order");
  reg.add(prime, [&, options](Writer& w) {
    const auto x = natural_arg(a.x);
    const auto c = exponent_arg(a.c);
    const Rational hq = rational_arg(a.h);
    if (hq.get_den() != 1 || !hq.get_num().fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "h must be an integer");
    const std::int64_t h = hq.get_num().get_si();
    const auto d = natural_arg(a.d.empty() ? "1" : a.d);
    w.emit("expsum prime", Json{{"x", x}, {"c", c.str()}, {"h", h}, {"d", d}, {"reverse", a.reverse}},
           to_json(prime_expsum(x, c, h, d, options())));
  });

  auto* tri = es->add_subcommand("trilinear", "weighted sum over d ~ D, m ~ M, l ~ L of e(h (lm)^c / d)");
  tri->add_option("--D", a.D, "D")->required();
  tri->add_option("--M", a.M, "M")->required();
  tri->add_option("--L", a.L, "L")->required();
  tri->add_option("--h", a.h, "h >= 1")->default_str("1");
  add_c(tri, a);
  tri->add_option("--weights", a.weights, "unit, interval or random (signs from --seed)")->capture_default_str();
  tri->add_flag("--reverse", a.reverse, "sum in reverse order");
  reg.add(tri, [&, options](Writer& w) {
    const auto D = natural_arg(a.D), M = natural_arg(a.M), L = natural_arg(a.L);
    const auto h = natural_arg(a.h.empty() ? "1" : a.h);
    const auto c = exponent_arg(a.c);
    const WeightSpec ws{parse_weight_kind(a.weights), g.seed};
    Json params{{"D", D}, {"M", M}, {"L", L}, {"h", h}, {"c", c.str()}, {"weights", to_string(ws.kind)}};
    if (ws.kind == WeightKind::RandomSign) params["seed"] = g.seed;
    params["reverse"] = a.reverse;
    w.emit("expsum trilinear", params, to_json(trilinear_sum(D, M, L, h, c, ws, options())));
  });

  auto* triple = es->add_subcommand("triple", "sum over h <= H, d ~ D of |sum over n ~ x of Lambda(n) e(h n^c / d)|");
  add_x(triple, a);
  triple->add_option("--D", a.D, "D")->required();
  triple->add_option("--H", a.H, "H, or 'full' for ceil(D log^3 x)")->required();
  add_c(triple, a);
  triple->add_flag("--reverse", a.reverse, "sum in reverse order");
  triple->add_flag("--swap-loops", a.swap_loops, "d outer, h inner");
  reg.add(triple, [&, options](Writer& w) {
    const auto x = natural_arg(a.x), D = natural_arg(a.D);
    const auto H = a.H == "full" ? triple_default_H(x, D) : natural_arg(a.H);
    const auto c = exponent_arg(a.c);
    w.emit("expsum triple",
           Json{{"x", x}, {"D", D}, {"H", H}, {"c", c.str()}, {"reverse", a.reverse}, {"swap_loops", a.swap_loops}},
           to_json(triple_sum(x, D, H, c, options())));
  });
}

void register_constants(CLI::App& app, Args& a, Globals& g, Registry& reg) {
  auto* cs = app.add_subcommand("constants", "explicit constants and inequality systems, in exact arithmetic");
  cs->require_subcommand(1);

  auto* delta = cs->add_subcommand("delta", "Greaves' delta_R");
  delta->add_option("-R,--R", a.R, "R >= 2")->required();
  reg.add(delta, [&](Writer& w) {
    const auto R = static_cast<unsigned>(natural_arg(a.R));
    const Rational d = greaves_delta_exact(R);
    w.emit("constants delta", Json{{"R", R}}, Json{{"R", R}, {"delta", decimal(d, 6)}, {"exact", to_fraction_string(d)}});
  });

  auto* table = cs->add_subcommand("table", "the twelve admissible pairs (R, c_R)");
  reg.add(table, [&](Writer& w) {
    for (const auto& p : admissible_pairs())
      w.emit("constants table", Json::object(),
             Json{{"R", p.R}, {"c_R", decimal(p.c_R, 4)}, {"exact", to_fraction_string(p.c_R)}});
  });

  auto* l23 = cs->add_subcommand("lemma23", "the eleven level-of-distribution inequalities");
  add_c(l23, a);
  l23->add_option("--theta", a.theta, "check at this theta");
  l23->add_option("--kappa", a.kappa, "kappa > 0 (default 1e-6)");
  l23->add_option("-R,--R", a.R, "without --theta: feasible theta set for this R");
  l23->add_flag("--greaves", a.greaves, "impose the degree condition c/theta < R - delta_R instead of theta < 1/R");
  reg.add(l23, [&](Writer& w) {
    const Rational c = rational_arg(a.c);
    const Rational kappa = a.kappa.empty() ? Rational(1, 1000000) : rational_arg(a.kappa);
    if (!a.theta.empty()) {
      const Rational theta = rational_arg(a.theta);
      const LevelParams p{c, theta, kappa};
      const auto reps = level_inequalities(p);
      Json list = Json::array();
      bool all = true;
      for (const auto& r : reps) {
        list.push_back(to_json(r));
        all = all && r.holds;
      }
      w.emit("constants lemma23",
             Json{{"c", to_fraction_string(c)}, {"theta", to_fraction_string(theta)}, {"kappa", to_fraction_string(kappa)}},
             Json{{"alpha", exact(p.alpha())}, {"all_hold", all}, {"inequalities", list}});
      return;
    }
    if (a.R.empty()) throw Error(ErrorCode::InvalidArgument, "lemma23 needs --theta or -R");
    const auto R = static_cast<unsigned>(natural_arg(a.R));
    w.emit("constants lemma23",
           Json{{"c", to_fraction_string(c)}, {"R", R}, {"kappa", to_fraction_string(kappa)}, {"greaves", a.greaves}},
           to_json(feasible_thetas(c, R, kappa, a.greaves)));
  });

  auto* maxc = cs->add_subcommand("maxc", "largest c for which the inequalities are feasible");
  maxc->add_option("-R,--R", a.R, "R in 8..19 (default: all)");
  maxc->add_flag("--greaves", a.greaves, "use the degree condition c/theta < R - delta_R");
  reg.add(maxc, [&](Writer& w) {
    const double tol = g.tol.empty() ? 1e-6 : to_double(rational_arg(g.tol));
    std::vector<unsigned> Rs;
    if (a.R.empty())
      for (unsigned R = 8; R <= 19; ++R) Rs.push_back(R);
    else
      Rs.push_back(static_cast<unsigned>(natural_arg(a.R)));
    for (unsigned R : Rs)
      w.emit("constants maxc", Json{{"R", R}, {"greaves", a.greaves}, {"tol", tol}},
             to_json(max_c_feasible(R, tol, a.greaves)));
  });

  auto* sigma = cs->add_subcommand("sigma", "sigma, beta, c1, c2 for a given c");
  add_c(sigma, a);
  reg.add(sigma, [&](Writer& w) {
    const Rational c = rational_arg(a.c);
    w.emit("constants sigma", Json{{"c", to_fraction_string(c)}}, to_json(regime_constants(c)));
  });

  auto* rb = cs->add_subcommand("rbound", "the cubic bound on R and the least admissible integer R");
  add_c(rb, a);
  reg.add(rb, [&](Writer& w) {
    const Rational c = rational_arg(a.c);
    w.emit("constants rbound", Json{{"c", to_fraction_string(c)}}, to_json(r_bound(c)));
  });

  auto* regime = cs->add_subcommand("regime", "the three regime inequalities and the beta cap");
  add_c(regime, a);
  reg.add(regime, [&](Writer& w) {
    const Rational c = rational_arg(a.c);
    Json list = Json::array();
    bool all = true;
    for (const auto& r : regime_inequalities(c)) {
      list.push_back(to_json(r));
      all = all && r.holds;
    }
    w.emit("constants regime", Json{{"c", to_fraction_string(c)}}, Json{{"all_hold", all}, {"inequalities", list}});
  });

  auto* thr = cs->add_subcommand("threshold", "least c from which a regime inequality holds");
  thr->add_option("--id", a.id, "c1, c2a, c2b or beta-cap")->required();
  thr->add_option("--lo", a.lo, "search interval start")->required();
  thr->add_option("--hi", a.hi, "search interval end")->required();
  reg.add(thr, [&](Writer& w) {
    const auto id = parse_regime_inequality(a.id);
    const Rational lo = rational_arg(a.lo), hi = rational_arg(a.hi);
    const Rational tol = g.tol.empty() ? Rational(1, 1000) : rational_arg(g.tol);
    w.emit("constants threshold",
           Json{{"id", to_string(id)}, {"lo", to_fraction_string(lo)}, {"hi", to_fraction_string(hi)},
                {"tol", to_fraction_string(tol)}},
           to_json(threshold(id, lo, hi, tol)));
  });

  auto* mg = cs->add_subcommand("margins", "grid check of the Type I and Type II margins");
  add_c(mg, a);
  mg->add_option("--eps", a.eps, "epsilon (default 1/1000)");
  mg->add_option("--theta-steps", a.theta_steps, "grid steps in Theta")->capture_default_str();
  mg->add_option("--delta-steps", a.delta_steps, "grid steps in Delta")->capture_default_str();
  reg.add(mg, [&](Writer& w) {
    const Rational c = rational_arg(a.c);
    const Rational eps = a.eps.empty() ? Rational(1, 1000) : rational_arg(a.eps);
    w.emit("constants margins",
           Json{{"c", to_fraction_string(c)}, {"eps", to_fraction_string(eps)}, {"theta_steps", a.theta_steps},
                {"delta_steps", a.delta_steps}},
           to_json(margin_verify(c, eps, a.theta_steps, a.delta_steps)));
  });
}

void register_verify(CLI::App& app, Args& a, Globals& g, Registry& reg, int& status) {
  auto* v = app.add_subcommand("verify", "run the acceptance suite and compare the regression fixtures");
  v->add_flag("--record", a.record, "write the fixtures instead of checking them");
  v->add_option("--fixtures", a.fixtures, "fixture directory")->capture_default_str();
  v->add_option("--criterion", a.criterion, "run a single criterion (1..14)");
  reg.add(v, [&](Writer& w) {
    if (a.record) {
      const auto n = verify::record_fixtures(a.fixtures, g.exec());
      w.emit("verify", Json{{"record", true}, {"fixtures", a.fixtures}}, Json{{"recorded", n}});
      return;
    }
    std::vector<int> failed;
    auto report = [&](const verify::CriterionResult& r) {
      const bool passed = w.timing() ? r.passed() : r.ok;
      if (!passed) failed.push_back(r.id);
      Json result{{"id", r.id}, {"name", r.name}, {"passed", passed}, {"ok", r.ok}};
      if (w.timing()) result["budget_ms"] = r.budget_ms;
      result["detail"] = r.detail;
      w.emit("verify", Json{{"criterion", r.id}}, result);
    };
    if (a.criterion != 0) {
      report(verify::run_criterion(a.criterion, g.exec()));
    } else {
      verify::run_acceptance(g.exec(), report);
    }
    const auto fx = verify::check_fixtures(a.fixtures, g.exec());
    Json mism = Json::array();
    for (const auto& m : fx.mismatches) mism.push_back(Json{{"key", m.key}, {"command", m.command}, {"reason", m.reason}});
    w.emit("verify", Json{{"fixtures", a.fixtures}},
           Json{{"fixtures_present", fx.present}, {"checked", fx.checked}, {"mismatches", mism}});
    const bool fixtures_ok = !fx.present || fx.mismatches.empty();
    w.emit("verify", Json{{"summary", true}},
           Json{{"failed", failed}, {"fixtures_ok", fixtures_ok}, {"all_passed", failed.empty() && fixtures_ok}});
    if (!failed.empty() || !fixtures_ok) status = kVerifyFailed;
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Globals g;
  Args a;
  Registry reg;
  int status = kSuccess;

  CLI::App app{"psc-lab: arithmetic of floor(p^c) at desk scale", "psc-lab"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", version());
  app.fallthrough();
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"jsonl", "csv"}))->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads (results never depend on it)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random weights")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance for bisection commands");
  app.add_flag("--no-timing", g.no_timing, "report elapsed_ms as 0");
  app.set_config("--config", "", "flat key=value file; flags override it");
  app.config_formatter(std::make_shared<FlatConfig>(&app));

  register_sequence_commands(app, a, g, reg);
  register_expsum(app, a, g, reg);
  register_constants(app, a, g, reg);
  register_verify(app, a, g, reg, status);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  const auto it = std::find_if(reg.actions.begin(), reg.actions.end(), [&](const auto& p) { return p.first == leaf; });
  if (it == reg.actions.end()) {
    err << "psc-lab: no command given\n";
    return kUsage;
  }

  Writer writer(out, g.format == "csv", !g.no_timing);
  try {
    it->second(writer);
  } catch (const Error& e) {
    writer.finish();
    err << "psc-lab: " << e.what() << '\n';
    return is_resource_error(e.code()) ? kResourceCap : kUsage;
  } catch (const std::exception& e) {
    writer.finish();
    err << "psc-lab: " << e.what() << '\n';
    return kUsage;
  }
  writer.finish();
  return status;
}

}  // namespace psc::cli
