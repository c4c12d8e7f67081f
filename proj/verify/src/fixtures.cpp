#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include "psc/acceptance.hpp"
#include "psc/constants.hpp"
#include "psc/error.hpp"
#include "psc/experiments.hpp"
#include "psc/expsum.hpp"

namespace psc::verify {

namespace {

RationalExponent exponent(const Json& params) { return parse_exponent(params.at("c").get<std::string>()); }
std::uint64_t u(const Json& params, const char* key) { return params.at(key).get<std::uint64_t>(); }

SumOptions options(const Exec& exec) {
  SumOptions opt;
  opt.exec = exec;
  return opt;
}

bool same(const Json& got, const Json& want, std::string& why, const std::string& path) {
  if (got.is_number() && want.is_number()) {
    const double a = got.get<double>(), b = want.get<double>();
    if (std::fabs(a - b) <= 1e-9 * std::max(std::fabs(b), 1.0)) return true;
    why = path + ": " + got.dump() + " vs " + want.dump();
    return false;
  }
  if (got.type() != want.type() || got.size() != want.size()) {
    why = path + ": shape differs";
    return false;
  }
  if (got.is_object()) {
    for (auto it = want.begin(); it != want.end(); ++it) {
      if (!got.contains(it.key())) {
        why = path + "." + it.key() + ": missing";
        return false;
      }
      if (!same(got.at(it.key()), it.value(), why, path + "." + it.key())) return false;
    }
    return true;
  }
  if (got.is_array()) {
    for (std::size_t i = 0; i < want.size(); ++i)
      if (!same(got[i], want[i], why, path + "[" + std::to_string(i) + "]")) return false;
    return true;
  }
  if (got != want) {
    why = path + ": " + got.dump() + " vs " + want.dump();
    return false;
  }
  return true;
}

}  // namespace

std::string fixture_key(const std::string& command, const Json& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : command + "\n" + params.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<FixtureCase> fixture_cases() {
  std::vector<FixtureCase> out;
  auto add = [&](std::string command, Json params, std::function<Json(const Json&, const Exec&)> fn) {
    Json p = params;
    out.push_back({std::move(command), std::move(params), [p, fn](const Exec& e) { return fn(p, e); }});
  };

  auto floor_case = [](const Json& p, const Exec&) {
    return Json{{"value", floor_pow(BigInt(p.at("n").get<std::string>()), exponent(p)).get_str()}};
  };
  add("floor", {{"n", "97"}, {"c", "6/5"}}, floor_case);
  add("floor", {{"n", "123456789012345678901234567890"}, {"c", "10521/10000"}}, floor_case);
  add("floor", {{"n", "99991"}, {"c", "47/16"}}, floor_case);

  add("expsum weyl", {{"c", "5/2"}, {"theta", "1/1"}, {"delta", "3/10"}, {"N", 100}}, [](const Json& p, const Exec& e) {
    return to_json(weyl_sum(exponent(p), parse_rational(p.at("theta").get<std::string>()),
                            parse_rational(p.at("delta").get<std::string>()), u(p, "N"), Rational(1, 1000), options(e)));
  });
  auto prime_case = [](const Json& p, const Exec& e) {
    return to_json(prime_expsum(u(p, "x"), exponent(p), p.at("h").get<std::int64_t>(), u(p, "d"), options(e)));
  };
  add("expsum prime", {{"x", 10}, {"c", "3/2"}, {"h", 1}, {"d", 1}}, prime_case);
  add("expsum prime", {{"x", 100000}, {"c", "11/5"}, {"h", 3}, {"d", 7}}, prime_case);
  add("expsum trilinear",
      {{"D", 8}, {"M", 32}, {"L", 32}, {"h", 1}, {"c", "10521/10000"}, {"weights", "random"}, {"seed", 42}},
      [](const Json& p, const Exec& e) {
        const WeightSpec w{parse_weight_kind(p.at("weights").get<std::string>()), u(p, "seed")};
        return to_json(trilinear_sum(u(p, "D"), u(p, "M"), u(p, "L"), u(p, "h"), exponent(p), w, options(e)));
      });
  add("expsum triple", {{"x", 100}, {"D", 2}, {"H", 2}, {"c", "3/2"}}, [](const Json& p, const Exec& e) {
    return to_json(triple_sum(u(p, "x"), u(p, "D"), u(p, "H"), exponent(p), options(e)));
  });
  add("census", {{"x", 100000}, {"c", "10521/10000"}, {"R", 8}}, [](const Json& p, const Exec& e) {
    return to_json(almost_prime_census(u(p, "x"), exponent(p), static_cast<unsigned>(u(p, "R")), e));
  });
  add("squarefree", {{"x", 100000}, {"c", "7/5"}},
      [](const Json& p, const Exec& e) { return to_json(squarefree_census(u(p, "x"), exponent(p), e)); });
  add("psprimes", {{"x", 100000}, {"c", "3/2"}},
      [](const Json& p, const Exec& e) { return to_json(ps_prime_count(u(p, "x"), exponent(p), e)); });
  add("leveldist", {{"x", 100000}, {"c", "10521/10000"}, {"D", 20}, {"model", "one"}},
      [](const Json& p, const Exec& e) {
        return to_json(level_error(u(p, "x"), exponent(p), u(p, "D"),
                                   parse_density_model(p.at("model").get<std::string>()), false, e));
      });
  add("discrepancy", {{"x", 10000}, {"c", "3/2"}, {"h", 1}, {"d", 1}}, [](const Json& p, const Exec& e) {
    return to_json(star_discrepancy(u(p, "x"), exponent(p), u(p, "h"), u(p, "d"), e));
  });
  for (unsigned R : {8u, 19u})
    for (bool g : {false, true})
      add("constants maxc", {{"R", R}, {"greaves_degree", g}, {"tol", 1e-6}}, [](const Json& p, const Exec&) {
        return to_json(max_c_feasible(static_cast<unsigned>(u(p, "R")), p.at("tol").get<double>(),
                                      p.at("greaves_degree").get<bool>()));
      });
  return out;
}

std::size_t record_fixtures(const std::filesystem::path& dir, const Exec& exec) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / kFixtureFile);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + (dir / kFixtureFile).string());
  const auto cases = fixture_cases();
  for (const auto& c : cases)
    f << Json{{"key", fixture_key(c.command, c.params)}, {"command", c.command}, {"params", c.params},
              {"result", c.compute(exec)}}
             .dump()
      << '\n';
  return cases.size();
}

FixtureCheck check_fixtures(const std::filesystem::path& dir, const Exec& exec) {
  FixtureCheck out;
  std::ifstream f(dir / kFixtureFile);
  if (!f) return out;
  out.present = true;
  std::map<std::string, Json> recorded;
  for (std::string line; std::getline(f, line);)
    if (!line.empty()) {
      Json j = Json::parse(line);
      recorded[j.at("key").get<std::string>()] = j.at("result");
    }
  for (const auto& c : fixture_cases()) {
    const std::string key = fixture_key(c.command, c.params);
    const auto it = recorded.find(key);
    if (it == recorded.end()) {
      out.mismatches.push_back({key, c.command, "not recorded"});
      continue;
    }
    ++out.checked;
    std::string why;
    if (!same(c.compute(exec), it->second, why, "result")) out.mismatches.push_back({key, c.command, why});
  }
  return out;
}

}  // namespace psc::verify
