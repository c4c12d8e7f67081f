#include "psc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace psc {

namespace {

std::uint64_t scale(std::uint64_t v, double factor) {
  const double s = static_cast<double>(v) * factor;
  if (s >= 1.8e19) return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(s));
}

Caps from_environment() {
  Caps caps;
  if (const char* env = std::getenv("PSC_LAB_CAP")) {
    try {
      const double factor = std::stod(env);
      if (std::isfinite(factor) && factor > 0) return caps.scaled(factor);
    } catch (...) {
      // unparsable value: keep defaults
    }
  }
  return caps;
}

}  // namespace

Caps Caps::scaled(double factor) const {
  Caps c = *this;
  c.prime_limit = scale(prime_limit, factor);
  c.mangoldt_limit = scale(mangoldt_limit, factor);
  c.bit_budget = scale(bit_budget, factor);
  c.precision_cap = scale(precision_cap, factor);
  c.weyl_terms = scale(weyl_terms, factor);
  c.trilinear_terms = scale(trilinear_terms, factor);
  c.triple_evaluations = scale(triple_evaluations, factor);
  c.rho_iterations = scale(rho_iterations, factor);
  return c;
}

const Caps& Caps::current() {
  static const Caps caps = from_environment();
  return caps;
}

unsigned Exec::default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

const char* version() { return PSC_VERSION; }

}  // namespace psc
