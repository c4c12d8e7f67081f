#pragma once

#include <cstdint>
#include <vector>

#include "psc/config.hpp"
#include "psc/rational.hpp"

namespace psc {

// Deterministic for every 64-bit n (strong-pseudoprime test to the first
// twelve prime bases).
bool is_prime(std::uint64_t n);

struct PrimalityVerdict {
  bool prime = false;
  bool probabilistic = false;  // true when n >= 2^64 and the verdict is "prime"
};

// n < 2^127. Below 2^64 this defers to the deterministic test; above, 64
// strong-pseudoprime rounds with bases from a fixed-seed generator plus a
// strong Lucas test. Errors: InvalidArgument for n >= 2^127.
PrimalityVerdict is_prime_u128(u128 n);

struct PrimePower {
  u128 p;
  unsigned k;
};

struct Factorization {
  std::vector<PrimePower> factors;  // ascending p
  u128 unfactored = 1;              // composite cofactor left when the budget ran out
  bool complete = true;
  bool probabilistic = false;       // some factor above 2^64 was certified only probabilistically
};

// Trial division to 10^5, then Brent's variant of Pollard rho with the
// polynomial constants 1, 2, 3, ... in turn. Never throws on budget
// exhaustion; reports complete = false instead.
Factorization factorize(u128 n, const Caps& caps = Caps::current());

struct FactorSignature {
  u128 n = 1;
  unsigned omega_big = 0;  // prime factors with multiplicity
  bool squarefree = true;
  bool prime = false;
  bool probabilistic = false;
};

// Errors: InvalidArgument (n = 0 or n >= 2^127), FactorizationTimeout (the
// message names the unfactored cofactor).
FactorSignature factor_signature(u128 n, const Caps& caps = Caps::current());

}  // namespace psc
