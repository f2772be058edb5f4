#pragma once

// Integer number theory on arbitrary-precision values: primality, factoring,
// multiplicative orders, 2-parts, Wieferich tests. Everything here is a pure
// function of its arguments (plus the explicit config), safe to call from
// any number of threads.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gbftk/integer.hpp"

namespace gbftk::arith {

struct FactorConfig {
    // Total Brent-rho iterations allowed per factor() call before giving up
    // with budget_error. Exceeding the budget is an error, never a wrong
    // answer.
    std::uint64_t rho_budget = 100'000'000;
    std::uint64_t seed = kDefaultSeed;
};

struct Factorization {
    Int value;
    std::vector<std::pair<Int, unsigned>> factors;  // (prime, exponent), primes ascending

    // Multiplies the factor list back together; equals value for any object
    // produced by factor().
    Int product() const;
};

struct OrderResult {
    Int base;
    Int modulus;
    Int order;
};

// Deterministic for every input. Exact below 2^64 (fixed Miller-Rabin
// witness set {2,3,5,...,37}); above, 64 Miller-Rabin rounds with witnesses
// drawn from a SplitMix64 stream seeded by `seed`, error probability < 4^-64.
bool is_prime(const Int& n, std::uint64_t seed = kDefaultSeed);

// Complete factorization of n >= 2 by trial division followed by Brent's
// cycle-finding rho with a deterministic seed sequence.
Factorization factor(const Int& n, const FactorConfig& cfg = {});

// Multiplicative order of a modulo m (gcd(a,m)=1, m>=2): factors the group
// order phi(m) and strips prime factors, so it needs no successive powering.
OrderResult mult_order(const Int& a, const Int& m, const FactorConfig& cfg = {});

// Largest power of two dividing a (a >= 1): a = 2^m * a1 with a1 odd gives 2^m.
Int two_part(const Int& a);

// Order of a modulo p^e for an odd prime p not dividing a. For e > 1 the
// order lifts to f*p^(e-1) whenever a^f != 1 (mod p^2) where f = ord_p(a);
// otherwise it is computed directly by order-stripping mod p^e.
OrderResult ord_prime_power(const Int& a, const Int& p, unsigned e,
                            const FactorConfig& cfg = {});

// True when q^(p-1) == 1 (mod p^2), i.e. p is a base-q Wieferich prime.
bool is_wieferich_base(const Int& q, const Int& p);

}  // namespace gbftk::arith
