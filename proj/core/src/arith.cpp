#include "gbftk/arith.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace gbftk::arith {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

u64 powmod_u64(u64 a, u64 e, u64 m)
{
    if (m == 1) return 0;
    u64 r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool mr_witness_u64(u64 n, u64 a, u64 d, int s)
{
    // returns true if a proves n composite
    a %= n;
    if (a == 0) return false;
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

// Fixed witness set: deterministic for all n < 2^64 (and far beyond the
// published 3.3*10^24 bound for the first 13 prime bases).
constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool is_prime_u64(u64 n)
{
    if (n < 2) return false;
    for (u64 p : kWitnesses) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (u64 a : kWitnesses)
        if (mr_witness_u64(n, a, d, s)) return false;
    return true;
}

bool mr_witness_mpz(const Int& n, const Int& a, const Int& d, unsigned long s)
{
    Int x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n - 1) return false;
    }
    return true;
}

const std::vector<u64>& small_primes()
{
    static const std::vector<u64> primes = [] {
        constexpr u64 kLimit = 10000;
        std::vector<bool> sieve(kLimit + 1, true);
        std::vector<u64> out;
        for (u64 i = 2; i <= kLimit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (u64 j = i * i; j <= kLimit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

u64 gcd_u64(u64 a, u64 b)
{
    while (b) { u64 t = a % b; a = b; b = t; }
    return a;
}

// Brent's variant of Pollard rho on 64-bit values. Returns a nontrivial
// factor of composite odd n, or 0 if the iteration budget ran dry.
u64 rho_brent_u64(u64 n, u64 c, u64& budget)
{
    u64 y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const u64 batch = 128;
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
        for (u64 k = 0; k < r && g == 1; k += batch) {
            ys = y;
            u64 lim = std::min(batch, r - k);
            if (lim > budget) { budget = 0; return 0; }
            budget -= lim;
            for (u64 i = 0; i < lim; ++i) {
                y = (mulmod_u64(y, y, n) + c) % n;
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = gcd_u64(q, n);
        }
        r <<= 1;
        if (budget == 0) return 0;
    }
    if (g == n) {
        // backtrack one step at a time
        do {
            ys = (mulmod_u64(ys, ys, n) + c) % n;
            g = gcd_u64(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

Int rho_brent_mpz(const Int& n, unsigned long c, u64& budget)
{
    Int y = 2, x, ys, q = 1, g = 1;
    u64 r = 1;
    const u64 batch = 128;
    auto step = [&](Int& v) { v = (v * v + c) % n; };
    while (g == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) step(y);
        for (u64 k = 0; k < r && g == 1; k += batch) {
            ys = y;
            u64 lim = std::min(batch, r - k);
            if (lim > budget) { budget = 0; return 0; }
            budget -= lim;
            for (u64 i = 0; i < lim; ++i) {
                step(y);
                q = q * abs(x - y) % n;
            }
            g = gcd(q, n);
        }
        r <<= 1;
        if (budget == 0) return 0;
    }
    if (g == n) {
        do {
            step(ys);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g == n ? Int(0) : g;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out, u64& budget,
                 std::uint64_t seed);

// Splits composite n (odd, no small factors, not prime) and recurses.
void split_composite(const Int& n, std::map<Int, unsigned>& out, u64& budget,
                     std::uint64_t seed)
{
    // Perfect powers defeat rho's birthday argument; peel them first.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= bit_length(n); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
                std::map<Int, unsigned> base;
                factor_into(root, base, budget, seed);
                for (const auto& [p, e] : base) out[p] += e * k;
                return;
            }
        }
    }

    Int d = 0;
    // Deterministic constant sequence: c = 1, then seed-derived odd values.
    SplitMix64 rng(seed ^ to_u64(n % from_u64(0xffffffffffffffffULL)));
    unsigned long c = 1;
    for (int attempt = 0; d == 0; ++attempt) {
        if (budget == 0)
            throw budget_error("factor: rho iteration budget exhausted for " +
                               to_decimal(n));
        if (fits_u64(n)) {
            u64 f = rho_brent_u64(to_u64(n), c, budget);
            if (f != 0) d = from_u64(f);
        } else {
            d = rho_brent_mpz(n, c, budget);
        }
        c = (rng.next() % 0xffff) * 2 + 3;
    }
    factor_into(d, out, budget, seed);
    factor_into(n / d, out, budget, seed);
}

void factor_into(const Int& n, std::map<Int, unsigned>& out, u64& budget,
                 std::uint64_t seed)
{
    if (n == 1) return;
    if (is_prime(n, seed)) {
        out[n] += 1;
        return;
    }
    split_composite(n, out, budget, seed);
}

}  // namespace

Int Factorization::product() const
{
    Int r = 1;
    for (const auto& [p, e] : factors) r *= pow_int(p, e);
    return r;
}

bool is_prime(const Int& n, std::uint64_t seed)
{
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));

    for (u64 p : kWitnesses)
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)))
            return false;

    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;

    // Fixed small witnesses first, then 64 seed-derived rounds.
    for (u64 w : kWitnesses)
        if (mr_witness_mpz(n, Int(static_cast<unsigned long>(w)), d, s)) return false;

    SplitMix64 rng(seed);
    const std::size_t words = (bit_length(n) + 63) / 64;
    for (int round = 0; round < 64; ++round) {
        Int a = 0;
        for (std::size_t w = 0; w < words; ++w) a = (a << 64) | from_u64(rng.next());
        a = a % (n - 3) + 2;  // witness in [2, n-2]
        if (mr_witness_mpz(n, a, d, s)) return false;
    }
    return true;
}

Factorization factor(const Int& n, const FactorConfig& cfg)
{
    if (n < 2) throw std::invalid_argument("factor: n must be >= 2");

    std::map<Int, unsigned> acc;
    Int m = n;
    for (u64 p : small_primes()) {
        if (Int(p) * Int(p) > m) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
            acc[from_u64(p)] += 1;
            m /= static_cast<unsigned long>(p);
        }
    }
    if (m > 1) {
        u64 budget = cfg.rho_budget;
        factor_into(m, acc, budget, cfg.seed);
    }

    Factorization out;
    out.value = n;
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

OrderResult mult_order(const Int& a, const Int& m, const FactorConfig& cfg)
{
    if (m < 2) throw std::invalid_argument("mult_order: modulus must be >= 2");
    if (gcd(a, m) != 1)
        throw std::invalid_argument("mult_order: gcd(a, m) != 1");

    // phi(m) from the factorization of m; the element order divides it.
    Factorization fm = factor(m, cfg);
    Int phi = 1;
    for (const auto& [p, e] : fm.factors) phi *= pow_int(p, e - 1) * (p - 1);
    if (phi == 1) return OrderResult{a, m, 1};

    Factorization fphi = factor(phi, cfg);
    Int t = phi;
    for (const auto& [p, e] : fphi.factors) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = t / p;
            if (powmod(a, cand, m) == 1)
                t = cand;
            else
                break;
        }
    }
    return OrderResult{a, m, t};
}

Int two_part(const Int& a)
{
    if (a < 1) throw std::invalid_argument("two_part: a must be >= 1");
    return pow2(mpz_scan1(a.get_mpz_t(), 0));
}

OrderResult ord_prime_power(const Int& a, const Int& p, unsigned e,
                            const FactorConfig& cfg)
{
    if (e < 1) throw std::invalid_argument("ord_prime_power: e must be >= 1");
    if (p < 3 || !is_prime(p, cfg.seed))
        throw std::invalid_argument("ord_prime_power: p must be an odd prime");
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("ord_prime_power: p divides a");

    if (e == 1) return mult_order(a, p, cfg);

    OrderResult base = mult_order(a, p, cfg);
    if (powmod(a, base.order, p * p) != 1) {
        // Order lifts multiplicatively through every power of p.
        return OrderResult{a, pow_int(p, e), base.order * pow_int(p, e - 1)};
    }
    return mult_order(a, pow_int(p, e), cfg);
}

bool is_wieferich_base(const Int& q, const Int& p)
{
    if (p < 2) throw std::invalid_argument("is_wieferich_base: p must be prime");
    if (mpz_divisible_p(q.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("is_wieferich_base: p divides q");
    return powmod(q, p - 1, p * p) == 1;
}

}  // namespace gbftk::arith
