#pragma once

// Shared arbitrary-precision integer type and small helpers used across the
// toolkit. All randomized internals (probable-prime tests above 2^64, rho
// factoring) draw from an explicit 64-bit seed so every result is
// reproducible bit-for-bit for a fixed seed.

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gbftk {

using Int = mpz_class;

// Default seed for every randomized internal. Overridable per call via the
// config structs (CLI flag --seed).
inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

// A computation exceeded its configured work budget (rho iterations, scan
// ranges, search-space sizes). Never a wrong answer; always an explicit stop.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// A structural verification failed (dual-route mismatch, fixture invariant
// violation detected after parse, failed algebraic check).
class check_error : public std::runtime_error {
public:
    explicit check_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int pow_int(const Int& base, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow2(unsigned long e)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// a^e mod m, m > 0.
inline Int powmod(const Int& a, const Int& e, const Int& m)
{
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline std::size_t bit_length(const Int& a)
{
    if (a == 0) return 0;
    return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline bool fits_u64(const Int& a)
{
    return a >= 0 && mpz_sizeinbase(a.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Int& a)
{
    std::uint64_t lo = mpz_get_ui(a.get_mpz_t());
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 64)
        throw std::overflow_error("to_u64: value exceeds 64 bits");
#if GMP_NUMB_BITS >= 64
    return lo;
#else
    Int hi = a >> 32;
    return (std::uint64_t(mpz_get_ui(hi.get_mpz_t())) << 32) | (lo & 0xffffffffULL);
#endif
}

inline Int from_u64(std::uint64_t v)
{
    Int r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline std::string to_decimal(const Int& a) { return a.get_str(10); }

inline Int parse_decimal(const std::string& s)
{
    Int r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return r;
}

// SplitMix64: tiny deterministic PRNG used to derive witness/seed streams.
// Chosen over std::mt19937_64 so the exact stream is pinned by this code,
// not by a library implementation.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [lo, hi] for hi-lo < 2^64; bias is irrelevant for
    // witness selection but the stream must be deterministic.
    std::uint64_t next_in(std::uint64_t lo, std::uint64_t hi)
    {
        return lo + next() % (hi - lo + 1);
    }

private:
    std::uint64_t state_;
};

}  // namespace gbftk
