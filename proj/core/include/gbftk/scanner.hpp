#pragma once

// Prime scanning and counting: filtered scans with optional nonexistence
// certification, smallest-certified-prime searches above the analytic floor,
// empirical order-condition density counts, and Wieferich scans. Scans shard
// into contiguous candidate blocks so results are identical for any thread
// count.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbftk/arith.hpp"
#include "gbftk/criterion.hpp"
#include "gbftk/integer.hpp"

namespace gbftk::scanner {

enum class FParity { Any, Odd, Even };

struct ScanFilter {
    Int q = 2;
    std::optional<Int> g;  // required value of (p-1)/ord_p(q)
    FParity f_parity = FParity::Any;
    std::optional<unsigned> p_mod_8;

    struct Certify {
        Int n;
        unsigned e = 1;
    };
    std::optional<Certify> require_certified;

    Int lo = 3;              // >= 3
    std::optional<Int> hi;   // inclusive; unset = open-ended (budget-guarded)
};

struct ScanConfig {
    arith::FactorConfig factor{};
    std::uint64_t candidate_budget = 1'000'000;  // candidates examined per call
    std::uint64_t sieve_ceiling = 100'000'000;   // density / wieferich ranges
    unsigned threads = 1;
    std::uint64_t block = 1024;  // candidates per shard
};

struct ScanHit {
    Int p;
    std::optional<criterion::Certificate> certificate;
};

struct ScanResult {
    std::vector<ScanHit> hits;       // ascending p
    std::uint64_t examined = 0;      // candidates tested
    std::vector<std::string> warnings;
};

// Ascending primes in [lo, hi] matching every predicate; with
// require_certified set, only primes whose certificate verdict is
// NonexistenceCertified are kept (certificates attached). Throws budget_error
// when the candidate budget runs out before the range or max_results is
// exhausted.
ScanResult scan(const ScanFilter& filter, std::size_t max_results,
                const ScanConfig& cfg = {});

struct SmallestResult {
    Int p;
    criterion::Certificate certificate;
    std::uint64_t examined = 0;
    std::vector<std::string> warnings;
};

// Least prime with (p-1)/ord_p(2) = g, the given order parity and residue,
// and a certified gbf_criterion(n, p, 1). The search starts right above the
// floor 2^(2*B(l)+n*l), below which no prime can certify.
SmallestResult smallest_certified(const Int& n, const Int& g, FParity f_parity,
                                  std::optional<unsigned> p_mod_8,
                                  const ScanConfig& cfg = {});

struct DensityReport {
    Int q;
    Int n;
    Int g;
    std::uint64_t x = 0;
    std::uint64_t m_count = 0;  // primes <= x meeting the conditions
    std::uint64_t pi_x = 0;     // all primes <= x
    bool bound_applied = true;

    double ratio() const
    {
        return pi_x == 0 ? 0.0 : static_cast<double>(m_count) / static_cast<double>(pi_x);
    }
};

// Exact counts by full sieve enumeration: condition (a) is
// ord_p(q) > 1 and (p-1)/ord_p(q) = g; condition (b) is the criterion bound
// p > 4^B(l) * q^(n*l), dropped when apply_bound is false.
DensityReport density(const Int& q, const Int& n, const Int& g, std::uint64_t x,
                      bool apply_bound = true, const ScanConfig& cfg = {});

// All primes p <= limit with q^(p-1) == 1 (mod p^2).
std::vector<std::uint64_t> wieferich_scan(std::uint64_t q, std::uint64_t limit,
                                          const ScanConfig& cfg = {});

// Simple bit sieve, exposed for reuse and oracle checks.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace gbftk::scanner
