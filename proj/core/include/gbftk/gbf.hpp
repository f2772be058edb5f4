#pragma once

// Exact Fourier analysis of functions (Z/tZ)^n -> Z/tZ in Z[zeta_t], and
// exhaustive flatness search over all function tables at tiny types. No
// floating point anywhere: flatness means F(lambda) * conj(F(lambda)) equals
// the integer t^n as an element of Z[zeta_t].

#include <cstdint>
#include <vector>

#include "gbftk/cyclotomic.hpp"
#include "gbftk/integer.hpp"

namespace gbftk::gbf {

struct GBFCandidate {
    unsigned n = 1;
    unsigned t = 2;
    // t^n values in [0, t), indexed by x in mixed-radix little-endian order:
    // coordinate k of index i is (i / t^k) % t.
    std::vector<std::uint32_t> table;
};

// throws std::invalid_argument when the table shape or entries are malformed
void validate(const GBFCandidate& c);

std::uint64_t point_count(const GBFCandidate& c);  // t^n

// F(lambda) = sum_x zeta_t^(f(x) - x.lambda), exact in Z[zeta_t];
// lambda is given as a mixed-radix index like x.
cyclo::CyclotomicInt fourier(const GBFCandidate& c, std::uint64_t lambda);

struct SpectrumEntry {
    std::uint64_t lambda = 0;
    cyclo::CyclotomicInt value;  // F(lambda)
    bool flat = false;           // value * conj(value) == t^n exactly
};

// the full spectrum, one entry per lambda in index order
std::vector<SpectrumEntry> spectrum(const GBFCandidate& c);

// true iff F(lambda)*conj(F(lambda)) == t^n exactly for every lambda
bool is_gbf(const GBFCandidate& c);

// sum_lambda F(lambda)*conj(F(lambda)) == t^(2n), exact
bool parseval_holds(const GBFCandidate& c);

// sum_lambda F(lambda)*zeta^(x.lambda) == t^n * zeta^f(x) for every x, exact
bool inversion_holds(const GBFCandidate& c);

struct SearchResult {
    std::uint64_t examined = 0;
    std::vector<std::vector<std::uint32_t>> tables;  // hits, enumeration order
};

// Enumerates every function table for type [n, t] in lexicographic order
// (table[0] most significant) and returns the tables satisfying is_gbf.
// Refuses with budget_error when t^(t^n) exceeds `limit`. Partitioning by
// leading table entry keeps the output identical for any thread count.
SearchResult exhaustive_search(unsigned n, unsigned t,
                               std::uint64_t limit = 10'000'000,
                               unsigned threads = 1);

}  // namespace gbftk::gbf
