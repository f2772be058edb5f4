#include "gbftk/gbf.hpp"

#include <algorithm>

#include "gbftk/parallel.hpp"

namespace gbftk::gbf {

namespace {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > cap / base)
            throw std::invalid_argument("type [n, t] is too large to materialize");
        r *= base;
    }
    return r;
}

// digits of index in base t, least significant first
inline std::uint32_t digit(std::uint64_t index, unsigned k, unsigned t)
{
    for (unsigned i = 0; i < k; ++i) index /= t;
    return static_cast<std::uint32_t>(index % t);
}

// x . lambda mod t for two mixed-radix indices
std::uint32_t dot_mod(std::uint64_t x, std::uint64_t lambda, unsigned n, unsigned t)
{
    std::uint64_t acc = 0;
    for (unsigned k = 0; k < n; ++k) {
        acc += std::uint64_t(x % t) * (lambda % t);
        x /= t;
        lambda /= t;
    }
    return static_cast<std::uint32_t>(acc % t);
}

// Spectrum value as raw root-of-unity exponent counts (length t), cheap to
// conjugate and multiply cyclically before the single reduction mod Phi_t.
std::vector<Int> spectrum_counts(const GBFCandidate& c, std::uint64_t lambda)
{
    const std::uint64_t points = point_count(c);
    std::vector<Int> cnt(c.t, Int(0));
    for (std::uint64_t x = 0; x < points; ++x) {
        std::uint32_t e = (c.table[x] + c.t - dot_mod(x, lambda, c.n, c.t)) % c.t;
        cnt[e] += 1;
    }
    return cnt;
}

cyclo::CyclotomicInt counts_to_element(unsigned t, std::vector<Int> cnt)
{
    return cyclo::CyclotomicInt::from_root_powers(t, std::move(cnt));
}

}  // namespace

void validate(const GBFCandidate& c)
{
    if (c.t < 2) throw std::invalid_argument("t must be >= 2");
    if (c.n < 1) throw std::invalid_argument("n must be >= 1");
    const std::uint64_t points = checked_pow(c.t, c.n, std::uint64_t(1) << 40);
    if (c.table.size() != points)
        throw std::invalid_argument("table must have exactly t^n entries");
    for (std::uint32_t v : c.table)
        if (v >= c.t) throw std::invalid_argument("table entries must lie in [0, t)");
}

std::uint64_t point_count(const GBFCandidate& c)
{
    return checked_pow(c.t, c.n, std::uint64_t(1) << 40);
}

cyclo::CyclotomicInt fourier(const GBFCandidate& c, std::uint64_t lambda)
{
    validate(c);
    if (lambda >= point_count(c))
        throw std::invalid_argument("lambda index out of range");
    return counts_to_element(c.t, spectrum_counts(c, lambda));
}

namespace {

// |F(lambda)|^2 as an exact element: multiply the count vector by its
// exponent-negation cyclically, reduce once.
cyclo::CyclotomicInt flatness_value(const GBFCandidate& c, std::uint64_t lambda)
{
    const unsigned t = c.t;
    std::vector<Int> cnt = spectrum_counts(c, lambda);
    std::vector<Int> prod(t, Int(0));
    for (unsigned i = 0; i < t; ++i) {
        if (cnt[i] == 0) continue;
        for (unsigned j = 0; j < t; ++j) {
            if (cnt[j] == 0) continue;
            prod[(i + t - j) % t] += cnt[i] * cnt[j];  // zeta^i * conj(zeta^j)
        }
    }
    return counts_to_element(t, prod);
}

bool is_gbf_validated(const GBFCandidate& c)
{
    const std::uint64_t points = point_count(c);
    const cyclo::CyclotomicInt target =
        cyclo::CyclotomicInt::from_integer(c.t, Int(points));
    for (std::uint64_t lambda = 0; lambda < points; ++lambda)
        if (!(flatness_value(c, lambda) == target)) return false;
    return true;
}

}  // namespace

std::vector<SpectrumEntry> spectrum(const GBFCandidate& c)
{
    validate(c);
    const std::uint64_t points = point_count(c);
    const cyclo::CyclotomicInt target =
        cyclo::CyclotomicInt::from_integer(c.t, Int(points));
    std::vector<SpectrumEntry> out;
    out.reserve(points);
    for (std::uint64_t lambda = 0; lambda < points; ++lambda) {
        SpectrumEntry e{lambda, counts_to_element(c.t, spectrum_counts(c, lambda)),
                        false};
        e.flat = (flatness_value(c, lambda) == target);
        out.push_back(std::move(e));
    }
    return out;
}

bool is_gbf(const GBFCandidate& c)
{
    validate(c);
    return is_gbf_validated(c);
}

bool parseval_holds(const GBFCandidate& c)
{
    validate(c);
    const std::uint64_t points = point_count(c);
    cyclo::CyclotomicInt sum(c.t);
    for (std::uint64_t lambda = 0; lambda < points; ++lambda)
        sum = cyc_add(sum, flatness_value(c, lambda));
    return sum == cyclo::CyclotomicInt::from_integer(c.t, Int(points) * Int(points));
}

bool inversion_holds(const GBFCandidate& c)
{
    validate(c);
    const std::uint64_t points = point_count(c);
    std::vector<cyclo::CyclotomicInt> spectrum;
    spectrum.reserve(points);
    for (std::uint64_t lambda = 0; lambda < points; ++lambda)
        spectrum.push_back(counts_to_element(c.t, spectrum_counts(c, lambda)));
    for (std::uint64_t x = 0; x < points; ++x) {
        cyclo::CyclotomicInt sum(c.t);
        for (std::uint64_t lambda = 0; lambda < points; ++lambda) {
            std::uint32_t e = dot_mod(x, lambda, c.n, c.t);
            sum = cyc_add(sum,
                          cyc_mul(spectrum[lambda],
                                  cyclo::CyclotomicInt::zeta_power(c.t, e)));
        }
        cyclo::CyclotomicInt expect =
            cyc_mul(cyclo::CyclotomicInt::from_integer(c.t, Int(points)),
                    cyclo::CyclotomicInt::zeta_power(c.t, c.table[x]));
        if (!(sum == expect)) return false;
    }
    return true;
}

SearchResult exhaustive_search(unsigned n, unsigned t, std::uint64_t limit,
                               unsigned threads)
{
    if (t < 2 || n < 1) throw std::invalid_argument("need t >= 2 and n >= 1");
    const std::uint64_t points = checked_pow(t, n, std::uint64_t(1) << 32);
    Int candidates = pow_int(Int(t), points);
    if (candidates > Int(limit))
        throw budget_error("exhaustive_search: " + to_decimal(candidates) +
                           " candidates exceed limit " + std::to_string(limit));

    // one block per leading table entry; lexicographic within a block
    const std::uint64_t per_block = to_u64(candidates) / t;
    struct Block {
        std::uint64_t examined = 0;
        std::vector<std::vector<std::uint32_t>> hits;
    };

    SearchResult result;
    ordered_blocks(
        t, threads,
        [&](std::uint64_t lead) {
            Block blk;
            GBFCandidate c{n, t, std::vector<std::uint32_t>(points, 0)};
            c.table[0] = static_cast<std::uint32_t>(lead);
            for (std::uint64_t i = 0; i < per_block; ++i) {
                // decode i as the remaining digits, table[1] most significant
                std::uint64_t rest = i;
                for (std::uint64_t k = points; k-- > 1;) {
                    c.table[k] = static_cast<std::uint32_t>(rest % t);
                    rest /= t;
                }
                ++blk.examined;
                if (is_gbf_validated(c)) blk.hits.push_back(c.table);
            }
            return blk;
        },
        [&](std::uint64_t, Block blk) {
            result.examined += blk.examined;
            for (auto& h : blk.hits) result.tables.push_back(std::move(h));
            return true;
        });
    return result;
}

}  // namespace gbftk::gbf
