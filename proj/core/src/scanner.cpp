#include "gbftk/scanner.hpp"

#include <algorithm>

#include "gbftk/parallel.hpp"

namespace gbftk::scanner {

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

// ord_p(a) for 64-bit prime p, factoring p-1 by trial division over the
// supplied prime list (which must reach sqrt(p-1)).
u64 order_u64(u64 a, u64 p, const std::vector<u64>& primes)
{
    u64 phi = p - 1;
    u64 rest = phi;
    std::vector<u64> prime_factors;
    for (u64 q : primes) {
        if (q * q > rest) break;
        if (rest % q == 0) {
            prime_factors.push_back(q);
            while (rest % q == 0) rest /= q;
        }
    }
    if (rest > 1) prime_factors.push_back(rest);

    u64 t = phi;
    for (u64 q : prime_factors)
        while (t % q == 0 && powmod_u64(a, t / q, p) == 1) t /= q;
    return t;
}

bool parity_matches(const Int& f, FParity want)
{
    switch (want) {
        case FParity::Any: return true;
        case FParity::Odd: return mpz_odd_p(f.get_mpz_t()) != 0;
        case FParity::Even: return mpz_even_p(f.get_mpz_t()) != 0;
    }
    return false;
}

void validate_filter(const ScanFilter& f)
{
    if (f.lo < 3) throw std::invalid_argument("scan range must start at lo >= 3");
    if (f.hi && *f.hi < f.lo) throw std::invalid_argument("scan range is inverted");
    if (f.p_mod_8 && (*f.p_mod_8 >= 8 || *f.p_mod_8 % 2 == 0))
        throw std::invalid_argument("p mod 8 must be an odd residue");
    if (f.q < 2 || !arith::is_prime(f.q))
        throw std::invalid_argument("scan base q must be prime");
    if (f.g && *f.g < 1) throw std::invalid_argument("g must be positive");
    if (f.require_certified) {
        const auto& c = *f.require_certified;
        if (c.n < 1 || mpz_even_p(c.n.get_mpz_t()))
            throw std::invalid_argument("certification n must be odd and positive");
        if (c.e < 1) throw std::invalid_argument("certification e must be >= 1");
    }
}

struct BlockOutcome {
    std::vector<ScanHit> hits;
    std::uint64_t examined = 0;
    std::vector<std::string> warnings;
};

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i <= limit / i)
            for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

ScanResult scan(const ScanFilter& filter, std::size_t max_results,
                const ScanConfig& cfg)
{
    validate_filter(filter);

    // candidate arithmetic progression: odd numbers, or a residue class mod 8
    Int start = filter.lo;
    unsigned long step = 2;
    if (mpz_even_p(start.get_mpz_t())) start += 1;
    if (filter.p_mod_8) {
        step = 8;
        while (to_u64(start % 8) != *filter.p_mod_8) start += 2;
    }

    ScanResult result;
    if (filter.hi && start > *filter.hi) return result;
    if (max_results == 0) return result;

    // number of candidates in range, clamped by the examination budget
    Int span_candidates;
    if (filter.hi)
        span_candidates = (*filter.hi - start) / step + 1;
    const Int budget(static_cast<unsigned long>(cfg.candidate_budget));
    const bool budget_limited = !filter.hi || span_candidates > budget;
    Int total = budget_limited ? budget : span_candidates;

    const u64 block = std::max<u64>(cfg.block, 16);
    const u64 nblocks = (to_u64(total) + block - 1) / block;

    bool hit_budget_wall = false;
    ordered_blocks(
        nblocks, cfg.threads,
        [&](u64 b) {
            BlockOutcome out;
            Int p = start + Int(b * block) * step;
            for (u64 i = 0; i < block; ++i, p += step) {
                if (Int(b * block + i) >= total) break;
                if (filter.hi && p > *filter.hi) break;
                ++out.examined;
                if (!arith::is_prime(p, cfg.factor.seed)) continue;

                const bool needs_order =
                    filter.g.has_value() || filter.f_parity != FParity::Any ||
                    filter.require_certified.has_value();
                if (needs_order) {
                    Int f;
                    try {
                        f = arith::mult_order(filter.q, p, cfg.factor).order;
                    } catch (const budget_error&) {
                        out.warnings.push_back(
                            "skipped p=" + to_decimal(p) +
                            ": factoring budget exceeded for p-1");
                        continue;
                    }
                    if (filter.g && (p - 1) / f != *filter.g) continue;
                    if (!parity_matches(f, filter.f_parity)) continue;
                    if (filter.require_certified) {
                        auto cert = criterion::norm_criterion(
                            filter.q, filter.require_certified->n, p,
                            filter.require_certified->e, cfg.factor);
                        if (cert.verdict != criterion::Verdict::NonexistenceCertified)
                            continue;
                        out.hits.push_back(ScanHit{p, std::move(cert)});
                        continue;
                    }
                }
                out.hits.push_back(ScanHit{p, std::nullopt});
            }
            return out;
        },
        [&](u64 b, BlockOutcome out) {
            result.examined += out.examined;
            for (auto& w : out.warnings) result.warnings.push_back(std::move(w));
            for (auto& h : out.hits) {
                if (result.hits.size() < max_results)
                    result.hits.push_back(std::move(h));
            }
            if (result.hits.size() >= max_results) return false;
            if (b + 1 == nblocks && budget_limited) hit_budget_wall = true;
            return true;
        });

    if (hit_budget_wall && result.hits.size() < max_results)
        throw budget_error("scan: candidate budget (" +
                           std::to_string(cfg.candidate_budget) +
                           ") exhausted before " + std::to_string(max_results) +
                           " results were found");
    return result;
}

SmallestResult smallest_certified(const Int& n, const Int& g, FParity f_parity,
                                  std::optional<unsigned> p_mod_8,
                                  const ScanConfig& cfg)
{
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("n must be odd and positive");
    if (g < 1) throw std::invalid_argument("g must be positive");
    if (f_parity == FParity::Any)
        throw std::invalid_argument(
            "the order parity must be fixed to infer the search floor");
    if (f_parity == FParity::Odd && mpz_odd_p(g.get_mpz_t()))
        throw std::invalid_argument("odd order forces even g");

    // No prime at or below 2^(2*B(l)+n*l) can certify, so start just above.
    const Int l = (f_parity == FParity::Odd) ? g / 2 : g;
    const Int exponent = 2 * arith::two_part(l) + n * l;
    if (exponent > Int(1u << 20))
        throw budget_error("smallest_certified: search floor 2^" +
                           to_decimal(exponent) + " is out of reach");
    Int floor = pow2(to_u64(exponent));

    ScanFilter filter;
    filter.q = 2;
    filter.g = g;
    filter.f_parity = f_parity;
    filter.p_mod_8 = p_mod_8;
    filter.require_certified = ScanFilter::Certify{n, 1};
    filter.lo = floor + 1;

    ScanResult res = scan(filter, 1, cfg);
    if (res.hits.empty())
        throw budget_error("smallest_certified: no certified prime within budget");
    return SmallestResult{res.hits.front().p,
                          std::move(*res.hits.front().certificate), res.examined,
                          std::move(res.warnings)};
}

DensityReport density(const Int& q, const Int& n, const Int& g, std::uint64_t x,
                      bool apply_bound, const ScanConfig& cfg)
{
    if (x > cfg.sieve_ceiling)
        throw budget_error("density: x exceeds the sieve ceiling " +
                           std::to_string(cfg.sieve_ceiling));
    if (!arith::is_prime(q)) throw std::invalid_argument("q must be prime");
    if (g < 1) throw std::invalid_argument("g must be positive");
    if (n < 1) throw std::invalid_argument("n must be positive");

    DensityReport rep;
    rep.q = q;
    rep.n = n;
    rep.g = g;
    rep.x = x;
    rep.bound_applied = apply_bound;

    if (x < 2) return rep;
    const std::vector<u64> primes = primes_up_to(x);
    rep.pi_x = primes.size();

    const bool q_small = fits_u64(q);
    const u64 qu = q_small ? to_u64(q) : 0;

    for (u64 p : primes) {
        if (p == 2) continue;
        if (q_small ? (qu % p == 0) : mpz_divisible_ui_p(q.get_mpz_t(), p))
            continue;
        const u64 f = order_u64(q_small ? qu % p : to_u64(q % p), p, primes);
        if (f == 1) continue;
        if ((p - 1) % f != 0 || Int((p - 1) / f) != g) continue;

        if (apply_bound) {
            const Int l = (f % 2 == 0) ? g : g / 2;
            if (l < 1) continue;
            auto cert = criterion::norm_criterion(q, n, Int(p), 1, cfg.factor);
            if (cert.verdict != criterion::Verdict::NonexistenceCertified) continue;
        }
        ++rep.m_count;
    }
    return rep;
}

std::vector<std::uint64_t> wieferich_scan(std::uint64_t q, std::uint64_t limit,
                                          const ScanConfig& cfg)
{
    if (limit > cfg.sieve_ceiling)
        throw budget_error("wieferich_scan: limit exceeds the sieve ceiling " +
                           std::to_string(cfg.sieve_ceiling));
    if (!arith::is_prime(from_u64(q)))
        throw std::invalid_argument("q must be prime");

    std::vector<u64> out;
    if (limit < 2) return out;
    for (u64 p : primes_up_to(limit)) {
        if (q % p == 0) continue;
        const u64 p2 = p * p;
        if (powmod_u64(q % p2, p - 1, p2) == 1) out.push_back(p);
    }
    return out;
}

}  // namespace gbftk::scanner
