#include "gbftk/criterion.hpp"

#include <sstream>

namespace gbftk::criterion {

namespace {

// Exact test "value > 2^exp2 * q^exp" that never materializes numbers much
// larger than value itself: the accumulator in the binary exponentiation only
// grows, so the first overflow past value settles the comparison.
bool exceeds_bound(const Int& value, const Int& exp2, const Int& q, const Int& exp)
{
    if (exp2 >= Int(static_cast<unsigned long>(bit_length(value))))
        return false;  // 2^exp2 >= 2^bitlen(value) > value
    Int acc = pow2(to_u64(exp2));
    Int base = q, e = exp;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) {
            acc *= base;
            if (acc > value) return false;
        }
        e >>= 1;
        if (e > 0) {
            base *= base;
            // a set bit remains, so the final product is at least acc * base
            if (base > value) return false;
        }
    }
    return value > acc;
}

// Exact bound 2^exp2 * q^exp, or nullopt when it cannot fit in bit_cap bits.
std::optional<Int> build_bound(const Int& exp2, const Int& q, const Int& exp,
                               std::size_t bit_cap)
{
    const Int cap(static_cast<unsigned long>(bit_cap));
    // bits(bound) >= exp2 + exp*(bitlen(q)-1)
    if (exp2 + exp * static_cast<unsigned long>(bit_length(q) - 1) > cap)
        return std::nullopt;
    Int r;
    mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), to_u64(exp));
    r <<= to_u64(exp2);
    if (bit_length(r) > bit_cap) return std::nullopt;
    return r;
}

void validate_inputs(const Int& q, const Int& n, const Int& p, unsigned e,
                     std::uint64_t seed)
{
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("n must be an odd positive integer");
    if (e < 1) throw std::invalid_argument("e must be >= 1");
    if (q == p) throw std::invalid_argument("p and q must be distinct");
    if (!arith::is_prime(q, seed))
        throw std::invalid_argument("q must be prime");
    if (!arith::is_prime(p, seed))
        throw std::invalid_argument("p must be prime");
}

}  // namespace

std::string to_string(Verdict v)
{
    return v == Verdict::NonexistenceCertified ? "NonexistenceCertified"
                                               : "Inconclusive";
}

Certificate norm_criterion(const Int& q, const Int& n, const Int& p, unsigned e,
                           const arith::FactorConfig& cfg)
{
    validate_inputs(q, n, p, e, cfg.seed);

    Certificate cert;
    cert.q = q;
    cert.n = n;
    cert.p = p;
    cert.e = e;

    cert.f = arith::mult_order(q, p, cfg).order;
    cert.g = (p - 1) / cert.f;
    const bool f_even = mpz_even_p(cert.f.get_mpz_t());
    cert.l = f_even ? cert.g : cert.g / 2;
    cert.two_part_l = arith::two_part(cert.l);

    // bound = 4^B(l) * q^(n*l) = 2^(2*B(l)) * q^(n*l)
    const Int exp2 = 2 * cert.two_part_l;
    const Int nl = n * cert.l;
    cert.bound_exp2 = (q == 2) ? exp2 + nl : Int(0);
    {
        std::ostringstream form;
        if (q == 2)
            form << "2^" << to_decimal(exp2 + nl);
        else
            form << "4^" << to_decimal(cert.two_part_l) << "*" << to_decimal(q)
                 << "^" << to_decimal(nl);
        cert.bound_form = form.str();
    }
    cert.bound = build_bound(exp2, q, nl, kBoundBitCap);

    bool ok = true;
    auto note = [&](const std::string& line) { cert.reasons.push_back(line); };

    if (cert.f > 1) {
        note("f>1: pass; f=" + to_decimal(cert.f));
    } else {
        note("f>1: fail; f=1 (q is a trivial residue mod p)");
        ok = false;
    }

    if (e == 1) {
        note("wieferich: not-applicable (e=1)");
    } else {
        bool lifts = powmod(q, cert.f, p * p) != 1;
        cert.wieferich_ok = lifts;
        if (lifts) {
            note("wieferich: pass; q^f != 1 (mod p^2)");
        } else {
            note("wieferich: fail; q^f == 1 (mod p^2)");
            ok = false;
        }
    }

    if (exceeds_bound(p, exp2, q, nl)) {
        note("bound: pass; p > " + cert.bound_form);
    } else {
        note("bound: fail; p <= " + cert.bound_form);
        ok = false;
    }

    cert.verdict = ok ? Verdict::NonexistenceCertified : Verdict::Inconclusive;
    return cert;
}

Certificate gbf_criterion(const Int& n, const Int& p, unsigned e,
                          const arith::FactorConfig& cfg)
{
    if (p == 2) throw std::invalid_argument("p must be an odd prime");
    return norm_criterion(2, n, p, e, cfg);
}

KnownResultFlags classify_known(const Int& n, const Int& p, unsigned e,
                                const arith::FactorConfig& cfg)
{
    if (p < 3 || !arith::is_prime(p, cfg.seed))
        throw std::invalid_argument("p must be an odd prime");
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("n must be an odd positive integer");
    if (e < 1) throw std::invalid_argument("e must be >= 1");

    KnownResultFlags flags;
    Int f = arith::mult_order(Int(2), p, cfg).order;
    flags.f_odd = mpz_odd_p(f.get_mpz_t());
    flags.p_mod_8 = static_cast<unsigned>(to_u64(p % 8));
    flags.n_is_one = (n == 1);

    Int modulus = pow_int(p, e);
    Int ordpe = arith::ord_prime_power(Int(2), p, e, cfg).order;
    if (mpz_even_p(ordpe.get_mpz_t())) {
        // the cyclic group mod p^e has a unique element of order 2, namely -1
        flags.kumar_applies = (powmod(Int(2), ordpe / 2, modulus) == modulus - 1);
    }

    flags.new_case = (flags.p_mod_8 == 1) && (n >= 3) && flags.f_odd;
    return flags;
}

}  // namespace gbftk::criterion
