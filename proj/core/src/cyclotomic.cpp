#include "gbftk/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "gbftk/arith.hpp"
#include "gbftk/polynomial.hpp"

namespace gbftk::cyclo {

namespace {

struct Ring {
    unsigned m = 0;
    unsigned phi = 0;
    poly::Poly modulus;            // cyclotomic polynomial, monic, degree phi
    std::vector<unsigned> units;   // residues coprime to m, ascending
};

// Per-conductor ring data, memoized behind a mutex. Callers only ever see
// const data, so the cache is invisible to the value semantics.
const Ring& ring(unsigned m)
{
    if (m < 2) throw std::invalid_argument("conductor must be >= 2");
    if (m > kConductorCeiling)
        throw std::invalid_argument("conductor exceeds ceiling " +
                                    std::to_string(kConductorCeiling));
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<Ring>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        auto r = std::make_unique<Ring>();
        r->m = m;
        r->modulus = poly::cyclotomic(m);
        r->phi = static_cast<unsigned>(poly::degree(r->modulus));
        for (unsigned t = 1; t < m; ++t)
            if (std::gcd(t, m) == 1) r->units.push_back(t);
        it = cache.emplace(m, std::move(r)).first;
    }
    return *it->second;
}

// Reduce an arbitrary-degree polynomial in zeta to the canonical power basis.
std::vector<Int> reduce(const Ring& r, poly::Poly p)
{
    // exponent folding first (zeta^m = 1), then division by the minimal poly
    if (poly::degree(p) >= static_cast<int>(r.m)) {
        poly::Poly folded(r.m, Int(0));
        for (std::size_t i = 0; i < p.size(); ++i) folded[i % r.m] += p[i];
        p = std::move(folded);
    }
    poly::normalize(p);
    if (poly::degree(p) >= static_cast<int>(r.phi)) {
        poly::Poly q, rem;
        poly::divrem_monic(p, r.modulus, q, rem);
        p = std::move(rem);
    }
    p.resize(r.phi, Int(0));
    return p;
}

void require_same_conductor(const CyclotomicInt& a, const CyclotomicInt& b)
{
    if (a.conductor() != b.conductor())
        throw std::invalid_argument("conductor mismatch: " +
                                    std::to_string(a.conductor()) + " vs " +
                                    std::to_string(b.conductor()));
}

}  // namespace

CyclotomicInt::CyclotomicInt(unsigned m)
    : conductor_(m), coeffs_(ring(m).phi, Int(0))
{
}

CyclotomicInt::CyclotomicInt(unsigned m, std::vector<Int> coeffs)
    : conductor_(m), coeffs_(std::move(coeffs))
{
    const Ring& r = ring(m);
    if (coeffs_.size() != r.phi)
        throw std::invalid_argument("coefficient vector must have length phi(m)");
}

CyclotomicInt CyclotomicInt::from_integer(unsigned m, const Int& value)
{
    CyclotomicInt a(m);
    a.coeffs_[0] = value;
    return a;
}

CyclotomicInt CyclotomicInt::zeta_power(unsigned m, long k)
{
    const Ring& r = ring(m);
    long e = k % static_cast<long>(m);
    if (e < 0) e += m;
    poly::Poly p(static_cast<std::size_t>(e) + 1, Int(0));
    p[static_cast<std::size_t>(e)] = 1;
    return CyclotomicInt(m, reduce(r, std::move(p)));
}

CyclotomicInt CyclotomicInt::from_root_powers(unsigned m, std::vector<Int> c)
{
    return CyclotomicInt(m, reduce(ring(m), std::move(c)));
}

bool CyclotomicInt::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const Int& c) { return c == 0; });
}

bool CyclotomicInt::is_rational(Int* value) const
{
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    if (value) *value = coeffs_[0];
    return true;
}

CyclotomicInt cyc_add(const CyclotomicInt& a, const CyclotomicInt& b)
{
    require_same_conductor(a, b);
    std::vector<Int> c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
    return CyclotomicInt(a.conductor(), std::move(c));
}

CyclotomicInt cyc_sub(const CyclotomicInt& a, const CyclotomicInt& b)
{
    require_same_conductor(a, b);
    std::vector<Int> c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs()[i];
    return CyclotomicInt(a.conductor(), std::move(c));
}

CyclotomicInt cyc_neg(const CyclotomicInt& a)
{
    std::vector<Int> c = a.coeffs();
    for (Int& x : c) x = -x;
    return CyclotomicInt(a.conductor(), std::move(c));
}

CyclotomicInt cyc_mul(const CyclotomicInt& a, const CyclotomicInt& b)
{
    require_same_conductor(a, b);
    const Ring& r = ring(a.conductor());
    poly::Poly pa = a.coeffs(), pb = b.coeffs();
    poly::normalize(pa);
    poly::normalize(pb);
    return CyclotomicInt(a.conductor(), reduce(r, poly::mul(pa, pb)));
}

CyclotomicInt galois_apply(const CyclotomicInt& a, unsigned long t)
{
    const Ring& r = ring(a.conductor());
    const unsigned long m = r.m;
    t %= m;
    if (std::gcd(t, static_cast<unsigned long>(m)) != 1)
        throw std::invalid_argument("galois_apply: t not coprime to conductor");
    poly::Poly img(m, Int(0));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        img[(i * t) % m] += a.coeffs()[i];
    return CyclotomicInt(a.conductor(), reduce(r, std::move(img)));
}

CyclotomicInt conjugate(const CyclotomicInt& a)
{
    return galois_apply(a, a.conductor() - 1);
}

SubfieldSpec::SubfieldSpec(unsigned p_in, std::vector<unsigned> subgroup_in)
    : p(p_in), subgroup(std::move(subgroup_in))
{
    if (p < 3 || p % 2 == 0 || !arith::is_prime(Int(p)))
        throw std::invalid_argument("SubfieldSpec: p must be an odd prime");
    std::sort(subgroup.begin(), subgroup.end());
    subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
    if (subgroup.empty() || subgroup.front() != 1)
        throw std::invalid_argument("SubfieldSpec: subgroup must contain 1");
    for (unsigned h : subgroup)
        if (h == 0 || h >= p)
            throw std::invalid_argument("SubfieldSpec: residues must lie in [1, p-1]");
    // closure under multiplication (finite + closed => subgroup)
    for (unsigned a : subgroup)
        for (unsigned b : subgroup) {
            unsigned prod = static_cast<unsigned>(
                (static_cast<unsigned long long>(a) * b) % p);
            if (!std::binary_search(subgroup.begin(), subgroup.end(), prod))
                throw std::invalid_argument(
                    "SubfieldSpec: set is not closed under multiplication mod p");
        }
    if ((p - 1) % subgroup.size() != 0)
        throw std::invalid_argument("SubfieldSpec: |H| must divide p-1");
}

unsigned SubfieldSpec::degree_E() const
{
    return (p - 1) / static_cast<unsigned>(subgroup.size());
}

bool SubfieldSpec::is_complex() const
{
    return !std::binary_search(subgroup.begin(), subgroup.end(), p - 1);
}

CyclotomicInt subfield_norm(const CyclotomicInt& a, const SubfieldSpec& sub)
{
    if (a.conductor() != sub.p)
        throw std::invalid_argument("subfield_norm: conductor must equal p");
    CyclotomicInt result = CyclotomicInt::from_integer(sub.p, 1);
    for (unsigned h : sub.subgroup) result = cyc_mul(result, galois_apply(a, h));
    for (unsigned h : sub.subgroup)
        if (!(galois_apply(result, h) == result))
            throw check_error("subfield_norm: result not fixed by H");
    return result;
}

Int absolute_norm(const CyclotomicInt& a)
{
    if (a.is_zero()) throw std::invalid_argument("absolute_norm: zero input");
    const Ring& r = ring(a.conductor());

    // Route 1: product over the full Galois orbit.
    CyclotomicInt prod = CyclotomicInt::from_integer(a.conductor(), 1);
    for (unsigned t : r.units) prod = cyc_mul(prod, galois_apply(a, t));
    Int by_orbit;
    if (!prod.is_rational(&by_orbit))
        throw check_error("absolute_norm: Galois product is not rational");

    // Route 2: resultant of the cyclotomic polynomial with the representative.
    poly::Poly rep = a.coeffs();
    poly::normalize(rep);
    Int by_resultant = poly::resultant(r.modulus, rep);

    if (by_orbit != by_resultant)
        throw check_error("absolute_norm: Galois-orbit and resultant routes disagree");
    return by_orbit;
}

namespace {

// mpz_get_d truncates to a 53-bit double; route through text so the full
// 64-bit long-double mantissa is kept.
long double to_long_double(const Int& x)
{
    return std::strtold(x.get_str().c_str(), nullptr);
}

}  // namespace

std::vector<std::complex<long double>> embeddings(const CyclotomicInt& a)
{
    const Ring& r = ring(a.conductor());
    const long double tau = 2.0L * std::acos(-1.0L);
    std::vector<std::complex<long double>> out;
    out.reserve(r.units.size());
    for (unsigned t : r.units) {
        std::complex<long double> sum(0.0L, 0.0L);
        for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
            if (a.coeffs()[k] == 0) continue;
            long double angle =
                tau * static_cast<long double>((k * t) % r.m) / r.m;
            long double c = to_long_double(a.coeffs()[k]);
            sum += c * std::complex<long double>(std::cos(angle), std::sin(angle));
        }
        out.push_back(sum);
    }
    return out;
}

DeltaReport delta_report(const SubfieldSpec& sub)
{
    if (!sub.is_complex())
        throw std::invalid_argument(
            "delta_report: -1 in H fixes a real field, outside scope");

    const unsigned p = sub.p;
    DeltaReport rep{.p = p,
                    .subgroup = sub.subgroup,
                    .degree_E = sub.degree_E(),
                    .gamma = CyclotomicInt(p),
                    .xi = CyclotomicInt(p),
                    .delta = CyclotomicInt(p),
                    .abs_norm_delta = 0};

    rep.gamma = cyc_sub(CyclotomicInt::zeta_power(p, 1),
                        CyclotomicInt::zeta_power(p, -1));
    rep.xi = subfield_norm(rep.gamma, sub);
    CyclotomicInt xi_bar = conjugate(rep.xi);
    rep.delta = cyc_mul(rep.xi, xi_bar);

    rep.checks.xi_conj_is_neg_xi = (xi_bar == cyc_neg(rep.xi));
    rep.checks.xi_sq_is_neg_delta =
        (cyc_mul(rep.xi, rep.xi) == cyc_neg(rep.delta));

    // N_{E/Q}(xi) = p and N_{F/Q}(delta) = p lift to the full field as
    // N(xi) = p^|H| and N(delta) = p^(2|H|).
    const unsigned long h = sub.subgroup.size();
    rep.abs_norm_delta = absolute_norm(rep.delta);
    rep.checks.norm_consistent =
        (absolute_norm(rep.xi) == pow_int(Int(p), h)) &&
        (rep.abs_norm_delta == pow_int(Int(p), 2 * h));

    rep.embeddings_delta = embeddings(rep.delta);
    long double scale = 1.0L;
    for (const auto& v : rep.embeddings_delta) scale = std::max(scale, std::abs(v));
    bool nonneg = true;
    for (const auto& v : rep.embeddings_delta) {
        if (v.real() < -rep.checks.tolerance * scale) nonneg = false;
        if (std::abs(v.imag()) > rep.checks.tolerance * scale) nonneg = false;
    }
    rep.checks.totally_nonneg = nonneg;
    return rep;
}

std::pair<CyclotomicInt, CyclotomicInt> half_representation(
    const CyclotomicInt& beta, const SubfieldSpec& sub)
{
    if (beta.conductor() != sub.p)
        throw std::invalid_argument("half_representation: conductor must equal p");
    if (!sub.is_complex())
        throw std::invalid_argument("half_representation: fixed field must be complex");
    for (unsigned h : sub.subgroup)
        if (!(galois_apply(beta, h) == beta))
            throw std::invalid_argument("half_representation: beta not in the fixed field");

    const Ring& r = ring(sub.p);
    CyclotomicInt gamma = cyc_sub(CyclotomicInt::zeta_power(sub.p, 1),
                                  CyclotomicInt::zeta_power(sub.p, -1));
    CyclotomicInt xi = subfield_norm(gamma, sub);

    CyclotomicInt beta_bar = conjugate(beta);
    CyclotomicInt x = cyc_add(beta, beta_bar);
    CyclotomicInt num = cyc_sub(beta, beta_bar);

    // Exact division num / xi: multiply by the cofactor of xi (product of all
    // nontrivial Galois images), then divide by the rational norm.
    CyclotomicInt cof = CyclotomicInt::from_integer(sub.p, 1);
    for (unsigned t : r.units)
        if (t != 1) cof = cyc_mul(cof, galois_apply(xi, t));
    Int norm_xi;
    if (!cyc_mul(xi, cof).is_rational(&norm_xi))
        throw check_error("half_representation: xi * cofactor not rational");

    CyclotomicInt scaled = cyc_mul(num, cof);
    std::vector<Int> ycoeffs(r.phi);
    for (unsigned i = 0; i < r.phi; ++i) {
        Int q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(),
                    scaled.coeffs()[i].get_mpz_t(), norm_xi.get_mpz_t());
        if (rem != 0)
            throw check_error(
                "half_representation: (beta - conj(beta))/xi is not integral");
        ycoeffs[i] = q;
    }
    CyclotomicInt y(sub.p, std::move(ycoeffs));

    // 2*beta = x + y*xi must hold exactly.
    CyclotomicInt two_beta = cyc_add(beta, beta);
    if (!(cyc_add(x, cyc_mul(y, xi)) == two_beta))
        throw check_error("half_representation: 2*beta != x + y*xi");
    if (!(conjugate(x) == x) || !(conjugate(y) == y))
        throw check_error("half_representation: x or y not fixed by conjugation");
    return {x, y};
}

unsigned euler_phi(unsigned m) { return ring(m).phi; }

}  // namespace gbftk::cyclo
