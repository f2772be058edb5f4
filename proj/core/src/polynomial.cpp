#include "gbftk/polynomial.hpp"

#include <algorithm>

namespace gbftk::poly {

void normalize(Poly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b)
{
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    normalize(r);
    return r;
}

void divrem_monic(const Poly& num, const Poly& den, Poly& quot, Poly& rem)
{
    if (den.empty() || den.back() != 1)
        throw std::invalid_argument("divrem_monic: divisor must be monic");
    rem = num;
    normalize(rem);
    const int dd = degree(den);
    if (degree(rem) < dd) {
        quot.clear();
        return;
    }
    quot.assign(rem.size() - den.size() + 1, Int(0));
    for (int i = degree(rem); i >= dd; --i) {
        Int c = rem[i];
        if (c == 0) continue;
        quot[i - dd] = c;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= c * den[j];
    }
    normalize(rem);
    normalize(quot);
}

Poly div_exact(const Poly& num, const Poly& den)
{
    if (den.empty()) throw std::invalid_argument("div_exact: division by zero");
    Poly rem = num, quot;
    normalize(rem);
    const int dd = degree(den);
    const Int& lead = den.back();
    if (degree(rem) >= dd) {
        quot.assign(rem.size() - den.size() + 1, Int(0));
        for (int i = degree(rem); i >= dd; --i) {
            if (rem[i] == 0) continue;
            Int q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rem[i].get_mpz_t(),
                        lead.get_mpz_t());
            if (r != 0) throw check_error("div_exact: inexact division");
            quot[i - dd] = q;
            for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= q * den[j];
        }
    }
    normalize(rem);
    if (!rem.empty()) throw check_error("div_exact: nonzero remainder");
    normalize(quot);
    return quot;
}

Poly xk_minus_1(unsigned long k)
{
    Poly p(k + 1, Int(0));
    p[0] = -1;
    p[k] = 1;
    return p;
}

Poly cyclotomic(unsigned long m)
{
    if (m == 0) throw std::invalid_argument("cyclotomic: m must be positive");
    if (m == 1) return Poly{Int(-1), Int(1)};

    // squarefree kernel and Moebius values of the divisors of the kernel
    std::vector<unsigned long> prime_divs;
    unsigned long rest = m;
    for (unsigned long p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            prime_divs.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1) prime_divs.push_back(rest);

    Poly num{Int(1)}, den{Int(1)};
    const std::size_t subsets = 1ULL << prime_divs.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        unsigned long d = 1;
        for (std::size_t i = 0; i < prime_divs.size(); ++i)
            if (mask & (1ULL << i)) d *= prime_divs[i];
        const bool mu_positive = (__builtin_popcountll(mask) % 2) == 0;
        Poly term = xk_minus_1(m / d);
        if (mu_positive)
            num = mul(num, term);
        else
            den = mul(den, term);
    }
    return div_exact(num, den);
}

namespace {

Int content(const Poly& p)
{
    Int c = 0;
    for (const Int& x : p) c = gcd(c, x);
    return c == 0 ? Int(1) : c;
}

Poly scale_div(const Poly& p, const Int& s)
{
    Poly r = p;
    for (Int& x : r) {
        Int q, rr;
        mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), x.get_mpz_t(), s.get_mpz_t());
        if (rr != 0) throw check_error("resultant: inexact subresultant division");
        x = q;
    }
    return r;
}

// Pseudo-remainder: returns R with lc(B)^(deg A - deg B + 1) * A = Q*B + R.
Poly prem(const Poly& a, const Poly& b)
{
    Poly r = a;
    normalize(r);
    const int db = degree(b);
    const Int& lb = b.back();
    long e = degree(a) - db + 1;
    while (!r.empty() && degree(r) >= db) {
        const int dr = degree(r);
        Poly next(std::max<std::size_t>(r.size(), 0), Int(0));
        // next = lb*r - lc(r)*x^(dr-db)*b
        for (std::size_t i = 0; i < r.size(); ++i) next[i] = lb * r[i];
        for (int j = 0; j <= db; ++j) next[dr - db + j] -= r[dr] * b[j];
        normalize(next);
        r = std::move(next);
        --e;
    }
    if (e > 0) {
        Int f = pow_int(lb, static_cast<unsigned long>(e));
        for (Int& x : r) x *= f;
    }
    return r;
}

}  // namespace

Int resultant(const Poly& a_in, const Poly& b_in)
{
    Poly A = a_in, B = b_in;
    normalize(A);
    normalize(B);
    if (A.empty() || B.empty()) return 0;
    if (degree(A) == 0 && degree(B) == 0) return 1;

    int sign = 1;
    if (degree(A) < degree(B)) {
        if ((degree(A) % 2) == 1 && (degree(B) % 2) == 1) sign = -sign;
        std::swap(A, B);
    }

    const Int ca = content(A), cb = content(B);
    A = scale_div(A, ca);
    B = scale_div(B, cb);
    Int t = pow_int(ca, degree(B)) * pow_int(cb, degree(A));

    Int g = 1, h = 1;
    while (degree(B) > 0) {
        const int d = degree(A) - degree(B);
        if ((degree(A) % 2) == 1 && (degree(B) % 2) == 1) sign = -sign;
        Poly R = prem(A, B);
        A = std::move(B);
        Int divisor = g * pow_int(h, d);
        B = R.empty() ? Poly{} : scale_div(R, divisor);
        if (B.empty()) return 0;  // positive-degree common factor
        g = A.back();
        if (d > 0) {
            // h <- g^d / h^(d-1), exact over Z
            Int num = pow_int(g, d), den = pow_int(h, d - 1), q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (r != 0) throw check_error("resultant: inexact h update");
            h = q;
        }
    }

    // deg B == 0 here; fold in the final subresultant scaling.
    const int da = degree(A);
    Int num = pow_int(B.back(), da), den = pow_int(h, da - 1 < 0 ? 0 : da - 1), q, r;
    if (da >= 1) {
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (r != 0) throw check_error("resultant: inexact final division");
    } else {
        q = 1;  // both constants
    }
    return sign * t * q;
}

}  // namespace gbftk::poly
