#pragma once

// Exact arithmetic in Z[zeta_m] (power basis reduced mod the m-th cyclotomic
// polynomial) and constructive verification of the CM-subfield machinery:
// Galois action, subfield norms, the gamma/xi/delta chain, total
// nonnegativity, and the half-integer representation lemma.

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gbftk/integer.hpp"

namespace gbftk::cyclo {

// Elements are canonical: equal iff the coefficient vectors are equal.
class CyclotomicInt {
public:
    // the zero element of Z[zeta_m]
    explicit CyclotomicInt(unsigned m);
    CyclotomicInt(unsigned m, std::vector<Int> coeffs);  // must have length phi(m)

    static CyclotomicInt from_integer(unsigned m, const Int& value);
    // zeta_m^k for any integer k (negative = inverse root)
    static CyclotomicInt zeta_power(unsigned m, long k);
    // sum_k c[k] * zeta_m^k for a coefficient vector of any length, reduced
    static CyclotomicInt from_root_powers(unsigned m, std::vector<Int> c);

    unsigned conductor() const { return conductor_; }
    const std::vector<Int>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    // the constant value if the element is a rational integer
    bool is_rational(Int* value = nullptr) const;

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) = default;

private:
    unsigned conductor_;
    std::vector<Int> coeffs_;
};

// Largest conductor accepted anywhere in this module.
inline constexpr unsigned kConductorCeiling = 10'000;

unsigned euler_phi(unsigned m);

CyclotomicInt cyc_add(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyc_sub(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyc_mul(const CyclotomicInt& a, const CyclotomicInt& b);
CyclotomicInt cyc_neg(const CyclotomicInt& a);

// zeta -> zeta^t for gcd(t, m) = 1; t = m-1 is complex conjugation.
CyclotomicInt galois_apply(const CyclotomicInt& a, unsigned long t);
CyclotomicInt conjugate(const CyclotomicInt& a);

// A subfield E of Q(zeta_p), p an odd prime, given by the subgroup
// H <= (Z/pZ)^x that fixes it. Construction validates the subgroup axioms.
struct SubfieldSpec {
    SubfieldSpec(unsigned p, std::vector<unsigned> subgroup);

    unsigned p;
    std::vector<unsigned> subgroup;  // sorted, contains 1, closed mod p

    unsigned degree_E() const;  // [E : Q] = (p-1) / |H|
    bool is_complex() const;    // true iff -1 (= p-1) not in H
};

// prod_{h in H} sigma_h(a); lands in the fixed field of H (verified).
CyclotomicInt subfield_norm(const CyclotomicInt& a, const SubfieldSpec& sub);

// Norm to Q, computed by two independent routes (full Galois product and
// resultant with the cyclotomic polynomial) which must agree.
Int absolute_norm(const CyclotomicInt& a);

// One complex value per embedding zeta -> exp(2*pi*i*t/m), t coprime to m,
// in ascending order of t.
std::vector<std::complex<long double>> embeddings(const CyclotomicInt& a);

struct DeltaChecks {
    bool xi_conj_is_neg_xi = false;   // conj(xi) == -xi (exact)
    bool xi_sq_is_neg_delta = false;  // xi^2 == -delta (exact)
    bool norm_consistent = false;     // N(xi) = p^|H|, N(delta) = p^(2|H|) (exact)
    bool totally_nonneg = false;      // every embedding of delta >= -tolerance
    double tolerance = 1e-9;

    bool all() const
    {
        return xi_conj_is_neg_xi && xi_sq_is_neg_delta && norm_consistent &&
               totally_nonneg;
    }
};

struct DeltaReport {
    unsigned p = 0;
    std::vector<unsigned> subgroup;
    unsigned degree_E = 0;
    CyclotomicInt gamma, xi, delta;
    Int abs_norm_delta;
    std::vector<std::complex<long double>> embeddings_delta;
    DeltaChecks checks;
};

// Builds gamma = zeta_p - zeta_p^{-1}, xi = N_{K/E}(gamma), delta = xi*conj(xi)
// and records the four verification checks. Requires E complex (-1 not in H).
DeltaReport delta_report(const SubfieldSpec& sub);

// For integral beta in the complex fixed field E of H: returns (x, y) with
// 2*beta = x + y*xi exactly, x = beta + conj(beta), y = (beta - conj(beta))/xi,
// both verified to have integer coordinates in the power basis of zeta_p.
std::pair<CyclotomicInt, CyclotomicInt> half_representation(
    const CyclotomicInt& beta, const SubfieldSpec& sub);

}  // namespace gbftk::cyclo
