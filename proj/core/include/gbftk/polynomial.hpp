#pragma once

// Dense univariate polynomials over Z, coefficients ascending. Only what the
// cyclotomic layer needs: ring ops, exact/monic division, cyclotomic
// polynomials, and an integer resultant via the subresultant PRS.

#include <vector>

#include "gbftk/integer.hpp"

namespace gbftk::poly {

// Zero polynomial == empty vector; otherwise the leading coefficient is
// nonzero.
using Poly = std::vector<Int>;

void normalize(Poly& p);
int degree(const Poly& p);  // -1 for the zero polynomial
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);

// Division with remainder by a monic divisor (exact in Z).
void divrem_monic(const Poly& num, const Poly& den, Poly& quot, Poly& rem);

// Exact division (throws check_error if the division leaves a remainder).
Poly div_exact(const Poly& num, const Poly& den);

// x^k - 1
Poly xk_minus_1(unsigned long k);

// m-th cyclotomic polynomial, computed by the Moebius product
// prod_{d | m} (x^{m/d} - 1)^{mu(d)} with exact divisions.
Poly cyclotomic(unsigned long m);

// Res(a, b) over Z (subresultant PRS, no fraction arithmetic).
Int resultant(const Poly& a, const Poly& b);

}  // namespace gbftk::poly
