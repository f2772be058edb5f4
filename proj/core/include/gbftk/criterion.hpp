#pragma once

// Nonexistence criteria for the norm equation N_{E/F}(alpha) = q^n over
// cyclotomic CM subfields, and their specialization q = 2 deciding
// generalized bent functions of type [n, 2p^e]. Every evaluation produces a
// full audit certificate; the verdict never claims existence.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbftk/arith.hpp"
#include "gbftk/integer.hpp"

namespace gbftk::criterion {

enum class Verdict { NonexistenceCertified, Inconclusive };

std::string to_string(Verdict v);

struct Certificate {
    Int q;
    Int n;
    Int p;
    unsigned e = 1;

    Int f;           // ord_p(q)
    Int g;           // (p-1)/f
    Int l;           // (p-1)/f if f even, (p-1)/(2f) if f odd
    Int two_part_l;  // B(l)

    // bound = 4^B(l) * q^(n*l); exact value when its bit length is at most
    // kBoundBitCap, otherwise only the exponent form below is recorded.
    std::optional<Int> bound;
    Int bound_exp2;          // for q = 2: bound == 2^bound_exp2 exactly
    std::string bound_form;  // always set, e.g. "2^20" or "4^1*3^12"

    std::optional<bool> wieferich_ok;  // engaged iff e > 1; true = q^f != 1 mod p^2
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> reasons;  // one line per hypothesis, pass or fail
};

inline constexpr std::size_t kBoundBitCap = std::size_t(1) << 20;

struct KnownResultFlags {
    bool kumar_applies = false;  // exists s >= 1 with 2^s == -1 mod p^e
    unsigned p_mod_8 = 0;
    bool f_odd = false;
    bool n_is_one = false;
    bool new_case = false;  // p == 1 mod 8, n >= 3, f odd
};

// Decides N_{E/F}(alpha) = q^n insolubility for E = Q(zeta_{p^e}).
// Hypotheses: f = ord_p(q) > 1; e = 1 or q^f != 1 mod p^2; p > 4^B(l)*q^(n*l).
Certificate norm_criterion(const Int& q, const Int& n, const Int& p, unsigned e,
                           const arith::FactorConfig& cfg = {});

// q = 2 specialization: NonexistenceCertified means no GBF of type [n, 2p^e].
Certificate gbf_criterion(const Int& n, const Int& p, unsigned e,
                          const arith::FactorConfig& cfg = {});

KnownResultFlags classify_known(const Int& n, const Int& p, unsigned e,
                                const arith::FactorConfig& cfg = {});

}  // namespace gbftk::criterion
