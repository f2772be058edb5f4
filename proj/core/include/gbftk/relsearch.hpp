#pragma once

// Abstract class-group relation search: given externally computed class-group
// data for the decomposition field of 2 (invariant factors, class vectors of
// the primes over 2, conjugation pairing), decide whether
// sum_j (n_j*x_j + (n-n_j)*xbar_j) = 0 has a solution with 0 <= n_j <= n, and
// locate the largest odd n below which no odd relation is solvable.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gbftk/integer.hpp"

namespace gbftk::relsearch {

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("fixture:" + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + what),
          line(line),
          column(column)
    {
    }

    std::size_t line;
    std::size_t column;
};

struct ClassGroupFixture {
    Int p;
    unsigned g = 0;                                 // primes over 2, even
    std::vector<std::uint64_t> invariants;          // d_1 | d_2 | ... | d_r
    std::vector<std::vector<std::uint64_t>> vectors;  // g class vectors mod d_i
    // Normalized conjugation pairing (1-based): pairing[j-1] == j + u for
    // j <= u, so vectors[u + k] is the conjugate of vectors[k] (0-based).
    std::vector<unsigned> pairing;
    std::string provenance;

    unsigned u() const { return g / 2; }
    Int class_number() const;  // product of the invariant factors
};

// Parses and fully validates the versioned text format:
//   gbf-fixture v1
//   p=<int> / g=<int> / invariants=<d_1,...,d_r>
//   vector <j> = <c_1,...,c_r>     (g lines)
//   pairing = <pi(1),...,pi(g)>
//   provenance = <free text>
// '#' starts a comment. Arbitrary pairings are re-indexed into the normal
// form pi(j) = j + u. Invariant violations carry the failed check by name
// ("2 is not principal", "pairing has a fixed point", ...).
ClassGroupFixture parse_fixture(std::string_view text);

ClassGroupFixture load_fixture_file(const std::string& path);

struct RelationWitness {
    Int n;
    std::vector<unsigned> exponents;  // n_1..n_u, each in [0, n]
};

enum class WitnessOrder {
    Least,            // full lexicographic order; returns the least witness
    SolvabilityOnly,  // may halve the n_1 range via the conjugation symmetry
};

struct RelSearchConfig {
    std::uint64_t eval_limit = 1'000'000'000;  // refuse searches above (n+1)^u
    unsigned threads = 1;
};

// Exhaustive search with early exit and incremental partial sums. Returns a
// witness iff the relation is solvable for this odd n.
std::optional<RelationWitness> relation_solvable(
    const ClassGroupFixture& fx, const Int& n,
    WitnessOrder order = WitnessOrder::Least, const RelSearchConfig& cfg = {});

struct MaxNpResult {
    enum class Status {
        SolvableAtOne,  // n = 1 already solvable; no n_p exists
        Exact,          // n_p = value
        AtLeastMax,     // nothing solvable up to n_max; n_p >= value
    };
    Status status = Status::SolvableAtOne;
    unsigned value = 0;
};

// Walks odd n = 1, 3, 5, ... up to n_max and reports the largest odd n_p with
// no solvable odd n <= n_p.
MaxNpResult max_np(const ClassGroupFixture& fx, unsigned n_max = 45,
                   const RelSearchConfig& cfg = {});

// Independent correctness oracle: materializes the full group as explicit
// element tables and re-decides solvability with none of the incremental
// machinery. Guarded to class number <= 1e5 and (n+1)^u <= 1e7.
bool brute_oracle(const ClassGroupFixture& fx, const Int& n);

}  // namespace gbftk::relsearch
