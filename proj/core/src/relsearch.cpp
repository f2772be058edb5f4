#include "gbftk/relsearch.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gbftk/parallel.hpp"

namespace gbftk::relsearch {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Line {
    std::size_t number;
    std::string text;
};

std::string strip(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// content lines with comments removed, original line numbers kept
std::vector<Line> content_lines(std::string_view text)
{
    std::vector<Line> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line(text.substr(pos, nl == std::string_view::npos
                                              ? std::string_view::npos
                                              : nl - pos));
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (!line.empty()) out.push_back({lineno, line});
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

long long parse_ll(const Line& ln, const std::string& tok)
{
    std::string t = strip(tok);
    if (t.empty()) throw parse_error(ln.number, 1, "expected an integer");
    std::size_t idx = 0;
    long long v;
    try {
        v = std::stoll(t, &idx);
    } catch (const std::exception&) {
        throw parse_error(ln.number, 1, "not an integer: '" + t + "'");
    }
    if (idx != t.size())
        throw parse_error(ln.number, 1, "trailing characters after integer: '" + t + "'");
    return v;
}

std::vector<long long> parse_list(const Line& ln, const std::string& body)
{
    std::vector<long long> out;
    std::string trimmed = strip(body);
    if (trimmed.empty()) return out;
    std::stringstream ss(trimmed);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_ll(ln, tok));
    return out;
}

// "key=value" or "key = value"
bool key_value(const Line& ln, const std::string& key, std::string& value)
{
    const std::string& s = ln.text;
    if (s.rfind(key, 0) != 0) return false;
    std::size_t pos = key.size();
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size() || s[pos] != '=') return false;
    value = strip(s.substr(pos + 1));
    return true;
}

u64 reduce_mod(long long v, u64 d)
{
    long long m = v % static_cast<long long>(d);
    if (m < 0) m += static_cast<long long>(d);
    return static_cast<u64>(m);
}

void validate_and_normalize(ClassGroupFixture& fx, std::size_t lineno)
{
    auto fail = [&](const std::string& what) { throw parse_error(lineno, 1, what); };

    if (fx.g == 0 || fx.g % 2 != 0) fail("g must be a positive even integer");
    const std::size_t r = fx.invariants.size();
    for (std::size_t i = 0; i < r; ++i) {
        if (fx.invariants[i] < 1) fail("invariant factors must be positive");
        if (i + 1 < r && fx.invariants[i + 1] % fx.invariants[i] != 0)
            fail("invariant factors must form a divisibility chain d_i | d_{i+1}");
    }
    if (fx.vectors.size() != fx.g) fail("expected exactly g vector lines");
    for (const auto& v : fx.vectors)
        if (v.size() != r) fail("vector length must match the invariant count");

    // pairing: fixed-point-free involution on 1..g
    if (fx.pairing.size() != fx.g) fail("pairing must list g images");
    for (unsigned j = 0; j < fx.g; ++j) {
        unsigned img = fx.pairing[j];
        if (img < 1 || img > fx.g) fail("pairing image out of range");
        if (img == j + 1) fail("pairing has a fixed point");
        if (fx.pairing[img - 1] != j + 1) fail("pairing is not an involution");
    }

    // principality of 2: the class vectors must sum to zero
    for (std::size_t i = 0; i < r; ++i) {
        u64 sum = 0;
        for (const auto& v : fx.vectors) sum = (sum + v[i]) % fx.invariants[i];
        if (sum != 0) fail("2 is not principal (class vectors do not sum to zero)");
    }

    // Re-index into the normal form pi(j) = j + u: pairs ordered by their
    // smaller member, first members first.
    const unsigned u = fx.g / 2;
    std::vector<unsigned> order(fx.g, 0);
    unsigned slot = 0;
    for (unsigned j = 0; j < fx.g; ++j) {
        if (fx.pairing[j] > j + 1) {  // j is the smaller member of its pair
            order[slot] = j;
            order[slot + u] = fx.pairing[j] - 1;
            ++slot;
        }
    }
    std::vector<std::vector<u64>> vecs(fx.g);
    for (unsigned j = 0; j < fx.g; ++j) vecs[j] = std::move(fx.vectors[order[j]]);
    fx.vectors = std::move(vecs);
    fx.pairing.resize(fx.g);
    for (unsigned j = 0; j < u; ++j) {
        fx.pairing[j] = j + 1 + u;
        fx.pairing[j + u] = j + 1;
    }
}

}  // namespace

Int ClassGroupFixture::class_number() const
{
    Int h = 1;
    for (u64 d : invariants) h *= from_u64(d);
    return h;
}

ClassGroupFixture parse_fixture(std::string_view text)
{
    std::vector<Line> lines = content_lines(text);
    if (lines.empty()) throw parse_error(1, 1, "empty fixture");
    std::size_t li = 0;
    auto next = [&]() -> const Line& {
        if (li >= lines.size())
            throw parse_error(lines.back().number, 1, "unexpected end of fixture");
        return lines[li++];
    };

    const Line& header = next();
    if (header.text != "gbf-fixture v1")
        throw parse_error(header.number, 1,
                          "expected header 'gbf-fixture v1', got '" + header.text + "'");

    ClassGroupFixture fx;
    std::string value;

    const Line& pline = next();
    if (!key_value(pline, "p", value))
        throw parse_error(pline.number, 1, "expected 'p=<int>'");
    fx.p = parse_decimal(value);
    if (fx.p < 2) throw parse_error(pline.number, 1, "p must be >= 2");

    const Line& gline = next();
    if (!key_value(gline, "g", value))
        throw parse_error(gline.number, 1, "expected 'g=<int>'");
    long long gval = parse_ll(gline, value);
    if (gval < 2 || gval > 64)
        throw parse_error(gline.number, 1, "g must lie in [2, 64]");
    if (gval % 2 != 0)
        throw parse_error(gline.number, 1, "g must be even (conjugate pairs)");
    fx.g = static_cast<unsigned>(gval);

    const Line& iline = next();
    if (!key_value(iline, "invariants", value))
        throw parse_error(iline.number, 1, "expected 'invariants=<d_1,...,d_r>'");
    for (long long d : parse_list(iline, value)) {
        if (d < 1) throw parse_error(iline.number, 1, "invariant factors must be positive");
        fx.invariants.push_back(static_cast<u64>(d));
    }

    for (unsigned j = 1; j <= fx.g; ++j) {
        const Line& vline = next();
        std::stringstream ss(vline.text);
        std::string word;
        ss >> word;
        long long index = 0;
        char eq = 0;
        if (!(word == "vector" && (ss >> index) && (ss >> eq) && eq == '='))
            throw parse_error(vline.number, 1, "expected 'vector " +
                                                   std::to_string(j) + " = ...'");
        if (index != j)
            throw parse_error(vline.number, 1,
                              "vector lines must appear in order 1.." +
                                  std::to_string(fx.g));
        std::string rest;
        std::getline(ss, rest);
        std::vector<long long> coords = parse_list(vline, rest);
        if (coords.size() != fx.invariants.size())
            throw parse_error(vline.number, 1,
                              "vector length must match the invariant count");
        std::vector<u64> v(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i)
            v[i] = reduce_mod(coords[i], fx.invariants[i]);
        fx.vectors.push_back(std::move(v));
    }

    const Line& prline = next();
    if (!key_value(prline, "pairing", value))
        throw parse_error(prline.number, 1, "expected 'pairing = <list>'");
    for (long long x : parse_list(prline, value)) {
        if (x < 1 || x > fx.g)
            throw parse_error(prline.number, 1, "pairing image out of range");
        fx.pairing.push_back(static_cast<unsigned>(x));
    }

    const Line& pvline = next();
    if (!key_value(pvline, "provenance", value))
        throw parse_error(pvline.number, 1, "expected 'provenance = <text>'");
    fx.provenance = value;

    if (li != lines.size())
        throw parse_error(lines[li].number, 1, "unexpected trailing content");

    validate_and_normalize(fx, pvline.number);
    return fx;
}

ClassGroupFixture load_fixture_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

namespace {

struct SearchPlan {
    unsigned u = 0;
    std::size_t r = 0;
    std::vector<u64> d;                   // invariant factors
    std::vector<std::vector<u64>> diff;   // (x_j - xbar_j) mod d
    std::vector<u64> base;                // n * sum_j xbar_j mod d
    u64 n = 0;
};

SearchPlan make_plan(const ClassGroupFixture& fx, u64 n)
{
    SearchPlan plan;
    plan.u = fx.u();
    plan.r = fx.invariants.size();
    plan.d = fx.invariants;
    plan.n = n;
    plan.base.assign(plan.r, 0);
    plan.diff.assign(plan.u, std::vector<u64>(plan.r, 0));
    for (std::size_t i = 0; i < plan.r; ++i) {
        const u64 d = plan.d[i];
        u64 conj_sum = 0;
        for (unsigned j = 0; j < plan.u; ++j)
            conj_sum = (conj_sum + fx.vectors[plan.u + j][i]) % d;
        plan.base[i] = u64(u128(n % d) * conj_sum % d);
        for (unsigned j = 0; j < plan.u; ++j) {
            u64 x = fx.vectors[j][i];
            u64 xb = fx.vectors[plan.u + j][i];
            plan.diff[j][i] = (x + d - xb) % d;
        }
    }
    return plan;
}

// lexicographic DFS over digits[first..u), digits[0..first) already fixed in
// partial; returns the least witness tail if one exists
bool dfs(const SearchPlan& plan, unsigned level, std::vector<u64>& partial,
         std::vector<unsigned>& digits)
{
    if (level == plan.u) {
        return std::all_of(partial.begin(), partial.end(),
                           [](u64 v) { return v == 0; });
    }
    std::vector<u64> saved = partial;
    for (u64 v = 0; v <= plan.n; ++v) {
        for (std::size_t i = 0; i < plan.r; ++i)
            partial[i] = u64((u128(plan.diff[level][i]) * v + saved[i]) % plan.d[i]);
        digits[level] = static_cast<unsigned>(v);
        if (dfs(plan, level + 1, partial, digits)) return true;
    }
    partial = saved;
    return false;
}

Int pow_count(u64 base, unsigned exp)
{
    Int r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= from_u64(base);
    return r;
}

// Minimal shape sanity for fixtures built in code rather than parsed.
void require_well_formed(const ClassGroupFixture& fx)
{
    if (fx.g == 0 || fx.g % 2 != 0)
        throw std::invalid_argument("fixture: g must be a positive even integer");
    if (fx.vectors.size() != fx.g)
        throw std::invalid_argument("fixture: expected g class vectors");
    for (const auto& v : fx.vectors)
        if (v.size() != fx.invariants.size())
            throw std::invalid_argument("fixture: vector length mismatch");
}

}  // namespace

std::optional<RelationWitness> relation_solvable(const ClassGroupFixture& fx,
                                                 const Int& n, WitnessOrder order,
                                                 const RelSearchConfig& cfg)
{
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("relation_solvable: n must be odd and positive");
    require_well_formed(fx);

    const unsigned u = fx.u();

    // Trivial class group: everything is principal, the zero witness works
    // for any n without searching.
    if (fx.invariants.empty())
        return RelationWitness{n, std::vector<unsigned>(u, 0)};

    if (bit_length(n) > 63 ||
        pow_count(to_u64(n) + 1, u) > Int(static_cast<unsigned long>(cfg.eval_limit)))
        throw budget_error("relation_solvable: (n+1)^u exceeds the evaluation limit");
    const u64 nn = to_u64(n);

    SearchPlan plan = make_plan(fx, nn);

    // The mirror (n - n_1, ..., n - n_u) of a witness is a witness, so for
    // solvability alone n_1 can be confined to [0, n/2].
    const u64 n1_max = (order == WitnessOrder::SolvabilityOnly) ? nn / 2 : nn;

    std::optional<RelationWitness> found;
    ordered_blocks(
        n1_max + 1, cfg.threads,
        [&](u64 n1) -> std::optional<std::vector<unsigned>> {
            std::vector<u64> partial(plan.r);
            for (std::size_t i = 0; i < plan.r; ++i)
                partial[i] =
                    u64((u128(plan.diff[0][i]) * n1 + plan.base[i]) % plan.d[i]);
            std::vector<unsigned> digits(plan.u, 0);
            digits[0] = static_cast<unsigned>(n1);
            if (plan.u == 1) {
                bool zero = std::all_of(partial.begin(), partial.end(),
                                        [](u64 v) { return v == 0; });
                if (zero) return digits;
                return std::nullopt;
            }
            if (dfs(plan, 1, partial, digits)) return digits;
            return std::nullopt;
        },
        [&](u64, std::optional<std::vector<unsigned>> witness) {
            if (witness) {
                found = RelationWitness{n, std::move(*witness)};
                return false;
            }
            return true;
        });
    return found;
}

MaxNpResult max_np(const ClassGroupFixture& fx, unsigned n_max,
                   const RelSearchConfig& cfg)
{
    if (n_max % 2 == 0) throw std::invalid_argument("max_np: n_max must be odd");
    for (unsigned n = 1; n <= n_max; n += 2) {
        if (relation_solvable(fx, Int(n), WitnessOrder::SolvabilityOnly, cfg)) {
            if (n == 1) return {MaxNpResult::Status::SolvableAtOne, 0};
            return {MaxNpResult::Status::Exact, n - 2};
        }
    }
    return {MaxNpResult::Status::AtLeastMax, n_max};
}

bool brute_oracle(const ClassGroupFixture& fx, const Int& n)
{
    if (n < 1 || mpz_even_p(n.get_mpz_t()))
        throw std::invalid_argument("brute_oracle: n must be odd and positive");
    require_well_formed(fx);
    if (fx.class_number() > 100'000)
        throw budget_error("brute_oracle: class number exceeds 1e5");
    const unsigned u = fx.u();
    if (bit_length(n) > 63 || pow_count(to_u64(n) + 1, u) > Int(10'000'000))
        throw budget_error("brute_oracle: (n+1)^u exceeds 1e7");
    const u64 nn = to_u64(n);

    const std::size_t r = fx.invariants.size();
    if (r == 0) return true;

    // explicit element encoding: indices in mixed radix over the d_i
    auto encode = [&](const std::vector<u64>& coords) {
        u64 idx = 0;
        for (std::size_t i = 0; i < r; ++i) idx = idx * fx.invariants[i] + coords[i];
        return idx;
    };
    auto add_idx = [&](u64 a, u64 b) {
        u64 idx = 0;
        for (std::size_t i = r; i-- > 0;) {
            const u64 d = fx.invariants[i];
            u64 ca = a % d, cb = b % d;
            a /= d;
            b /= d;
            u64 place = 1;
            for (std::size_t k = i + 1; k < r; ++k) place *= fx.invariants[k];
            idx += ((ca + cb) % d) * place;
        }
        return idx;
    };

    // contribution table: contrib[j][c] = index of c*x_j + (n-c)*xbar_j
    std::vector<std::vector<u64>> contrib(u, std::vector<u64>(nn + 1, 0));
    for (unsigned j = 0; j < u; ++j) {
        const u64 xj = encode(fx.vectors[j]);
        const u64 xbj = encode(fx.vectors[u + j]);
        for (u64 c = 0; c <= nn; ++c) {
            u64 s = 0;
            for (u64 i = 0; i < c; ++i) s = add_idx(s, xj);
            for (u64 i = 0; i < nn - c; ++i) s = add_idx(s, xbj);
            contrib[j][c] = s;
        }
    }

    // plain odometer over all tuples, no partial-sum reuse
    std::vector<u64> digits(u, 0);
    while (true) {
        u64 s = 0;
        for (unsigned j = 0; j < u; ++j) s = add_idx(s, contrib[j][digits[j]]);
        if (s == 0) return true;
        unsigned k = u;
        while (k > 0) {
            --k;
            if (digits[k] < nn) {
                ++digits[k];
                std::fill(digits.begin() + k + 1, digits.end(), 0);
                break;
            }
            if (k == 0) return false;
        }
    }
}

}  // namespace gbftk::relsearch
