// Acceptance suite: drives every acceptance criterion end to end and prints
// one PASS/FAIL/SKIP line per criterion. Exit status is nonzero iff any
// criterion FAILs. A criterion is SKIPPED only when its gating data
// (externally produced class-group fixtures) is absent, never to hide a
// failure.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

#include "gbftk/criterion.hpp"
#include "gbftk/cyclotomic.hpp"
#include "gbftk/gbf.hpp"
#include "gbftk/relsearch.hpp"
#include "gbftk/report.hpp"
#include "gbftk/scanner.hpp"
#include "synthetic_fixtures.hpp"

using namespace gbftk;

namespace {

enum class Status { Pass, Fail, Skip };

struct Harness {
    int passed = 0, failed = 0, skipped = 0;

    void run(int index, const std::string& title,
             const std::function<std::pair<Status, std::string>()>& body)
    {
        auto start = std::chrono::steady_clock::now();
        Status st = Status::Fail;
        std::string detail;
        try {
            auto [s, d] = body();
            st = s;
            detail = d;
        } catch (const std::exception& e) {
            st = Status::Fail;
            detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        const char* tag = st == Status::Pass ? "PASS"
                          : st == Status::Fail ? "FAIL"
                                               : "SKIP";
        (st == Status::Pass ? passed : st == Status::Fail ? failed : skipped) += 1;
        std::ostringstream line;
        line << "[" << tag << "] criterion " << index << ": " << title << " ("
             << std::fixed;
        line.precision(2);
        line << secs << " s)";
        if (!detail.empty()) line << " — " << detail;
        std::cout << line.str() << std::endl;
    }

    int finish() const
    {
        std::cout << "acceptance: " << passed << " passed, " << failed
                  << " failed, " << skipped << " skipped" << std::endl;
        return failed == 0 ? 0 : 1;
    }
};

struct Check {
    bool ok = true;
    std::string why;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }

    std::pair<Status, std::string> result() const
    {
        return {ok ? Status::Pass : Status::Fail, why};
    }
};

double seconds_of(const std::function<void()>& fn)
{
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

std::string fixture_dir()
{
    if (const char* env = std::getenv("GBF_FIXTURE_DIR")) return env;
    return std::string(GBFTK_SOURCE_DIR) + "/fixtures/table1";
}

std::vector<unsigned> odd_order_subgroup(unsigned p, unsigned order)
{
    // subgroup of (Z/pZ)^x of the given (odd) order: powers of g0^((p-1)/order)
    unsigned g0 = 0;
    for (unsigned cand = 2; cand < p && g0 == 0; ++cand) {
        unsigned x = cand % p, ord = 1;
        while (x != 1) {
            x = static_cast<unsigned>((std::uint64_t(x) * cand) % p);
            ++ord;
        }
        if (ord == p - 1) g0 = cand;
    }
    unsigned gen = 1;
    for (unsigned i = 0; i < (p - 1) / order; ++i)
        gen = static_cast<unsigned>((std::uint64_t(gen) * g0) % p);
    std::vector<unsigned> h{1};
    unsigned x = gen;
    while (x != 1) {
        h.push_back(x);
        x = static_cast<unsigned>((std::uint64_t(x) * gen) % p);
    }
    return h;
}

}  // namespace

int main()
{
    Harness h;

    // ------------------------------------------------------------------ 1 --
    h.run(1, "smallest certified primes for n=3/11/15", [] {
        Check c;
        const std::vector<std::pair<long, std::string>> cases = {
            {3, "1049177"},
            {11, "4503599627370889"},
            {15, "295147905179352827401"},
        };
        for (const auto& [n, expect] : cases) {
            scanner::SmallestResult res{Int(0), {}, 0, {}};
            double secs = seconds_of([&] {
                res = scanner::smallest_certified(Int(n), Int(8),
                                                  scanner::FParity::Odd, 1);
            });
            c.expect(res.p == parse_decimal(expect),
                     "n=" + std::to_string(n) + ": got " + to_decimal(res.p) +
                         ", expected " + expect);
            c.expect(secs < 60.0, "n=" + std::to_string(n) + " exceeded 60 s");
            c.expect(res.certificate.verdict ==
                         criterion::Verdict::NonexistenceCertified,
                     "certificate not certified for n=" + std::to_string(n));
        }
        return c.result();
    });

    // ------------------------------------------------------------------ 2 --
    h.run(2, "first certified primes for n=3 and n=17", [] {
        Check c;
        scanner::ScanFilter f3;
        f3.g = 8;
        f3.f_parity = scanner::FParity::Odd;
        f3.p_mod_8 = 1;
        f3.require_certified = scanner::ScanFilter::Certify{Int(3), 1};
        f3.lo = pow2(20);
        std::vector<std::string> got3;
        double secs3 = seconds_of([&] {
            for (const auto& hit : scanner::scan(f3, 5).hits)
                got3.push_back(to_decimal(hit.p));
        });
        c.expect(got3 == std::vector<std::string>{"1049177", "1050169", "1050233",
                                                  "1050473", "1051961"},
                 "n=3 prime list mismatch");
        c.expect(secs3 < 60.0, "n=3 scan exceeded 60 s");

        scanner::ScanFilter f17 = f3;
        f17.require_certified = scanner::ScanFilter::Certify{Int(17), 1};
        f17.lo = pow2(76);
        std::vector<std::string> got17;
        double secs17 = seconds_of([&] {
            for (const auto& hit : scanner::scan(f17, 2).hits)
                got17.push_back(to_decimal(hit.p));
        });
        c.expect(got17 == std::vector<std::string>{"75557863725914323420409",
                                                   "75557863725914323422233"},
                 "n=17 prime list mismatch");
        c.expect(secs17 < 60.0, "n=17 scan exceeded 60 s");
        return c.result();
    });

    // ------------------------------------------------------------------ 3 --
    h.run(3, "wieferich scan to 100000", [] {
        Check c;
        std::vector<std::uint64_t> got;
        double secs =
            seconds_of([&] { got = scanner::wieferich_scan(2, 100'000); });
        c.expect(got == std::vector<std::uint64_t>{1093, 3511},
                 "expected exactly {1093, 3511}");
        c.expect(secs < 30.0, "scan exceeded 30 s");
        return c.result();
    });

    // ------------------------------------------------------------------ 4 --
    h.run(4, "(p, n_p) table reproduction (fixture-gated)", [] {
        const std::vector<std::pair<unsigned, unsigned>> table = {
            {89, 3},    {233, 7},   {937, 7},   {1289, 13}, {1433, 17},
            {1609, 23}, {1721, 19}, {1913, 25}, {2441, 31}, {2969, 33}};
        const std::string dir = fixture_dir();
        std::vector<std::string> missing;
        Check c;
        for (const auto& [p, np] : table) {
            const std::string path = dir + "/p" + std::to_string(p) + ".fx";
            if (!std::filesystem::exists(path)) {
                missing.push_back("p" + std::to_string(p) + ".fx");
                continue;
            }
            auto fx = relsearch::load_fixture_file(path);
            auto res = relsearch::max_np(fx);
            c.expect(res.status == relsearch::MaxNpResult::Status::Exact &&
                         res.value == np,
                     "p=" + std::to_string(p) + ": expected n_p=" +
                         std::to_string(np));
        }
        if (!c.ok) return c.result();
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
            return std::pair{Status::Skip,
                             "fixtures absent under " + dir + ": " + list +
                                 " (regenerate via docs/generate-fixtures.gp)"};
        }
        return std::pair{Status::Pass, std::string("all ten (p, n_p) pairs match")};
    });

    // ------------------------------------------------------------------ 5 --
    h.run(5, "relation search vs brute oracle on 1000 synthetic fixtures", [] {
        Check c;
        auto rng = std::mt19937_64(0xACCE97);
        int discrepancies = 0;
        for (int it = 0; it < 1000; ++it) {
            auto fx = synth::random_fixture(rng);
            for (unsigned n = 1; n <= 9; n += 2) {
                bool fast =
                    relsearch::relation_solvable(
                        fx, Int(n), relsearch::WitnessOrder::SolvabilityOnly)
                        .has_value();
                if (fast != relsearch::brute_oracle(fx, Int(n))) ++discrepancies;
            }
        }
        c.expect(discrepancies == 0,
                 std::to_string(discrepancies) + " discrepancies");
        return c.result();
    });

    // ------------------------------------------------------------------ 6 --
    h.run(6, "delta reports for every complex subfield, p in {5..23}", [] {
        Check c;
        for (unsigned p : {5u, 7u, 11u, 13u, 17u, 19u, 23u}) {
            for (unsigned m = 1; m < p; ++m) {
                if ((p - 1) % m != 0 || m % 2 == 0) continue;  // odd order only
                auto rep = cyclo::delta_report(
                    cyclo::SubfieldSpec(p, odd_order_subgroup(p, m)));
                c.expect(rep.checks.xi_conj_is_neg_xi,
                         "conj check failed at p=" + std::to_string(p));
                c.expect(rep.checks.xi_sq_is_neg_delta,
                         "square check failed at p=" + std::to_string(p));
                c.expect(rep.checks.norm_consistent,
                         "norm check failed at p=" + std::to_string(p));
                c.expect(rep.checks.totally_nonneg,
                         "nonnegativity failed at p=" + std::to_string(p));
            }
        }
        return c.result();
    });

    // ------------------------------------------------------------------ 7 --
    h.run(7, "half representation on 100 random elements per subfield", [] {
        Check c;
        auto rng = std::mt19937_64(0x4A1F);
        for (unsigned p : {5u, 7u, 11u, 13u, 17u, 19u}) {
            for (unsigned m = 1; m < p; ++m) {
                if ((p - 1) % m != 0 || m % 2 == 0) continue;
                cyclo::SubfieldSpec sub(p, odd_order_subgroup(p, m));
                auto gamma = cyc_sub(cyclo::CyclotomicInt::zeta_power(p, 1),
                                     cyclo::CyclotomicInt::zeta_power(p, -1));
                auto xi = subfield_norm(gamma, sub);
                for (int it = 0; it < 100; ++it) {
                    // integral element of the fixed field: a Galois trace
                    cyclo::CyclotomicInt beta(p);
                    std::vector<Int> coeffs(cyclo::euler_phi(p));
                    for (Int& x : coeffs) x = Int(long(rng() % 13) - 6);
                    cyclo::CyclotomicInt raw(p, std::move(coeffs));
                    for (unsigned hh : sub.subgroup)
                        beta = cyc_add(beta, galois_apply(raw, hh));
                    auto [x, y] = half_representation(beta, sub);
                    c.expect(cyc_add(x, cyc_mul(y, xi)) == cyc_add(beta, beta),
                             "2*beta != x + y*xi at p=" + std::to_string(p));
                }
            }
        }
        return c.result();
    });

    // ------------------------------------------------------------------ 8 --
    h.run(8, "exhaustive bent-function searches and exact identities", [] {
        Check c;
        auto r12 = gbf::exhaustive_search(1, 2);
        c.expect(r12.examined == 4 && r12.tables.empty(), "[1,2] must be 0 of 4");
        auto r22 = gbf::exhaustive_search(2, 2);
        c.expect(r22.examined == 16 && r22.tables.size() == 8,
                 "[2,2] must be 8 of 16");
        auto r13 = gbf::exhaustive_search(1, 3);
        c.expect(!r13.tables.empty(), "[1,3] must have bent functions");

        gbf::SearchResult r16;
        double secs = seconds_of([&] { r16 = gbf::exhaustive_search(1, 6); });
        c.expect(r16.examined == 46'656 && r16.tables.empty(),
                 "[1,6] must be 0 of 46656");
        c.expect(secs < 10.0, "[1,6] search exceeded 10 s");

        // Parseval + inversion, exactly, on every [1,6] candidate
        gbf::GBFCandidate cand{1, 6, std::vector<std::uint32_t>(6, 0)};
        bool identities = true;
        for (std::uint64_t idx = 0; idx < 46'656 && identities; ++idx) {
            std::uint64_t rest = idx;
            for (int k = 5; k >= 0; --k) {
                cand.table[k] = static_cast<std::uint32_t>(rest % 6);
                rest /= 6;
            }
            identities = gbf::parseval_holds(cand) && gbf::inversion_holds(cand);
        }
        c.expect(identities, "Parseval/inversion failed on a [1,6] candidate");
        return c.result();
    });

    // ------------------------------------------------------------------ 9 --
    h.run(9, "criterion unit suite: l-formula, replay, monotonicity", [] {
        Check c;
        // l-formula case split == closed form on every odd prime p < 1e5
        for (std::uint64_t p : scanner::primes_up_to(100'000)) {
            if (p == 2) continue;
            auto cert = criterion::gbf_criterion(Int(3), from_u64(p), 1);
            const long sign = mpz_even_p(cert.f.get_mpz_t()) ? 1 : -1;
            Int closed = 2 * (from_u64(p) - 1) / ((3 - sign) * cert.f);
            c.expect(cert.l == closed, "l mismatch at p=" + std::to_string(p));
            if (!c.ok) break;
        }

        // replay bit-exactness
        for (const char* p : {"1049177", "1050169", "4503599627370889", "89"}) {
            auto a = criterion::gbf_criterion(Int(3), parse_decimal(p), 1);
            auto b = criterion::gbf_criterion(Int(3), parse_decimal(p), 1);
            c.expect(report::to_json(a).dump() == report::to_json(b).dump(),
                     std::string("replay mismatch at p=") + p);
        }

        // monotonicity on 100 certified instances
        scanner::ScanFilter f;
        f.g = 8;
        f.f_parity = scanner::FParity::Odd;
        f.p_mod_8 = 1;
        f.require_certified = scanner::ScanFilter::Certify{Int(3), 1};
        f.lo = pow2(20);
        auto hits = scanner::scan(f, 100).hits;
        c.expect(hits.size() == 100, "expected 100 certified instances");
        for (const auto& hit : hits) {
            auto smaller = criterion::gbf_criterion(Int(1), hit.p, 1);
            c.expect(smaller.verdict == criterion::Verdict::NonexistenceCertified,
                     "monotonicity violated at p=" + to_decimal(hit.p));
        }
        return c.result();
    });

    // ----------------------------------------------------- substituted 10 --
    h.run(10, "density reports: monotone in x with M <= pi(x) up to 1e6", [] {
        Check c;
        std::uint64_t last_m = 0, last_pi = 0;
        for (std::uint64_t x : {1'000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
            auto rep = scanner::density(Int(2), Int(3), Int(8), x, false);
            c.expect(rep.m_count <= rep.pi_x, "M > pi(x)");
            c.expect(rep.m_count >= last_m && rep.pi_x >= last_pi,
                     "density not monotone in x");
            last_m = rep.m_count;
            last_pi = rep.pi_x;

            auto bounded = scanner::density(Int(2), Int(3), Int(8), x, true);
            c.expect(bounded.m_count <= rep.m_count,
                     "bound condition must only shrink M");
        }
        return c.result();
    });

    return h.finish();
}
