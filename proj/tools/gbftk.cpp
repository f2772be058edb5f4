// gbftk — certificate-emitting number theory CLI.
//
// Subcommands: certify, scan, smallest, density, wieferich, cyclo-verify,
// gbf-search, relsearch. Every command prints a JSON report envelope by
// default (--table for aligned text) and uses the stable exit-code contract:
//   0  success / nonexistence certified
//   2  usage or input error
//   10 inconclusive / relation solvable (nothing proven)
//   20 work budget exceeded
//   30 verification failure

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gbftk/report.hpp"
#include "gbftk/version.hpp"

namespace {

using gbftk::Int;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 10;
constexpr int kExitBudget = 20;
constexpr int kExitCheckFailed = 30;

struct GlobalOptions {
    bool table = false;
    bool jsonl = false;  // scan/wieferich/density: one JSON object per row
    std::uint64_t seed = gbftk::kDefaultSeed;
    unsigned threads = 1;
    std::uint64_t work_limit = 1'000'000;
    std::uint64_t rho_budget = 100'000'000;
};

double ms_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
}

gbftk::arith::FactorConfig factor_config(const GlobalOptions& g)
{
    gbftk::arith::FactorConfig cfg;
    cfg.seed = g.seed;
    cfg.rho_budget = g.rho_budget;
    return cfg;
}

gbftk::scanner::ScanConfig scan_config(const GlobalOptions& g)
{
    gbftk::scanner::ScanConfig cfg;
    cfg.factor = factor_config(g);
    cfg.candidate_budget = g.work_limit;
    cfg.threads = g.threads;
    return cfg;
}

gbftk::scanner::FParity parse_parity(const std::string& s)
{
    if (s == "odd") return gbftk::scanner::FParity::Odd;
    if (s == "even") return gbftk::scanner::FParity::Even;
    if (s == "any") return gbftk::scanner::FParity::Any;
    throw std::invalid_argument("--f-parity must be odd, even or any");
}

std::vector<unsigned> parse_subgroup(const std::string& s)
{
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(static_cast<unsigned>(std::stoul(tok)));
    }
    if (out.empty()) throw std::invalid_argument("--subgroup must list residues");
    return out;
}

void emit(const GlobalOptions& g, const json& envelope,
          const std::string& table_text)
{
    if (g.table && !table_text.empty())
        std::cout << table_text;
    else
        std::cout << envelope.dump(2) << "\n";
}

std::string fixture_dir(const std::string& flag_value)
{
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("GBF_FIXTURE_DIR")) return env;
    return "fixtures";
}

// ---------------------------------------------------------------- certify --

int run_certify(const GlobalOptions& g, const std::string& n_str,
                const std::string& p_str, unsigned e, const std::string& q_str)
{
    auto start = std::chrono::steady_clock::now();
    Int n = gbftk::parse_decimal(n_str);
    Int p = gbftk::parse_decimal(p_str);
    Int q = gbftk::parse_decimal(q_str);

    auto cert = gbftk::criterion::norm_criterion(q, n, p, e, factor_config(g));

    json params{{"n", n_str}, {"p", p_str}, {"e", e}, {"q", q_str}};
    json env = gbftk::report::envelope("certify", params,
                                       gbftk::report::to_json(cert), ms_since(start));
    std::ostringstream tab;
    tab << "certify n=" << n_str << " p=" << p_str << " e=" << e << " q=" << q_str
        << "\n  verdict: " << to_string(cert.verdict) << "\n";
    for (const auto& r : cert.reasons) tab << "  " << r << "\n";
    emit(g, env, tab.str());
    return cert.verdict == gbftk::criterion::Verdict::NonexistenceCertified
               ? kExitOk
               : kExitInconclusive;
}

// ------------------------------------------------------------------- scan --

int run_scan(const GlobalOptions& g, const std::string& from,
             const std::string& to, std::size_t count, const std::string& q_str,
             const std::string& g_str, const std::string& parity,
             int mod8, const std::string& certify_n, unsigned certify_e)
{
    auto start = std::chrono::steady_clock::now();
    gbftk::scanner::ScanFilter filter;
    filter.q = gbftk::parse_decimal(q_str);
    filter.lo = gbftk::parse_decimal(from);
    if (!to.empty()) filter.hi = gbftk::parse_decimal(to);
    if (!g_str.empty()) filter.g = gbftk::parse_decimal(g_str);
    filter.f_parity = parse_parity(parity);
    if (mod8 >= 0) filter.p_mod_8 = static_cast<unsigned>(mod8);
    if (!certify_n.empty())
        filter.require_certified = gbftk::scanner::ScanFilter::Certify{
            gbftk::parse_decimal(certify_n), certify_e};

    auto res = gbftk::scanner::scan(filter, count, scan_config(g));

    if (g.jsonl) {
        for (const auto& h : res.hits) {
            json row{{"p", gbftk::to_decimal(h.p)}};
            if (h.certificate) row["certificate"] = gbftk::report::to_json(*h.certificate);
            std::cout << row.dump() << "\n";
        }
        return kExitOk;
    }

    json params{{"from", from},   {"to", to.empty() ? json(nullptr) : json(to)},
                {"count", count}, {"q", q_str},
                {"g", g_str},     {"f_parity", parity},
                {"mod8", mod8},   {"certify_n", certify_n},
                {"certify_e", certify_e}};
    json env = gbftk::report::envelope("scan", params, gbftk::report::to_json(res),
                                       ms_since(start));
    std::ostringstream tab;
    for (const auto& h : res.hits) tab << gbftk::to_decimal(h.p) << "\n";
    emit(g, env, tab.str());
    return kExitOk;
}

// --------------------------------------------------------------- smallest --

int run_smallest(const GlobalOptions& g, const std::string& n_str,
                 const std::string& g_str, const std::string& parity, int mod8)
{
    auto start = std::chrono::steady_clock::now();
    std::optional<unsigned> m8;
    if (mod8 >= 0) m8 = static_cast<unsigned>(mod8);
    auto res = gbftk::scanner::smallest_certified(
        gbftk::parse_decimal(n_str), gbftk::parse_decimal(g_str),
        parse_parity(parity), m8, scan_config(g));

    json params{{"n", n_str}, {"g", g_str}, {"f_parity", parity}, {"mod8", mod8}};
    json results{{"p", gbftk::to_decimal(res.p)},
                 {"certificate", gbftk::report::to_json(res.certificate)},
                 {"examined", res.examined},
                 {"warnings", res.warnings}};
    json env = gbftk::report::envelope("smallest", params, results, ms_since(start));
    emit(g, env, gbftk::to_decimal(res.p) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------- density --

int run_density(const GlobalOptions& g, const std::string& q_str,
                const std::string& n_str, const std::string& g_str,
                std::uint64_t x, bool no_bound)
{
    auto start = std::chrono::steady_clock::now();
    auto rep = gbftk::scanner::density(gbftk::parse_decimal(q_str),
                                       gbftk::parse_decimal(n_str),
                                       gbftk::parse_decimal(g_str), x, !no_bound,
                                       scan_config(g));
    if (g.jsonl) {
        std::cout << gbftk::report::to_json(rep).dump() << "\n";
        return kExitOk;
    }
    json params{{"q", q_str}, {"n", n_str}, {"g", g_str}, {"x", x},
                {"no_bound", no_bound}};
    json env = gbftk::report::envelope("density", params,
                                       gbftk::report::to_json(rep), ms_since(start));
    std::ostringstream tab;
    tab << "M(" << x << ") = " << rep.m_count << "   pi(x) = " << rep.pi_x
        << "   ratio = " << rep.ratio() << "\n";
    emit(g, env, tab.str());
    return kExitOk;
}

// -------------------------------------------------------------- wieferich --

int run_wieferich(const GlobalOptions& g, std::uint64_t q, std::uint64_t limit)
{
    auto start = std::chrono::steady_clock::now();
    auto primes = gbftk::scanner::wieferich_scan(q, limit, scan_config(g));
    if (g.jsonl) {
        for (auto p : primes)
            std::cout << json{{"p", std::to_string(p)}, {"q", q}}.dump() << "\n";
        return kExitOk;
    }
    json params{{"q", q}, {"limit", limit}};
    json results{{"q", q}, {"limit", limit}, {"primes", json::array()}};
    for (auto p : primes) results["primes"].push_back(std::to_string(p));
    json env = gbftk::report::envelope("wieferich", params, results, ms_since(start));
    std::ostringstream tab;
    for (auto p : primes) tab << p << "\n";
    emit(g, env, tab.str());
    return kExitOk;
}

// ----------------------------------------------------------- cyclo-verify --

int run_cyclo_verify(const GlobalOptions& g, unsigned p,
                     const std::string& subgroup_str)
{
    auto start = std::chrono::steady_clock::now();
    gbftk::cyclo::SubfieldSpec sub(p, parse_subgroup(subgroup_str));
    auto rep = gbftk::cyclo::delta_report(sub);
    json params{{"p", p}, {"subgroup", subgroup_str}};
    json env = gbftk::report::envelope("cyclo-verify", params,
                                       gbftk::report::to_json(rep), ms_since(start));
    std::ostringstream tab;
    tab << "p=" << p << " [E:Q]=" << rep.degree_E
        << " checks: conj=" << rep.checks.xi_conj_is_neg_xi
        << " square=" << rep.checks.xi_sq_is_neg_delta
        << " norm=" << rep.checks.norm_consistent
        << " nonneg=" << rep.checks.totally_nonneg << "\n";
    emit(g, env, tab.str());
    return rep.checks.all() ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------- gbf-search --

int run_gbf_search(const GlobalOptions& g, unsigned n, unsigned t,
                   std::uint64_t limit)
{
    auto start = std::chrono::steady_clock::now();
    auto res = gbftk::gbf::exhaustive_search(n, t, limit, g.threads);
    json params{{"n", n}, {"t", t}, {"limit", limit}};
    json results = gbftk::report::to_json(res);
    results["n"] = n;
    results["t"] = t;
    json env = gbftk::report::envelope("gbf-search", params, results,
                                       ms_since(start));
    std::ostringstream tab;
    tab << "type [" << n << ", " << t << "]: " << res.tables.size() << " of "
        << res.examined << " tables are bent\n";
    emit(g, env, tab.str());
    return kExitOk;
}

// -------------------------------------------------------------- relsearch --

int run_relsearch(const GlobalOptions& g, const std::string& fixture_path,
                  const std::string& n_str, bool do_max_np, unsigned n_max,
                  const std::string& scanset, const std::string& dir_flag)
{
    auto start = std::chrono::steady_clock::now();
    gbftk::relsearch::RelSearchConfig cfg;
    cfg.threads = g.threads;

    if (!scanset.empty()) {
        // batch mode: one fixture per listed prime, clearly labeled when absent
        const std::string dir = fixture_dir(dir_flag);
        Int n = gbftk::parse_decimal(n_str.empty() ? "3" : n_str);
        std::ifstream in(scanset);
        if (!in) throw std::invalid_argument("cannot open scanset: " + scanset);
        json rows = json::array();
        std::size_t verified = 0, missing = 0, solvable = 0;
        std::string line;
        while (std::getline(in, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::istringstream ls(line);
            std::string tok;
            if (!(ls >> tok)) continue;
            Int p = gbftk::parse_decimal(tok);
            std::filesystem::path fxpath =
                std::filesystem::path(dir) / ("p" + tok + ".fx");
            json row{{"p", tok}};
            if (!std::filesystem::exists(fxpath)) {
                row["status"] = "missing-fixture";
                row["fixture"] = fxpath.string();
                ++missing;
            } else {
                auto fx = gbftk::relsearch::load_fixture_file(fxpath.string());
                bool odd_solvable = false;
                for (Int m = 1; m <= n; m += 2)
                    if (gbftk::relsearch::relation_solvable(
                            fx, m, gbftk::relsearch::WitnessOrder::SolvabilityOnly,
                            cfg)) {
                        odd_solvable = true;
                        break;
                    }
                if (odd_solvable) {
                    row["status"] = "solvable";
                    ++solvable;
                } else {
                    row["status"] = "verified-unsolvable";
                    ++verified;
                }
            }
            rows.push_back(std::move(row));
        }
        json params{{"scanset", scanset}, {"n", gbftk::to_decimal(n)},
                    {"fixture_dir", dir}};
        json results{{"rows", rows},
                     {"verified", verified},
                     {"missing", missing},
                     {"solvable", solvable},
                     {"partial", missing != 0}};
        json env = gbftk::report::envelope("relsearch", params, results,
                                           ms_since(start));
        std::ostringstream tab;
        tab << "verified " << verified << ", missing " << missing << ", solvable "
            << solvable << "\n";
        emit(g, env, tab.str());
        if (solvable > 0 || missing > 0) return kExitInconclusive;
        return kExitOk;
    }

    auto fx = gbftk::relsearch::load_fixture_file(fixture_path);
    json params{{"fixture", fixture_path}};
    json results{{"fixture", gbftk::report::to_json(fx)}};

    if (do_max_np) {
        auto res = gbftk::relsearch::max_np(fx, n_max, cfg);
        params["mode"] = "max-np";
        params["n_max"] = n_max;
        results["max_np"] = gbftk::report::to_json(res);
        json env = gbftk::report::envelope("relsearch", params, results,
                                           ms_since(start), fx.provenance);
        std::ostringstream tab;
        tab << "p=" << gbftk::to_decimal(fx.p) << " n_p=";
        using Status = gbftk::relsearch::MaxNpResult::Status;
        if (res.status == Status::SolvableAtOne)
            tab << "none (solvable at n=1)\n";
        else if (res.status == Status::Exact)
            tab << res.value << "\n";
        else
            tab << ">= " << res.value << "\n";
        emit(g, env, tab.str());
        return res.status == Status::SolvableAtOne ? kExitInconclusive : kExitOk;
    }

    Int n = gbftk::parse_decimal(n_str);
    auto witness = gbftk::relsearch::relation_solvable(
        fx, n, gbftk::relsearch::WitnessOrder::Least, cfg);
    params["mode"] = "single-n";
    params["n"] = gbftk::to_decimal(n);
    results["solvable"] = witness.has_value();
    results["witness"] =
        witness ? gbftk::report::to_json(*witness) : json(nullptr);
    json env = gbftk::report::envelope("relsearch", params, results,
                                       ms_since(start), fx.provenance);
    std::ostringstream tab;
    if (witness) {
        tab << "solvable; witness:";
        for (unsigned v : witness->exponents) tab << " " << v;
        tab << "\n";
    } else {
        tab << "unsolvable for n=" << gbftk::to_decimal(n)
            << " (nonexistence certified for this n)\n";
    }
    emit(g, env, tab.str());
    // a witness means nothing is proven; unsolvable certifies this n
    return witness ? kExitInconclusive : kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"gbftk — nonexistence certificates for generalized bent "
                 "functions via norm-form criteria and class-group relation "
                 "search"};
    app.set_version_flag("--version", gbftk::kVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand too

    GlobalOptions g;
    app.add_flag("--table", g.table, "aligned text output instead of JSON");
    app.add_flag("--jsonl", g.jsonl,
                 "scan/wieferich/density: one JSON object per result row");
    app.add_option("--seed", g.seed, "seed for all randomized internals");
    app.add_option("--threads", g.threads, "worker threads (output-invariant)");
    app.add_option("--work-limit", g.work_limit, "max scan candidates per call");
    app.add_option("--rho-budget", g.rho_budget, "max rho iterations per factoring");

    // certify
    auto* certify = app.add_subcommand("certify", "evaluate the nonexistence criterion");
    std::string c_n, c_p, c_q = "2";
    unsigned c_e = 1;
    certify->add_option("--n", c_n, "odd exponent n")->required();
    certify->add_option("--p", c_p, "odd prime p")->required();
    certify->add_option("--e", c_e, "prime-power exponent e (default 1)");
    certify->add_option("--q", c_q, "norm-form base prime q (default 2)");

    // scan
    auto* scan = app.add_subcommand("scan", "filtered ascending prime scan");
    std::string s_from, s_to, s_q = "2", s_g, s_parity = "any", s_certn;
    int s_mod8 = -1;
    std::size_t s_count = 10;
    unsigned s_certe = 1;
    scan->add_option("--from", s_from, "range start (>= 3)")->required();
    scan->add_option("--to", s_to, "inclusive range end (default open)");
    scan->add_option("--count", s_count, "stop after this many results");
    scan->add_option("--q", s_q, "order base q (default 2)");
    scan->add_option("--g", s_g, "require (p-1)/ord_p(q) = g");
    scan->add_option("--f-parity", s_parity, "odd | even | any");
    scan->add_option("--mod8", s_mod8, "require p = r (mod 8)");
    scan->add_option("--certify-n", s_certn, "attach + require certificates for n");
    scan->add_option("--certify-e", s_certe, "certificate exponent e (default 1)");

    // smallest
    auto* smallest = app.add_subcommand("smallest", "least certified prime above the floor");
    std::string m_n, m_g;
    std::string m_parity = "odd";
    int m_mod8 = -1;
    smallest->add_option("--n", m_n, "odd exponent n")->required();
    smallest->add_option("--g", m_g, "required (p-1)/ord_p(2)")->required();
    smallest->add_option("--f-parity", m_parity, "odd | even (default odd)");
    smallest->add_option("--mod8", m_mod8, "require p = r (mod 8)");

    // density
    auto* density = app.add_subcommand("density", "empirical order-condition counts");
    std::string d_q = "2", d_n = "3", d_g;
    std::uint64_t d_x = 0;
    bool d_nobound = false;
    density->add_option("--q", d_q, "order base q (default 2)");
    density->add_option("--n", d_n, "bound exponent n (default 3)");
    density->add_option("--g", d_g, "required (p-1)/ord_p(q)")->required();
    density->add_option("--x", d_x, "count primes up to x")->required();
    density->add_flag("--no-bound", d_nobound, "drop the criterion bound condition");

    // wieferich
    auto* wief = app.add_subcommand("wieferich", "base-q Wieferich prime scan");
    std::uint64_t w_q = 2, w_limit = 0;
    wief->add_option("--q", w_q, "base prime q (default 2)");
    wief->add_option("--limit", w_limit, "scan primes up to limit")->required();

    // cyclo-verify
    auto* cyclo = app.add_subcommand("cyclo-verify", "verify the CM-subfield construction");
    unsigned y_p = 0;
    std::string y_subgroup;
    cyclo->add_option("--p", y_p, "odd prime conductor")->required();
    cyclo->add_option("--subgroup", y_subgroup, "fixing subgroup, e.g. 1,2,4")->required();

    // gbf-search
    auto* gbfs = app.add_subcommand("gbf-search", "exhaustive bent-function search");
    unsigned b_n = 1, b_t = 2;
    std::uint64_t b_limit = 10'000'000;
    gbfs->add_option("--n", b_n, "dimension n")->required();
    gbfs->add_option("--t", b_t, "modulus t")->required();
    gbfs->add_option("--limit", b_limit, "max candidate tables (default 1e7)");

    // relsearch
    auto* rel = app.add_subcommand("relsearch", "class-group relation search");
    std::string r_fixture, r_n, r_scanset, r_dir;
    bool r_maxnp = false;
    unsigned r_nmax = 45;
    rel->add_option("--fixture", r_fixture, "fixture file path");
    rel->add_option("--n", r_n, "odd n for a single solvability query");
    rel->add_flag("--max-np", r_maxnp, "locate the largest unsolvable odd prefix");
    rel->add_option("--n-max", r_nmax, "cap for --max-np (default 45)");
    rel->add_option("--scanset", r_scanset, "batch-verify primes listed in a scanset file");
    rel->add_option("--fixture-dir", r_dir, "fixture directory for --scanset");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*certify) return run_certify(g, c_n, c_p, c_e, c_q);
        if (*scan)
            return run_scan(g, s_from, s_to, s_count, s_q, s_g, s_parity, s_mod8,
                            s_certn, s_certe);
        if (*smallest) return run_smallest(g, m_n, m_g, m_parity, m_mod8);
        if (*density) return run_density(g, d_q, d_n, d_g, d_x, d_nobound);
        if (*wief) return run_wieferich(g, w_q, w_limit);
        if (*cyclo) return run_cyclo_verify(g, y_p, y_subgroup);
        if (*gbfs) return run_gbf_search(g, b_n, b_t, b_limit);
        if (*rel) {
            if (r_scanset.empty() && r_fixture.empty())
                throw std::invalid_argument("relsearch needs --fixture or --scanset");
            if (r_scanset.empty() && !r_maxnp && r_n.empty())
                throw std::invalid_argument("relsearch needs --n or --max-np");
            return run_relsearch(g, r_fixture, r_n, r_maxnp, r_nmax, r_scanset,
                                 r_dir);
        }
    } catch (const gbftk::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const gbftk::check_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitCheckFailed;
    } catch (const gbftk::relsearch::parse_error& e) {
        std::cerr << "fixture error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
