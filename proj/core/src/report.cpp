#include "gbftk/report.hpp"

#include "gbftk/version.hpp"

namespace gbftk::report {

using nlohmann::json;

json to_json(const criterion::Certificate& cert)
{
    json j;
    j["q"] = to_decimal(cert.q);
    j["n"] = to_decimal(cert.n);
    j["p"] = to_decimal(cert.p);
    j["e"] = cert.e;
    j["f"] = to_decimal(cert.f);
    j["g"] = to_decimal(cert.g);
    j["l"] = to_decimal(cert.l);
    j["two_part_l"] = to_decimal(cert.two_part_l);
    j["bound"] = cert.bound ? json(to_decimal(*cert.bound)) : json(nullptr);
    j["bound_form"] = cert.bound_form;
    j["wieferich_ok"] = cert.wieferich_ok ? json(*cert.wieferich_ok) : json(nullptr);
    j["verdict"] = to_string(cert.verdict);
    j["reasons"] = cert.reasons;
    return j;
}

json to_json(const criterion::KnownResultFlags& flags)
{
    return json{{"kumar_applies", flags.kumar_applies},
                {"p_mod_8", flags.p_mod_8},
                {"f_parity", flags.f_odd ? "odd" : "even"},
                {"n_is_one", flags.n_is_one},
                {"new_case", flags.new_case}};
}

json to_json(const cyclo::CyclotomicInt& a)
{
    json coeffs = json::array();
    for (const Int& c : a.coeffs()) coeffs.push_back(to_decimal(c));
    return json{{"conductor", a.conductor()}, {"coeffs", coeffs}};
}

json to_json(const cyclo::DeltaReport& rep)
{
    json embeddings = json::array();
    for (const auto& v : rep.embeddings_delta)
        embeddings.push_back(json{{"re", static_cast<double>(v.real())},
                                  {"im", static_cast<double>(v.imag())}});
    return json{{"p", rep.p},
                {"subgroup", rep.subgroup},
                {"degree_E", rep.degree_E},
                {"gamma", to_json(rep.gamma)},
                {"xi", to_json(rep.xi)},
                {"delta", to_json(rep.delta)},
                {"abs_norm_delta", to_decimal(rep.abs_norm_delta)},
                {"embeddings_delta", embeddings},
                {"checks",
                 json{{"xi_conj_is_neg_xi", rep.checks.xi_conj_is_neg_xi},
                      {"xi_sq_is_neg_delta", rep.checks.xi_sq_is_neg_delta},
                      {"norm_consistent", rep.checks.norm_consistent},
                      {"totally_nonneg", rep.checks.totally_nonneg},
                      {"tolerance", rep.checks.tolerance},
                      {"all_pass", rep.checks.all()}}}};
}

json to_json(const scanner::ScanResult& res)
{
    json hits = json::array();
    for (const auto& h : res.hits) {
        json entry{{"p", to_decimal(h.p)}};
        entry["certificate"] =
            h.certificate ? to_json(*h.certificate) : json(nullptr);
        hits.push_back(std::move(entry));
    }
    return json{
        {"primes", hits}, {"examined", res.examined}, {"warnings", res.warnings}};
}

json to_json(const scanner::DensityReport& rep)
{
    return json{{"q", to_decimal(rep.q)},
                {"n", to_decimal(rep.n)},
                {"g", to_decimal(rep.g)},
                {"x", rep.x},
                {"m_count", rep.m_count},
                {"pi_x", rep.pi_x},
                {"bound_applied", rep.bound_applied},
                {"ratio", {{"num", rep.m_count}, {"den", rep.pi_x},
                           {"value", rep.ratio()}}}};
}

json to_json(const gbf::SearchResult& res, std::size_t table_cap)
{
    json j{{"examined", res.examined}, {"count", res.tables.size()}};
    if (res.tables.size() <= table_cap) {
        json tables = json::array();
        for (const auto& t : res.tables) tables.push_back(t);
        j["tables"] = std::move(tables);
    } else {
        j["tables"] = json(nullptr);
    }
    return j;
}

json to_json(const relsearch::ClassGroupFixture& fx)
{
    return json{{"p", to_decimal(fx.p)},
                {"g", fx.g},
                {"invariants", fx.invariants},
                {"class_number", to_decimal(fx.class_number())},
                {"provenance", fx.provenance}};
}

json to_json(const relsearch::RelationWitness& w)
{
    return json{{"n", to_decimal(w.n)}, {"exponents", w.exponents}};
}

json to_json(const relsearch::MaxNpResult& r)
{
    switch (r.status) {
        case relsearch::MaxNpResult::Status::SolvableAtOne:
            return json{{"status", "solvable-at-1"}, {"n_p", nullptr}};
        case relsearch::MaxNpResult::Status::Exact:
            return json{{"status", "exact"}, {"n_p", r.value}};
        case relsearch::MaxNpResult::Status::AtLeastMax:
            return json{{"status", "at-least"}, {"n_p", r.value}};
    }
    return json();
}

json envelope(const std::string& command, json parameters, json results,
              double timing_ms, const std::string& fixture_provenance)
{
    json j{{"command", command},
           {"parameters", std::move(parameters)},
           {"results", std::move(results)},
           {"timing_ms", timing_ms},
           {"version", kVersion}};
    if (!fixture_provenance.empty()) j["fixture_provenance"] = fixture_provenance;
    return j;
}

}  // namespace gbftk::report
