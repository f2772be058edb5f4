#pragma once

// JSON views of the result types. Integers that may exceed 64 bits are
// serialized as decimal strings so the reports survive any JSON reader.

#include <string>

#include <nlohmann/json.hpp>

#include "gbftk/criterion.hpp"
#include "gbftk/cyclotomic.hpp"
#include "gbftk/gbf.hpp"
#include "gbftk/relsearch.hpp"
#include "gbftk/scanner.hpp"

namespace gbftk::report {

nlohmann::json to_json(const criterion::Certificate& cert);
nlohmann::json to_json(const criterion::KnownResultFlags& flags);
nlohmann::json to_json(const cyclo::CyclotomicInt& a);
nlohmann::json to_json(const cyclo::DeltaReport& rep);
nlohmann::json to_json(const scanner::ScanResult& res);
nlohmann::json to_json(const scanner::DensityReport& rep);
nlohmann::json to_json(const gbf::SearchResult& res, std::size_t table_cap = 100);
nlohmann::json to_json(const relsearch::ClassGroupFixture& fx);
nlohmann::json to_json(const relsearch::RelationWitness& w);
nlohmann::json to_json(const relsearch::MaxNpResult& r);

// Standard report envelope shared by every CLI command.
nlohmann::json envelope(const std::string& command, nlohmann::json parameters,
                        nlohmann::json results, double timing_ms,
                        const std::string& fixture_provenance = "");

}  // namespace gbftk::report
