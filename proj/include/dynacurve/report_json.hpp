#pragma once
// JSON records for the reports produced by the library.  Every top-level
// record carries "schema": 1 and a "kind" naming its layout.

#include "dynacurve/dynatomic.hpp"
#include "dynacurve/itinerary.hpp"
#include "dynacurve/monodromy.hpp"
#include "dynacurve/numerics.hpp"
#include "json.hpp"

namespace dynacurve {

constexpr int kSchemaVersion = 1;

nlohmann::json cplx_json(lcplx z);  // [re, im]
nlohmann::json cplx_json(const std::vector<lcplx>& v);
lcplx cplx_from_json(const nlohmann::json& j);

// Closed-form invariants of one (d, n, p) cell; fields that do not apply are null.
nlohmann::json invariants_record(int d, int n, int p);
// Column order of the CSV table and the matching row.
std::vector<std::string> invariants_csv_header();
std::vector<std::string> invariants_csv_row(const nlohmann::json& record);

nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const RootClassification& r);
nlohmann::json to_json(const TransversalityReport& r);
nlohmann::json to_json(const SingularReport& r);
nlohmann::json to_json(const Itinerary& it);
nlohmann::json to_json(const EndLabel& e);
nlohmann::json to_json(const EndMatchReport& r);
nlohmann::json to_json(const GaloisReport& r);
nlohmann::json to_json(const WreathReport& r);

// Wraps a payload as a versioned top-level record.
nlohmann::json envelope(const std::string& kind, nlohmann::json payload);
// Throws MalformedInput unless j is a top-level record of the given kind.
void require_envelope(const nlohmann::json& j, const std::string& kind);

}  // namespace dynacurve
