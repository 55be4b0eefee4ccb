#pragma once
// The verification battery: exact identities, degree and genus formulas, end
// counts, root classification, transversality, singular points, monodromy
// and itinerary rotation, each reduced to a pass/fail verdict.

#include <cstdint>
#include <string>
#include <vector>

#include "dynacurve/dynatomic.hpp"
#include "json.hpp"

namespace dynacurve {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string summary;
  std::vector<CheckResult> checks;
  double seconds = 0;
};

struct AcceptanceOptions {
  ResourceLimits limits;
  std::uint64_t seed = 20240611;
};

constexpr int kCriterionCount = 9;

const char* criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

// Identity checks over d in {2,3,4}, n <= max_n, p <= max_p, d^(n+p) <= limits.max_degree.
CriterionResult identity_suite(const AcceptanceOptions& opt, int max_n = 3, int max_p = 4);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const CriterionResult& r);

}  // namespace dynacurve
