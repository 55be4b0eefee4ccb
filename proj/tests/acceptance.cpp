// Runs the verification battery and prints one verdict line per criterion.

#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "dynacurve/acceptance.hpp"

using namespace dynacurve;

int main(int argc, char** argv) {
  CLI::App app{"dynacurve acceptance battery"};
  std::vector<int> only;
  bool verbose = false;
  double max_bytes = ResourceLimits{}.max_bytes;
  std::string json_path;
  app.add_option("--only", only, "criteria to run (default: all)")->check(CLI::Range(1, kCriterionCount));
  app.add_flag("-v,--verbose", verbose, "print every individual check");
  app.add_option("--max-bytes", max_bytes, "memory ceiling for one iterate difference");
  app.add_option("--json", json_path, "also write the full report here");
  CLI11_PARSE(app, argc, argv);

  if (only.empty())
    for (int k = 1; k <= kCriterionCount; ++k) only.push_back(k);
  AcceptanceOptions opt;
  opt.limits.max_bytes = max_bytes;

  int failed = 0;
  nlohmann::json report = nlohmann::json::array();
  for (int id : only) {
    auto r = run_criterion(id, opt);
    failed += !r.pass;
    std::printf("%s  criterion %d  %s: %s  [%.1f s]\n", r.pass ? "PASS" : "FAIL", id, r.title.c_str(),
                r.summary.c_str(), r.seconds);
    if (verbose)
      for (const auto& c : r.checks)
        std::printf("      %s %s: %s\n", c.pass ? "ok  " : "FAIL", c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    report.push_back(to_json(r));
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(only.size()) - failed, only.size());
  if (!json_path.empty()) std::ofstream(json_path) << nlohmann::json{{"schema", 1}, {"criteria", report}}.dump(2) << "\n";
  return failed == 0 ? 0 : 1;
}
