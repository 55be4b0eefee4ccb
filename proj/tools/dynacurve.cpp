// Command-line front end: construction, invariants, classification,
// monodromy, end labels and the verification battery.  Every JSON record
// carries "schema": 1.  Exit codes: 0 ok, 1 bad input, 2 identity
// violation, 3 resource cap, 4 numerical nonconvergence.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dynacurve/acceptance.hpp"
#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/itinerary.hpp"
#include "dynacurve/monodromy.hpp"
#include "dynacurve/numerics.hpp"
#include "dynacurve/report_json.hpp"

using namespace dynacurve;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kBadInput = 1, kIdentity = 2, kResourceCap = 3, kNonConvergence = 4 };

struct RunConfig {
  int d = 2, n = 1, p = 1;
  int factor = 0;  // 0: all factors
  int bits = 0;    // 0: DYNACURVE_PRECISION or the library default
  long max_degree = ResourceLimits{}.max_degree;
  double max_bytes = ResourceLimits{}.max_bytes;
  std::string output, plot;

  ResourceLimits limits() const { return {max_degree, max_bytes}; }
  RootOptions roots() const {
    RootOptions o;
    if (bits > 0) o.bits = bits;
    return o;
  }
};

void add_cell(CLI::App* sub, RunConfig& cfg, bool need_n = true) {
  sub->add_option("--d", cfg.d, "degree of z^d + c")->required()->check(CLI::Range(2, 64));
  if (need_n) {
    sub->add_option("--n", cfg.n, "preperiod")->check(CLI::NonNegativeNumber);
    sub->add_option("--p", cfg.p, "period")->check(CLI::PositiveNumber);
  }
  sub->add_option("--bits", cfg.bits, "working precision in bits (default: DYNACURVE_PRECISION or 64)")
      ->check(CLI::Range(24, 65536));
  sub->add_option("--max-degree", cfg.max_degree, "refuse cells with d^(n+p) above this")->check(CLI::PositiveNumber);
  sub->add_option("--max-bytes", cfg.max_bytes, "memory ceiling for one iterate difference")
      ->check(CLI::PositiveNumber);
  sub->add_option("-o,--output", cfg.output, "write here instead of stdout");
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(cfg.output);
  if (!out) throw MalformedInput("cannot write " + cfg.output);
  out << text << "\n";
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2)); }

// Accepts "x", "x,y", "x+yi", "x-yi" and "yi".
lcplx parse_complex(std::string s) {
  std::erase_if(s, [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
  auto num = [&](const std::string& t) -> long double {
    if (t.empty() || t == "+") return 1;
    if (t == "-") return -1;
    std::size_t used = 0;
    long double v = 0;
    try {
      v = std::stold(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw MalformedInput("cannot read a complex number from '" + s + "'");
    return v;
  };
  if (s.empty()) throw MalformedInput("empty complex number");
  if (auto comma = s.find(','); comma != std::string::npos)
    return {num(s.substr(0, comma)), num(s.substr(comma + 1))};
  if (s.back() != 'i') return {num(s), 0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') split = k;
  if (split == std::string::npos) return {0, num(s)};
  if (split == 0) throw MalformedInput("cannot read a complex number");
  return {num(s.substr(0, split)), num(s.substr(split))};
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out;
}

std::vector<int> factor_range(const RunConfig& cfg) {
  if (cfg.factor < 0 || cfg.factor >= cfg.d) throw PreconditionViolated("factor index must lie in 1..d-1");
  if (cfg.factor > 0) return {cfg.factor};
  std::vector<int> out;
  for (int j = 1; j < cfg.d; ++j) out.push_back(j);
  return out;
}

json cell_json(const RunConfig& cfg) { return {{"d", cfg.d}, {"n", cfg.n}, {"p", cfg.p}}; }

// ---------------------------------------------------------------- poly

int cmd_poly(const RunConfig& cfg, const std::string& which, bool verify) {
  FamilyContext ctx(cfg.d, cfg.limits());
  ctx.check_cap(cfg.n, cfg.p);
  if (verify) {
    auto rep = verify_identities(ctx, cfg.n, cfg.p);
    emit(cfg, envelope("identity_report", to_json(rep)));
    return rep.all_pass() ? kOk : kIdentity;
  }
  const CycPoly2* poly = nullptr;
  if (which == "phi") {
    poly = &ctx.phi(cfg.n, cfg.p);
  } else if (which == "Q") {
    poly = &ctx.Q(cfg.n, cfg.p);
  } else {
    if (cfg.factor < 1 || cfg.factor >= cfg.d) throw PreconditionViolated("--q needs --factor in 1..d-1");
    if (cfg.n < 1) throw PreconditionViolated("factors exist for n >= 1");
    poly = &ctx.factor(cfg.n, cfg.p, cfg.factor);
  }
  json out = to_json(*poly);
  out["kind"] = "polynomial";
  out["which"] = which;
  out["n"] = cfg.n;
  out["p"] = cfg.p;
  if (which == "q") out["factor"] = cfg.factor;
  out["deg_z"] = poly->deg_z();
  emit(cfg, out);
  return kOk;
}

// ---------------------------------------------------------------- invariants

int cmd_invariants(const RunConfig& cfg, bool grid, int max_d, int max_n, int max_p, const std::string& format) {
  if (!grid) {
    emit(cfg, envelope("invariants", invariants_record(cfg.d, cfg.n, cfg.p)));
    return kOk;
  }
  std::vector<json> rows;
  for (int d = 2; d <= max_d; ++d)
    for (int n = 0; n <= max_n; ++n)
      for (int p = 1; p <= max_p; ++p) rows.push_back(invariants_record(d, n, p));
  if (format == "json") {
    emit(cfg, envelope("invariants_grid", {{"rows", rows}}));
    return kOk;
  }
  std::string text = "# schema 1\n" + csv_line(invariants_csv_header());
  for (const auto& r : rows) text += "\n" + csv_line(invariants_csv_row(r));
  emit(cfg, text);
  return kOk;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const RunConfig& cfg, lcplx c0) {
  FamilyContext ctx(cfg.d, cfg.limits());
  auto rep = classify_roots(ctx, cfg.n, cfg.p, c0, cfg.roots());
  emit(cfg, envelope("root_classification", to_json(rep)));
  if (!cfg.plot.empty()) {
    std::ofstream out(cfg.plot);
    out << "re,im,multiplicity,condition\n";
    for (const auto& x : rep.roots)
      out << static_cast<double>(x.z.real()) << "," << static_cast<double>(x.z.imag()) << "," << x.multiplicity
          << "," << condition_name(x.condition) << "\n";
  }
  return rep.unclassified() == 0 ? kOk : kNonConvergence;
}

// ---------------------------------------------------------------- transversality

int cmd_transversality(const RunConfig& cfg) {
  if (cfg.n < 2) throw PreconditionViolated("Misiurewicz points need n >= 2");
  FamilyContext ctx(cfg.d, cfg.limits());
  json points = json::array();
  bool all = true;
  for (int j : factor_range(cfg)) {
    for (lcplx c0 : find_misiurewicz(ctx, cfg.n, cfg.p, j, cfg.roots()).roots) {
      auto rep = transversality_check(ctx, cfg.n, cfg.p, c0);
      all = all && rep.pass();
      json rec = to_json(rep);
      rec["factor"] = j;
      points.push_back(rec);
    }
  }
  json out = cell_json(cfg);
  out["points"] = points;
  out["all_pass"] = all;
  emit(cfg, envelope("transversality", out));
  return all ? kOk : kIdentity;
}

// ---------------------------------------------------------------- singular

int cmd_singular(const RunConfig& cfg) {
  FamilyContext ctx(cfg.d, cfg.limits());
  auto rep = singular_point_report(ctx, cfg.n, cfg.p, cfg.roots());
  json out = to_json(rep);
  out["expected_count"] = cfg.d == 2 ? "0" : singular_count(cfg.d, cfg.n, cfg.p).get_str();
  bool count_ok = cfg.d == 2 ? rep.points.empty()
                             : mpz_class(rep.total_multiplicity()) == singular_count(cfg.d, cfg.n, cfg.p);
  out["count_matches"] = count_ok;
  emit(cfg, envelope("singular_points", out));
  return count_ok && rep.gradients_nonzero() && rep.tangents_distinct() ? kOk : kIdentity;
}

// ---------------------------------------------------------------- monodromy

int cmd_monodromy(const RunConfig& cfg) {
  FamilyContext ctx(cfg.d, cfg.limits());
  auto m = compute_monodromy(ctx, cfg.n, cfg.p, 3, cfg.roots());
  json gens = json::array();
  for (const auto& g : m.generators) gens.push_back(g);
  json out = cell_json(cfg);
  out["basepoint"] = cplx_json(m.loops.basepoint);
  out["critical_values"] = cplx_json(m.loops.critical_values);
  out["roots"] = cplx_json(m.roots);
  out["factor_of"] = m.factor_of;
  out["generators"] = gens;
  out["outer"] = m.outer;
  out["min_clearance"] = static_cast<double>(m.loops.min_clearance);

  bool ok = true;
  if (cfg.factor > 0) {
    if (cfg.n < 1 || cfg.factor >= cfg.d) throw PreconditionViolated("--factor needs n >= 1 and j in 1..d-1");
    auto subset = factor_roots(m, cfg.factor);
    std::vector<Perm> restricted;
    for (const auto& g : m.generators) restricted.push_back(restrict_to(g, subset));
    auto g = generate_group(restricted);
    mpz_class expected = galois_order_factor(cfg.d, cfg.n, cfg.p);
    mpq_class genus = monodromy_genus(m, subset);
    bool transitive = is_transitive(restricted, identity_perm(static_cast<int>(subset.size())));
    ok = g.order == expected && transitive && genus == mpq_class(genus_preperiodic(cfg.d, cfg.n, cfg.p));
    json rg = json::array();
    for (const auto& r : restricted) rg.push_back(r);
    out["factor"] = cfg.factor;
    out["factor_roots"] = subset;
    out["order"] = g.order.get_str();
    out["property_report"] = {{"expected_order", expected.get_str()},
                              {"order_matches", g.order == expected},
                              {"transitive", transitive},
                              {"genus", genus.get_str()},
                              {"expected_genus", genus_preperiodic(cfg.d, cfg.n, cfg.p).get_str()},
                              {"restricted_generators", rg},
                              {"pass", ok}};
  } else {
    auto g = generate_group(m.generators);
    auto rep = verify_galois_properties(ctx, m, g);
    json props = to_json(rep);
    ok = rep.pass();
    if (cfg.n >= 2) {
      auto w = wreath_check(m, g);
      props["wreath"] = to_json(w);
      ok = ok && w.pass();
    }
    out["order"] = g.order.get_str();
    out["property_report"] = props;
  }
  emit(cfg, envelope("monodromy", out));
  if (!cfg.plot.empty()) {
    std::ofstream plot(cfg.plot);
    plot << "kind,re,im\n";
    for (lcplx v : m.loops.critical_values)
      plot << "critical_value," << static_cast<double>(v.real()) << "," << static_cast<double>(v.imag()) << "\n";
    for (lcplx z : m.roots)
      plot << "basepoint_root," << static_cast<double>(z.real()) << "," << static_cast<double>(z.imag()) << "\n";
  }
  return ok ? kOk : kIdentity;
}

// ---------------------------------------------------------------- ends

int cmd_ends(const RunConfig& cfg, const std::optional<lcplx>& at) {
  if (cfg.n < 1) throw PreconditionViolated("ends are labelled for n >= 1");
  json labels = json::array();
  for (int j : factor_range(cfg))
    for (const auto& e : end_classes_for_factor(cfg.d, cfg.n, cfg.p, j)) labels.push_back(to_json(e));
  json out = cell_json(cfg);
  out["labels"] = labels;
  out["ends_per_factor"] = ends_count(cfg.d, cfg.n, cfg.p).get_str();
  bool ok = true;
  if (at) {
    FamilyContext ctx(cfg.d, cfg.limits());
    json matches = json::array();
    for (int j : factor_range(cfg)) {
      auto rep = match_roots_to_ends(ctx, cfg.n, cfg.p, j, *at, cfg.roots());
      ok = ok && rep.pass();
      matches.push_back(to_json(rep));
    }
    out["at"] = cplx_json(*at);
    out["matches"] = matches;
  }
  emit(cfg, envelope("end_labels", out));
  return ok ? kOk : kIdentity;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& grid, std::vector<int> only) {
  AcceptanceOptions opt;
  opt.limits = cfg.limits();
  int max_n = grid == "small" ? 2 : 3, max_p = grid == "small" ? 2 : 4;
  std::vector<CriterionResult> results;
  if (suite == "identities") {
    auto t0 = std::chrono::steady_clock::now();
    auto r = identity_suite(opt, max_n, max_p);
    r.id = 1;
    r.title = criterion_title(1);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(r);
  } else {
    if (only.empty())
      for (int k = 1; k <= kCriterionCount; ++k) only.push_back(k);
    for (int id : only) {
      if (id == 1 && grid == "small") {
        auto t0 = std::chrono::steady_clock::now();
        auto r = identity_suite(opt, max_n, max_p);
        r.id = 1;
        r.title = criterion_title(1);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        results.push_back(r);
      } else {
        results.push_back(run_criterion(id, opt));
      }
      const auto& r = results.back();
      std::fprintf(stderr, "%s  criterion %d  %s: %s  [%.1f s]\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                   r.summary.c_str(), r.seconds);
    }
  }
  json criteria = json::array();
  int passed = 0;
  double seconds = 0;
  for (const auto& r : results) {
    criteria.push_back(to_json(r));
    passed += r.pass;
    seconds += r.seconds;
  }
  emit(cfg, envelope("verification", {{"suite", suite},
                                      {"grid", grid},
                                      {"criteria", criteria},
                                      {"passed", passed},
                                      {"total", results.size()},
                                      {"seconds", seconds},
                                      {"all_pass", passed == static_cast<int>(results.size())}}));
  return passed == static_cast<int>(results.size()) ? kOk : kIdentity;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IdentityViolation*>(&e) || dynamic_cast<const NonZeroRemainder*>(&e) ||
      dynamic_cast<const NonIntegerGenus*>(&e))
    return kIdentity;
  if (dynamic_cast<const ResourceCapExceeded*>(&e) || dynamic_cast<const GroupTooLarge*>(&e)) return kResourceCap;
  if (dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const TrackingFailure*>(&e) ||
      dynamic_cast<const RayTraceUnresolved*>(&e) || dynamic_cast<const UnclassifiableRoot*>(&e) ||
      dynamic_cast<const DegenerateTangent*>(&e))
    return kNonConvergence;
  return kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynatomic curves of z^d + c: construction, invariants and verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* poly = app.add_subcommand("poly", "build Phi, Q or a factor q^j and print it as JSON");
  add_cell(poly, cfg);
  bool phi = false, Q = false, q = false, verify = false;
  auto* o_phi = poly->add_flag("--phi", phi, "iterate difference f^(n+p) - f^n");
  auto* o_Q = poly->add_flag("--Q", Q, "dynatomic polynomial (default)");
  auto* o_q = poly->add_flag("--q", q, "factor q^j, with --factor j");
  o_phi->excludes(o_Q)->excludes(o_q);
  o_Q->excludes(o_q);
  poly->add_option("--factor", cfg.factor, "factor index j in 1..d-1");
  poly->add_flag("--verify", verify, "run the exact identity checks instead of printing");

  auto* inv = app.add_subcommand("invariants", "closed-form curve invariants");
  add_cell(inv, cfg);
  bool grid = false;
  int max_d = 4, max_n = 3, max_p = 4;
  std::string format = "csv";
  inv->add_flag("--grid", grid, "tabulate d <= max-d, n <= max-n, p <= max-p");
  inv->add_option("--max-d", max_d)->check(CLI::Range(2, 64));
  inv->add_option("--max-n", max_n)->check(CLI::Range(0, 64));
  inv->add_option("--max-p", max_p)->check(CLI::Range(1, 64));
  inv->add_option("--format", format, "grid output format")->check(CLI::IsMember({"csv", "json"}));
  inv->get_option("--d")->required(false);

  auto* cls = app.add_subcommand("classify", "classify the roots of Q_{n,p}(c0, z)");
  add_cell(cls, cfg);
  long double c_re = 0, c_im = 0;
  cls->add_option("--c-re", c_re, "real part of c0")->required();
  cls->add_option("--c-im", c_im, "imaginary part of c0");
  cls->add_option("--plot", cfg.plot, "write the root slice as CSV");

  auto* tr = app.add_subcommand("transversality", "transversality identity at every Misiurewicz point");
  add_cell(tr, cfg);
  tr->add_option("--factor", cfg.factor, "restrict to factor j");

  auto* sing = app.add_subcommand("singular", "common roots of the factors and their tangents");
  add_cell(sing, cfg);

  auto* mono = app.add_subcommand("monodromy", "numerical monodromy group of Q_{n,p}");
  add_cell(mono, cfg);
  mono->add_option("--factor", cfg.factor, "report the group of factor j");
  mono->add_option("--plot", cfg.plot, "write critical values and basepoint roots as CSV");

  auto* ends = app.add_subcommand("ends", "itinerary labels of the points at infinity");
  add_cell(ends, cfg);
  ends->add_option("--factor", cfg.factor, "restrict to factor j");
  std::string at_text;
  ends->add_option("--at", at_text, "match the roots at this parameter, e.g. -3 or 0.5+2.5i or 0.5,2.5");

  auto* ver = app.add_subcommand("verify", "run the verification battery");
  add_cell(ver, cfg, false);
  ver->get_option("--d")->required(false);
  std::string suite = "all", vgrid = "full";
  std::vector<int> only;
  ver->add_option("--suite", suite)->check(CLI::IsMember({"all", "identities"}));
  ver->add_option("--grid", vgrid)->check(CLI::IsMember({"small", "full"}));
  ver->add_option("--only", only, "criteria to run")->check(CLI::Range(1, kCriterionCount));

  CLI11_PARSE(app, argc, argv);

  try {
    if (poly->parsed()) return cmd_poly(cfg, phi ? "phi" : q ? "q" : "Q", verify);
    if (inv->parsed()) return cmd_invariants(cfg, grid, max_d, max_n, max_p, format);
    if (cls->parsed()) return cmd_classify(cfg, {c_re, c_im});
    if (tr->parsed()) return cmd_transversality(cfg);
    if (sing->parsed()) return cmd_singular(cfg);
    if (mono->parsed()) return cmd_monodromy(cfg);
    if (ends->parsed())
      return cmd_ends(cfg, at_text.empty() ? std::nullopt : std::optional<lcplx>(parse_complex(at_text)));
    if (ver->parsed()) return cmd_verify(cfg, suite, vgrid, only);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
  return kBadInput;
}
