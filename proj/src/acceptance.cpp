#include "dynacurve/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"
#include "dynacurve/itinerary.hpp"
#include "dynacurve/monodromy.hpp"
#include "dynacurve/numerics.hpp"

namespace dynacurve {

namespace {

constexpr long double kResidualTol = 1e-8L;
constexpr long double kOracleMatchTol = 1e-6L;
constexpr long double kTransversalityRelTol = 1e-8L;
constexpr long double kLinearSystemTol = 1e-10L;
constexpr long double kGradientTol = 1e-8L;
constexpr long double kTangentAngleTol = 1e-4L;
constexpr long double kMonodromyTol = 1e-6L;
constexpr int kWreathPairs = 64;
constexpr int kWreathMinPairs = 50;
constexpr int kRandomParameters = 20;

struct Cell {
  int d, n, p;
};

std::string cell_name(int d, int n, int p) {
  std::ostringstream os;
  os << "(" << d << "," << n << "," << p << ")";
  return os.str();
}

std::string cplx_str(lcplx z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::fabs(z.imag()) << "i";
  return os.str();
}

std::string sci(long double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << static_cast<double>(x);
  return os.str();
}

// d in {2,3,4}, n <= max_n, p <= max_p, within the degree cap.
std::vector<Cell> grid(const ResourceLimits& lim, int n_min, int max_n, int max_p) {
  std::vector<Cell> out;
  for (int d = 2; d <= 4; ++d)
    for (int n = n_min; n <= max_n; ++n)
      for (int p = 1; p <= max_p; ++p)
        if (std::pow(static_cast<double>(d), n + p) <= static_cast<double>(lim.max_degree)) out.push_back({d, n, p});
  return out;
}

void finish(CriterionResult& r, const std::string& what) {
  long ok = std::count_if(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
  r.pass = !r.checks.empty() && ok == static_cast<long>(r.checks.size());
  std::ostringstream os;
  os << ok << "/" << r.checks.size() << " " << what;
  for (const auto& c : r.checks)
    if (!c.pass) {
      os << "; first failure " << c.name << ": " << c.detail;
      break;
    }
  r.summary = os.str();
}

bool same_multiset(std::vector<lcplx> a, const std::vector<lcplx>& b, long double tol) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (lcplx x : a) {
    std::size_t best = b.size();
    long double bd = tol;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!used[i] && std::abs(x - b[i]) <= bd) {
        bd = std::abs(x - b[i]);
        best = i;
      }
    if (best == b.size()) return false;
    used[best] = 1;
  }
  return true;
}

CriterionResult degree_formulas(const AcceptanceOptions& opt) {
  CriterionResult r;
  for (int d = 2; d <= 4; ++d) {
    FamilyContext ctx(d, opt.limits);
    for (auto c : grid(opt.limits, 0, 3, 4)) {
      if (c.d != d) continue;
      CheckResult k{cell_name(c.d, c.n, c.p), false, {}};
      try {
        std::ostringstream os;
        bool ok = true;
        long want = c.n == 0 ? nu(d, c.p).get_si() : degree_Q(d, c.n, c.p).get_si();
        long got = ctx.Q(c.n, c.p).deg_z();
        ok = ok && got == want;
        os << "deg Q " << got << " (formula " << want << ")";
        if (c.n >= 1) {
          long wf = nu(d, c.p).get_si();
          for (int k2 = 1; k2 < c.n; ++k2) wf *= d;
          for (int j = 1; j < d; ++j) {
            long gf = ctx.factor(c.n, c.p, j).deg_z();
            ok = ok && gf == wf && mpz_class(gf) == degree_factor(d, c.n, c.p);
            if (gf != wf) os << "; deg q^" << j << " " << gf << " (formula " << wf << ")";
          }
        }
        k.pass = ok;
        k.detail = os.str();
      } catch (const ResourceCapExceeded& e) {
        k.detail = std::string("refused: ") + e.what();
      }
      r.checks.push_back(k);
      if (std::pow(d, c.n + c.p) >= 4096) ctx.clear();
    }
  }
  finish(r, "cells with exact degrees");
  return r;
}

CriterionResult genus_closure(const AcceptanceOptions& opt) {
  CriterionResult r;
  for (auto c : grid(opt.limits, 1, 3, 4)) {
    CheckResult k{cell_name(c.d, c.n, c.p), false, {}};
    try {
      mpq_class g = genus_preperiodic_value(c.d, c.n, c.p);
      mpq_class lhs = 2 - 2 * g + critical_census(c.d, c.n, c.p).total();
      mpq_class rhs = 2 * mpq_class(degree_factor(c.d, c.n, c.p));
      k.pass = lhs == rhs && riemann_hurwitz_closes(c.d, c.n, c.p) && g.get_den() == 1 && g >= 0;
      k.detail = "2-2g+B = " + lhs.get_str() + ", 2 deg = " + rhs.get_str() + ", g = " + g.get_str();
    } catch (const Error& e) {
      k.detail = e.what();
    }
    r.checks.push_back(k);
  }
  const long expected[] = {0, 0, 0, 2, 14};
  for (int p = 1; p <= 5; ++p) {
    CheckResult k{"g(2,1," + std::to_string(p) + ")", false, {}};
    mpq_class g = genus_preperiodic_value(2, 1, p);
    mpq_class periodic = genus_periodic_from_branching(2, p);
    k.pass = g == expected[p - 1] && periodic == g;
    k.detail = "preperiodic " + g.get_str() + ", periodic curve " + periodic.get_str() + ", expected " +
               std::to_string(expected[p - 1]);
    r.checks.push_back(k);
  }
  finish(r, "genus checks");
  return r;
}

CriterionResult end_counting(const AcceptanceOptions&) {
  CriterionResult r;
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 4; ++n)
      for (int p = 1; p <= 4; ++p) {
        CheckResult k{cell_name(d, n, p), false, {}};
        mpq_class formula = mpq_class(nu(d, p));
        for (int i = 0; i < n - 2; ++i) formula *= d;
        if (n < 2) formula /= d;
        formula.canonicalize();
        std::ostringstream os;
        bool ok = formula == mpq_class(ends_count(d, n, p));
        for (int j = 1; j < d; ++j) {
          auto cls = end_classes_for_factor(d, n, p, j);
          ok = ok && mpq_class(static_cast<long>(cls.size())) == formula;
          if (j == 1) os << cls.size() << " classes per factor, formula " << formula.get_str();
        }
        k.pass = ok;
        k.detail = os.str();
        r.checks.push_back(k);
      }
  finish(r, "cells with matching end counts");
  return r;
}

// Parameters with an attracting fixed point: c = z - z^d where d z^(d-1) = lambda.
lcplx attracting_parameter(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<long double> rad(0.05L, 0.8L), ang(0, 2 * std::numbers::pi_v<long double>);
  lcplx lambda = std::polar(rad(rng), ang(rng));
  lcplx z = std::pow(lambda / static_cast<long double>(d), 1.0L / (d - 1));
  return z - std::pow(z, d);
}

CriterionResult classification_oracle(const AcceptanceOptions& opt) {
  CriterionResult r;
  std::mt19937_64 rng(opt.seed);
  for (auto c : {Cell{2, 1, 1}, Cell{2, 1, 2}, Cell{2, 2, 1}, Cell{2, 2, 2}, Cell{3, 1, 1}, Cell{3, 2, 1},
                 Cell{3, 1, 2}}) {
    FamilyContext ctx(c.d, opt.limits);
    std::vector<lcplx> params;
    if (c.d == 2) {
      params = {0, -1, -2};
    } else {
      params.push_back(0);
      for (lcplx v : find_centers(ctx, 2).roots) params.push_back(v);
      for (lcplx v : find_misiurewicz(ctx, 2, 1, 1).roots)
        if (std::abs(v) > 1e-6L) params.push_back(v);
    }
    while (params.size() < kRandomParameters / 2) params.push_back(attracting_parameter(c.d, rng));
    std::uniform_real_distribution<long double> rad(2.2L, 4), ang(0, 2 * std::numbers::pi_v<long double>);
    while (params.size() < kRandomParameters) {
      lcplx v = std::polar(rad(rng), ang(rng));
      if (!in_multibrot(c.d, v)) params.push_back(v);
    }
    for (lcplx c0 : params) {
      CheckResult k{cell_name(c.d, c.n, c.p) + " c0=" + cplx_str(c0), false, {}};
      try {
        auto cls = classify_roots(ctx, c.n, c.p, c0);
        std::vector<lcplx> generic;
        long double worst = 0;
        for (const auto& x : cls.roots) {
          worst = std::max(worst, x.residual);
          if (x.condition == Condition::C0 || x.condition == Condition::C1 || x.condition == Condition::C2)
            for (int m = 0; m < x.multiplicity; ++m) generic.push_back(x.z);
        }
        std::vector<lcplx> oracle;
        for (const auto& rc : exact_preperiodic_points(ctx, c.n, c.p, c0))
          for (int m = 0; m < rc.multiplicity; ++m) oracle.push_back(rc.z);
        bool total = cls.total_multiplicity() == degree_Q(c.d, c.n, c.p).get_si();
        bool match = same_multiset(generic, oracle, kOracleMatchTol);
        k.pass = total && match && worst < kResidualTol && cls.unclassified() == 0;
        k.detail = "exact-type roots " + std::to_string(generic.size()) + " vs oracle " +
                   std::to_string(oracle.size()) + ", unclassified " + std::to_string(cls.unclassified()) +
                   ", max residual " + sci(worst);
      } catch (const Error& e) {
        k.detail = e.what();
      }
      r.checks.push_back(k);
    }
  }
  finish(r, "parameter/cell pairs agree with the oracle");
  return r;
}

CriterionResult transversality(const AcceptanceOptions& opt) {
  CriterionResult r;
  for (auto c : {Cell{2, 2, 1}, Cell{2, 2, 2}, Cell{2, 3, 1}, Cell{3, 2, 1}}) {
    FamilyContext ctx(c.d, opt.limits);
    int checked = 0;
    for (int j = 1; j < c.d; ++j)
      for (lcplx c0 : find_misiurewicz(ctx, c.n, c.p, j).roots) {
        if (is_superattracting(c.d, c0, c.n + c.p)) continue;
        CheckResult k{cell_name(c.d, c.n, c.p) + " c0=" + cplx_str(c0), false, {}};
        try {
          auto t = transversality_check(ctx, c.n, c.p, c0);
          k.pass = t.pass(kTransversalityRelTol, kLinearSystemTol) && std::abs(t.lhs_symbolic) > kGradientTol;
          k.detail = "relative error " + sci(t.relative_error) + ", system residual " + sci(t.system_residual) +
                     ", |dPhi/dc| " + sci(std::abs(t.lhs_symbolic));
        } catch (const Error& e) {
          k.detail = e.what();
        }
        r.checks.push_back(k);
        ++checked;
      }
    if (checked == 0) r.checks.push_back({cell_name(c.d, c.n, c.p), false, "no Misiurewicz point found"});
  }
  finish(r, "Misiurewicz points satisfy the identity");
  return r;
}

CriterionResult singularities(const AcceptanceOptions& opt) {
  CriterionResult r;
  for (int d = 2; d <= 4; ++d) {
    FamilyContext ctx(d, opt.limits);
    for (int n = 1; n <= 2; ++n)
      for (int p = 1; p <= 2; ++p) {
        auto rep = singular_point_report(ctx, n, p);
        if (d == 2) {
          r.checks.push_back({cell_name(d, n, p), rep.points.empty(),
                              std::to_string(rep.points.size()) + " common roots"});
          continue;
        }
        CheckResult census{cell_name(d, n, p) + " count", false, {}};
        census.pass = mpz_class(rep.total_multiplicity()) == singular_count(d, n, p);
        census.detail = std::to_string(rep.total_multiplicity()) + " with multiplicity, formula " +
                        singular_count(d, n, p).get_str();
        r.checks.push_back(census);
        for (const auto& pt : rep.points) {
          CheckResult k{cell_name(d, n, p) + " c0=" + cplx_str(pt.c0) + " z0=" + cplx_str(pt.z0), false, {}};
          bool on_all = static_cast<int>(pt.values.size()) == d - 1 &&
                        std::all_of(pt.values.begin(), pt.values.end(),
                                    [](lcplx v) { return std::abs(v) < kResidualTol; });
          k.pass = on_all && pt.min_gradient > kGradientTol && pt.min_angle > kTangentAngleTol;
          k.detail = "branches " + std::to_string(pt.values.size()) + ", min |grad| " + sci(pt.min_gradient) +
                     ", min tangent angle " + sci(pt.min_angle) + " rad";
          r.checks.push_back(k);
        }
      }
  }
  finish(r, "singular-point checks");
  return r;
}

CriterionResult monodromy(const AcceptanceOptions& opt) {
  CriterionResult r;
  for (auto c : {Cell{2, 1, 1}, Cell{2, 0, 2}, Cell{2, 1, 2}, Cell{2, 2, 1}, Cell{2, 2, 2}, Cell{2, 1, 3},
                 Cell{3, 1, 1}, Cell{3, 2, 1}}) {
    CheckResult k{cell_name(c.d, c.n, c.p), false, {}};
    try {
      FamilyContext ctx(c.d, opt.limits);
      auto m = compute_monodromy(ctx, c.n, c.p);
      auto g = generate_group(m.generators);
      auto rep = verify_galois_properties(ctx, m, g);
      bool ok = rep.pass() && rep.order == galois_order(c.d, c.n, c.p) && rep.max_map_error < kMonodromyTol &&
                rep.max_rotation_error < kMonodromyTol;
      std::ostringstream os;
      os << "order " << rep.order.get_str() << " (recursion " << galois_order(c.d, c.n, c.p).get_str() << ")"
         << ", f error " << sci(rep.max_map_error) << ", rotation error " << sci(rep.max_rotation_error);
      if (c.n >= 2) {
        auto w = wreath_check(m, g, kWreathPairs, opt.seed);
        ok = ok && w.pass() && w.pairs_checked >= kWreathMinPairs;
        os << ", wreath pairs " << w.pairs_checked << (w.pass() ? " ok" : " FAILED");
      }
      int transitive = static_cast<int>(std::count(rep.factor_transitive.begin(), rep.factor_transitive.end(), true));
      os << ", transitive factors " << transitive << "/" << rep.factor_transitive.size();
      k.pass = ok;
      k.detail = os.str();
    } catch (const Error& e) {
      k.detail = e.what();
    }
    r.checks.push_back(k);
  }
  finish(r, "cells match the Galois recursion");
  return r;
}

CriterionResult itinerary_rotation(const AcceptanceOptions& opt) {
  CriterionResult r;
  FamilyContext two(2, opt.limits);
  for (auto [n, p] : {std::pair{1, 2}, std::pair{2, 1}}) {
    CheckResult k{cell_name(2, n, p), false, {}};
    try {
      auto rep = loop_rotation_check(two, n, p);
      k.pass = rep.pass();
      k.detail = "common shift " + std::to_string(rep.shift) + " over " + std::to_string(rep.before.size()) + " roots";
    } catch (const Error& e) {
      k.detail = e.what();
    }
    r.checks.push_back(k);
  }
  finish(r, "cells rotate itineraries by +1");
  return r;
}

}  // namespace

const char* criterion_title(int id) {
  switch (id) {
    case 1: return "exact identity suite";
    case 2: return "degree formulas";
    case 3: return "Riemann-Hurwitz closure";
    case 4: return "end counting";
    case 5: return "root classification vs oracle";
    case 6: return "transversality identity";
    case 7: return "singularity structure";
    case 8: return "monodromy and Galois structure";
    case 9: return "monodromy-itinerary consistency";
    default: return "unknown";
  }
}

CriterionResult identity_suite(const AcceptanceOptions& opt, int max_n, int max_p) {
  CriterionResult r;
  for (int d = 2; d <= 4; ++d) {
    FamilyContext ctx(d, opt.limits);
    for (auto c : grid(opt.limits, 0, max_n, max_p)) {
      if (c.d != d) continue;
      CheckResult k{cell_name(c.d, c.n, c.p), false, {}};
      try {
        auto rep = verify_identities(ctx, c.n, c.p);
        k.pass = rep.all_pass();
        int applied = 0;
        for (const auto& ch : rep.checks) {
          applied += ch.applicable;
          if (ch.applicable && !ch.pass) k.detail += ch.name + " failed: " + ch.detail + "; ";
        }
        if (k.pass) k.detail = std::to_string(applied) + " identities bit-exact";
      } catch (const ResourceCapExceeded& e) {
        k.detail = std::string("refused: ") + e.what();
      }
      r.checks.push_back(k);
      if (std::pow(d, c.n + c.p) >= 4096) ctx.clear();
    }
  }
  finish(r, "cells bit-exact");
  return r;
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (id) {
    case 1: r = identity_suite(opt); break;
    case 2: r = degree_formulas(opt); break;
    case 3: r = genus_closure(opt); break;
    case 4: r = end_counting(opt); break;
    case 5: r = classification_oracle(opt); break;
    case 6: r = transversality(opt); break;
    case 7: r = singularities(opt); break;
    case 8: r = monodromy(opt); break;
    case 9: r = itinerary_rotation(opt); break;
    default: throw PreconditionViolated("no criterion " + std::to_string(id));
  }
  r.id = id;
  r.title = criterion_title(id);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

nlohmann::json to_json(const CheckResult& c) { return {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"id", r.id},       {"title", r.title},     {"pass", r.pass},
          {"summary", r.summary}, {"seconds", r.seconds}, {"checks", checks}};
}

}  // namespace dynacurve
