#include "dynacurve/report_json.hpp"

#include "dynacurve/errors.hpp"
#include "dynacurve/invariants.hpp"

namespace dynacurve {

namespace {

using nlohmann::json;

json big(const mpz_class& x) { return x.get_str(); }
json big(const mpq_class& x) { return x.get_str(); }

std::string field_str(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

json cplx_json(lcplx z) { return json::array({static_cast<double>(z.real()), static_cast<double>(z.imag())}); }

json cplx_json(const std::vector<lcplx>& v) {
  json out = json::array();
  for (lcplx z : v) out.push_back(cplx_json(z));
  return out;
}

lcplx cplx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw MalformedInput("complex numbers are [re, im] pairs");
  return {j[0].get<long double>(), j[1].get<long double>()};
}

json envelope(const std::string& kind, json payload) {
  json out = {{"schema", kSchemaVersion}, {"kind", kind}};
  for (auto& [k, v] : payload.items()) out[k] = std::move(v);
  return out;
}

void require_envelope(const json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("schema") || j["schema"] != kSchemaVersion)
    throw MalformedInput("missing or unsupported schema version");
  if (!j.contains("kind") || j["kind"] != kind) throw MalformedInput("expected a '" + kind + "' record");
}

json invariants_record(int d, int n, int p) {
  json r = {{"d", d}, {"n", n}, {"p", p}, {"nu", big(nu(d, p))}, {"degree_Q", big(degree_Q(d, n, p))},
            {"galois_order", big(galois_order(d, n, p))}};
  if (n == 0) {
    r["degree_factor"] = nullptr;
    r["factors"] = 1;
    r["genus"] = big(genus_periodic_from_branching(d, p));
    for (const char* k : {"ends", "kappa", "singular_count", "galois_order_factor", "census"}) r[k] = nullptr;
    return r;
  }
  auto census = critical_census(d, n, p);
  r["degree_factor"] = big(degree_factor(d, n, p));
  r["factors"] = d - 1;
  r["genus"] = big(genus_preperiodic(d, n, p));
  r["ends"] = big(ends_count(d, n, p));
  r["kappa"] = big(kappa(d, n, p));
  r["singular_count"] = big(singular_count(d, n, p));
  r["galois_order_factor"] = big(galois_order_factor(d, n, p));
  r["census"] = {{"b1", big(census.b1)},
                 {"b2", big(census.b2)},
                 {"b3", big(census.b3)},
                 {"binf", big(census.binf)},
                 {"total", big(census.total())},
                 {"c1_points", big(census.c1_points)},
                 {"c2_points", big(census.c2_points)},
                 {"c3_points", big(census.c3_points)},
                 {"ideal_points", big(census.ideal_points)}};
  r["riemann_hurwitz_closes"] = riemann_hurwitz_closes(d, n, p);
  return r;
}

std::vector<std::string> invariants_csv_header() {
  return {"d",     "n",     "p",          "nu",        "degree_Q", "degree_factor",       "genus", "ends",
          "kappa", "singular_count", "galois_order", "galois_order_factor", "census_total"};
}

std::vector<std::string> invariants_csv_row(const json& r) {
  std::vector<std::string> row;
  for (const auto& key : invariants_csv_header()) {
    if (key == "census_total")
      row.push_back(r["census"].is_null() ? "" : field_str(r["census"]["total"]));
    else
      row.push_back(field_str(r.at(key)));
  }
  return row;
}

json to_json(const IdentityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"applicable", c.applicable}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"d", r.d}, {"n", r.n}, {"p", r.p}, {"all_pass", r.all_pass()}, {"checks", checks}};
}

json to_json(const RootClassification& r) {
  json roots = json::array();
  for (const auto& x : r.roots)
    roots.push_back({{"z", cplx_json(x.z)},
                     {"multiplicity", x.multiplicity},
                     {"condition", condition_name(x.condition)},
                     {"preperiod", x.preperiod},
                     {"period", x.period},
                     {"multiplier", cplx_json(x.multiplier)},
                     {"residual", static_cast<double>(x.residual)},
                     {"literal_c4", x.literal_c4}});
  return {{"d", r.d},
          {"n", r.n},
          {"p", r.p},
          {"c0", cplx_json(r.c0)},
          {"retried", r.retried},
          {"total_multiplicity", r.total_multiplicity()},
          {"unclassified", r.unclassified()},
          {"roots", roots}};
}

json to_json(const TransversalityReport& r) {
  return {{"d", r.d},
          {"n", r.n},
          {"p", r.p},
          {"c0", cplx_json(r.c0)},
          {"delta", cplx_json(r.delta)},
          {"epsilon", cplx_json(r.epsilon)},
          {"rho", cplx_json(r.rho)},
          {"lambda", cplx_json(r.lambda)},
          {"alpha", cplx_json(r.alpha)},
          {"lhs_symbolic", cplx_json(r.lhs_symbolic)},
          {"rhs_closed_form", cplx_json(r.rhs_closed_form)},
          {"relative_error", static_cast<double>(r.relative_error)},
          {"system_residual", static_cast<double>(r.system_residual)},
          {"solve_discrepancy", static_cast<double>(r.solve_discrepancy)},
          {"pass", r.pass()}};
}

json to_json(const SingularReport& r) {
  json pts = json::array();
  for (const auto& pt : r.points) {
    json grads = json::array();
    for (const auto& [gc, gz] : pt.gradients) grads.push_back({{"dc", cplx_json(gc)}, {"dz", cplx_json(gz)}});
    pts.push_back({{"c0", cplx_json(pt.c0)},
                   {"z0", cplx_json(pt.z0)},
                   {"multiplicity", pt.multiplicity},
                   {"values", cplx_json(pt.values)},
                   {"gradients", grads},
                   {"min_gradient", static_cast<double>(pt.min_gradient)},
                   {"min_angle", static_cast<double>(pt.min_angle)}});
  }
  return {{"d", r.d},
          {"n", r.n},
          {"p", r.p},
          {"total_multiplicity", r.total_multiplicity()},
          {"gradients_nonzero", r.gradients_nonzero()},
          {"tangents_distinct", r.tangents_distinct()},
          {"points", pts}};
}

json to_json(const Itinerary& it) {
  return {{"label", it.str()}, {"preperiod_word", it.pre}, {"period_word", it.per}, {"factor", it.factor_index()}};
}

json to_json(const EndLabel& e) {
  json orbit = json::array();
  for (const auto& m : e.orbit) orbit.push_back(m.str());
  return {{"representative", to_json(e.representative)}, {"orbit", orbit}, {"factor", e.factor}};
}

json to_json(const EndMatchReport& r) {
  json roots = json::array();
  for (std::size_t i = 0; i < r.roots.size(); ++i)
    roots.push_back({{"z", cplx_json(r.roots[i])}, {"itinerary", i < r.itineraries.size() ? r.itineraries[i].str() : ""}});
  return {{"factor", r.j},
          {"c0", cplx_json(r.c0)},
          {"roots", roots},
          {"all_exact", r.all_exact},
          {"labels_match", r.labels_match},
          {"classes", r.classes},
          {"class_sizes_ok", r.class_sizes_ok},
          {"pass", r.pass()}};
}

json to_json(const GaloisReport& r) {
  json orders = json::array();
  for (const auto& o : r.factor_orders) orders.push_back(big(o));
  return {{"order", big(r.order)},
          {"expected_order", big(r.expected_order)},
          {"order_matches", r.order_matches},
          {"global_relation", r.global_relation},
          {"commutes_with_map", r.commutes_with_map},
          {"commutes_with_rotation", r.commutes_with_rotation},
          {"max_map_error", static_cast<double>(r.max_map_error)},
          {"max_rotation_error", static_cast<double>(r.max_rotation_error)},
          {"rotation_pairs", r.rotation_pairs},
          {"factor_transitive", r.factor_transitive},
          {"factor_orders", orders},
          {"factors_preserved", r.factors_preserved},
          {"pass", r.pass()}};
}

json to_json(const WreathReport& r) {
  return {{"columns", r.columns},
          {"pairs_checked", r.pairs_checked},
          {"homomorphism", r.homomorphism},
          {"columns_preserved", r.columns_preserved},
          {"kernel_size", big(r.kernel_size)},
          {"expected_kernel_size", big(r.expected_kernel_size)},
          {"pass", r.pass()}};
}

}  // namespace dynacurve
