#include "gjw/report.hpp"

#include <cmath>
#include <ostream>

#include "gjw/errors.hpp"
#include "gjw/graph_io.hpp"
#include "gjw/tabulated.hpp"

namespace gjw::report {

namespace {

void require_finite(const Json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw Error("non-finite value at " + path);
  if (j.is_object())
    for (const auto& [k, v] : j.items()) require_finite(v, path + "." + k);
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "[" + std::to_string(i) + "]");
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::string two_body_form(const ModelSpec& m) {
  std::string s = m.graph().is_simple() ? "A_ij [v(r_ij)" : "p_ij [v(r_ij) + (p_ij - 1) w(r_ij)^2";
  if (m.dim() > 1) s += " + (D-1) w(r_ij)/r_ij";
  return "(hbar^2/m) sum_{i<j} " + s + "]";
}

}  // namespace

Json model_summary(const ModelSpec& model) {
  const Graph& g = model.graph();
  Json j;
  j["n"] = g.size();
  j["edges"] = edge_count(g);
  j["two_paths"] = two_path_count(g);
  j["simple"] = g.is_simple();
  j["connected"] = is_connected(g);
  j["pair"] = to_string(model.pair().kind());
  j["pair_function"] = model.pair().describe();
  j["dim"] = model.dim();
  j["hbar"] = model.hbar();
  j["mass"] = model.mass();
  j["confinement"] = model.confinement() ? Json(model.confinement()->describe()) : Json(nullptr);
  const auto row = match_table_row(model);
  j["table_row"] = row ? Json(row->name) : Json(nullptr);
  return j;
}

Json term_inventory(const ModelSpec& model) {
  const Graph& g = model.graph();
  Json j;
  Json two;
  two["form"] = two_body_form(model);
  two["terms"] = Json::array();
  for (const Edge& e : g.edges()) two["terms"].push_back({{"i", e.i}, {"j", e.j}, {"p", e.weight}});
  j["two_body"] = two;

  Json three;
  if (g.is_simple()) {
    three["form"] = "(hbar^2/m) sum_wedges (r_ca . r_cb) w(r_ca) w(r_cb)";
    three["terms"] = Json::array();
    for (const Wedge& w : enumerate_wedges(g))
      three["terms"].push_back({{"center", w.center}, {"legs", {w.leg_a, w.leg_b}}});
  } else {
    three["form"] = "(hbar^2/m) sum_{i distinct j,k} p_ij p_ik (r_ij . r_ik) w(r_ij) w(r_ik)";
    three["terms"] = Json::array();
    for (const Wedge& w : enumerate_wedges(g))
      three["terms"].push_back({{"center", w.center},
                                {"legs", {w.leg_a, w.leg_b}},
                                {"p", g.weight(w.center, w.leg_a) * g.weight(w.center, w.leg_b)}});
  }
  j["three_body"] = three;

  Json delta;
  if (model.dim() != 1) {
    delta["known"] = true;
    delta["terms"] = Json::array();
  } else if (const auto c = model.pair().delta_coefficient()) {
    delta["known"] = true;
    delta["terms"] = Json::array();
    if (*c != 0.0)
      for (const Edge& e : g.edges())
        delta["terms"].push_back({{"i", e.i}, {"j", e.j}, {"coefficient", model.scale() * *c * e.weight}});
  } else {
    delta["known"] = false;
    delta["terms"] = Json::array();
  }
  j["delta"] = delta;

  if (model.confinement()) {
    j["confinement"] = {
        {"v1", "(hbar^2/2m) sum_i [g''/g + (D-1) g'/(g r_i)]"},
        {"v2ll", "(hbar^2/m) sum_{i<j} p_ij w(r_ij) r_ij . [G_i r_i - G_j r_j]"},
    };
  } else {
    j["confinement"] = nullptr;
  }

  if (const auto cf = closed_form_constants(model)) {
    j["constants"] = {{"row", cf->row},     {"sector", to_string(cf->sector)},
                      {"v2c", cf->v2c},     {"v3c", cf->v3c},
                      {"v1c", cf->v1c},     {"v2llc", cf->v2llc},
                      {"shift", cf->shift}, {"e0", cf->e0}};
  } else {
    j["constants"] = nullptr;
  }
  return j;
}

Json breakdown(const PotentialBreakdown& b) {
  Json j;
  j["v2_smooth"] = b.v2_smooth;
  j["v3"] = b.v3;
  j["v1"] = b.v1;
  j["v2ll"] = b.v2ll;
  j["total"] = b.total();
  j["constant_shift"] = b.constant_shift;
  j["e0"] = b.e0 ? Json(*b.e0) : Json(nullptr);
  j["delta_unknown"] = b.delta_unknown;
  j["delta_terms"] = Json::array();
  for (const auto& d : b.delta_terms)
    j["delta_terms"].push_back({{"i", d.edge.i}, {"j", d.edge.j}, {"coefficient", d.coefficient}});
  return j;
}

Json verification(const VerificationReport& rep) {
  Json j;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["h"] = rep.h;
  j["sector"] = to_string(rep.sector);
  j["e0"] = rep.e0;
  j["e0_source"] = rep.e0_source;
  j["e0_empirical"] = rep.e0_empirical;
  j["e0_spread"] = rep.e0_spread;
  j["constant_shift"] = rep.constant_shift;
  j["max_abs_residual"] = rep.max_abs_residual;
  j["mean_abs_residual"] = rep.mean_abs_residual;
  j["max_scaled_residual"] = rep.max_scaled_residual;
  j["max_abs_residual_half"] = rep.max_abs_residual_half;
  j["convergence_ratio"] = rep.convergence_ratio;
  j["roundoff_floor"] = rep.roundoff_floor;
  j["drift_max"] = rep.drift_max;
  j["calogero_cancellation"] = optional_bool(rep.calogero_cancellation);
  j["v3_constancy"] = optional_bool(rep.v3_constancy);
  j["table_match"] = optional_bool(rep.table_match);
  j["checks"] = Json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"threshold", c.threshold}});
  j["passed"] = rep.passed();
  return j;
}

Json spectrum(const SpectrumReport& rep) {
  Json j;
  j["points"] = rep.points;
  j["half_width"] = rep.half_width;
  j["outside_mass"] = rep.outside_mass;
  j["cap"] = rep.cap;
  j["dimension"] = rep.dimension;
  j["eigenvalues"] = rep.eigenvalues;
  j["iterations"] = rep.iterations;
  j["residual"] = rep.residual;
  j["overlap"] = rep.overlap;
  j["psd_min"] = rep.psd_min;
  j["trials"] = rep.trials;
  j["checks"] = {{"lambda0", rep.lambda_ok}, {"overlap", rep.overlap_ok}, {"psd", rep.psd_ok}, {"gap", rep.gap_ok}};
  j["passed"] = rep.passed();
  return j;
}

Json document(const std::string& command, const ModelSpec& model, const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["model"] = model_summary(model);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string dump(const Json& doc) {
  require_finite(doc, "$");
  return doc.dump(2) + "\n";
}

void write_residual_csv(std::ostream& out, const VerificationReport& rep, std::size_t dim) {
  out << "seed";
  if (!rep.rows.empty()) {
    const std::size_t n = rep.rows.front().cfg.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t d = 0; d < dim; ++d)
        out << ",x" << i << (dim > 1 ? "_" + std::to_string(d) : std::string());
  }
  out << ",residual,h\n";
  for (const auto& r : rep.rows) {
    out << rep.seed;
    for (double c : r.cfg.coords()) out << ',' << format_number(c);
    out << ',' << format_number(r.residual) << ',' << format_number(r.fd_step) << '\n';
  }
}

}  // namespace gjw::report
