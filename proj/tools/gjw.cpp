// gjw: graph, model, verify and spectrum front end.
// Exit codes: 0 pass, 1 check failed, 2 usage or configuration error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gjw/errors.hpp"
#include "gjw/graph.hpp"
#include "gjw/graph_expr.hpp"
#include "gjw/graph_io.hpp"
#include "gjw/model.hpp"
#include "gjw/report.hpp"
#include "gjw/simd/kernels.hpp"
#include "gjw/spectrum.hpp"
#include "gjw/verifier.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct GraphArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t r = 1;
  std::size_t m = 0;
  bool open = false;
  std::string edge_list;
  std::string product;
};

struct PairArgs {
  std::string name;
  double g = 1.0;
  double ell = 1.0;
  std::string expr;
  std::vector<std::string> params;
};

struct ModelArgs {
  GraphArgs graph;
  PairArgs pair;
  std::size_t dim = 1;
  double hbar = 1.0;
  double mass = 1.0;
  std::optional<double> omega;
  std::string confine_expr;
  std::vector<std::string> confine_params;
};

void add_graph_options(CLI::App* sub, GraphArgs& a) {
  auto* fam = sub->add_option("--family", a.family,
                              "complete path cycle circulant banded star wheel bipartite ladder prism creutz "
                              "hypercube empty");
  sub->add_option("--n", a.n, "vertex count (rungs for ladders, dimension for hypercube)");
  sub->add_option("--r", a.r, "circulant range");
  sub->add_option("--m", a.m, "first part size of bipartite(m,n)");
  sub->add_flag("--open", a.open, "circulant with open boundary");
  auto* el = sub->add_option("--edge-list", a.edge_list, "edge-list file");
  auto* pr = sub->add_option("--product", a.product, "graph expression, e.g. cartesian(path(7),path(2))");
  fam->excludes(el)->excludes(pr);
  el->excludes(pr);
}

void add_model_options(CLI::App* sub, ModelArgs& a) {
  add_graph_options(sub, a.graph);
  auto* pn = sub->add_option("--pair", a.pair.name, "power exponential gaussian sinh");
  sub->add_option("--g", a.pair.g, "pair strength");
  sub->add_option("--ell", a.pair.ell, "sinh length scale");
  auto* pe = sub->add_option("--pair-expr", a.pair.expr, "custom f(x), e.g. abs(x)^g");
  pn->excludes(pe);
  sub->add_option("--param", a.pair.params, "name=value binding for --pair-expr");
  sub->add_option("--dim", a.dim, "spatial dimension");
  sub->add_option("--hbar", a.hbar);
  sub->add_option("--mass", a.mass);
  auto* om = sub->add_option("--omega", a.omega, "harmonic confinement frequency");
  auto* ce = sub->add_option("--confine-expr", a.confine_expr, "custom one-body factor g(r)");
  om->excludes(ce);
  sub->add_option("--confine-param", a.confine_params, "name=value binding for --confine-expr");
}

std::string family_expression(const GraphArgs& a) {
  const std::string n = std::to_string(a.n);
  if (a.family == "circulant") return std::string(a.open ? "banded(" : "circulant(") + n + "," + std::to_string(a.r) + ")";
  if (a.family == "banded") return "banded(" + n + "," + std::to_string(a.r) + ")";
  if (a.family == "bipartite") return "bipartite(" + std::to_string(a.m) + "," + n + ")";
  return a.family + "(" + n + ")";
}

gjw::Graph build_graph(const GraphArgs& a) {
  if (!a.edge_list.empty()) return gjw::read_edge_list_file(a.edge_list);
  if (!a.product.empty()) return gjw::parse_graph_expression(a.product);
  if (a.family.empty()) throw gjw::ParameterError("one of --family, --edge-list or --product is required");
  for (char c : a.family)
    if (!(c >= 'a' && c <= 'z')) throw gjw::ParameterError("unknown family '" + a.family + "'");
  return gjw::parse_graph_expression(family_expression(a));
}

gjw::ParamMap parse_params(const std::vector<std::string>& items) {
  gjw::ParamMap out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos || eq == 0) throw gjw::ParameterError("expected name=value, got '" + it + "'");
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(it.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it.size() - eq - 1) throw gjw::ParameterError("bad number in '" + it + "'");
    out[it.substr(0, eq)] = v;
  }
  return out;
}

gjw::PairFunction build_pair(const PairArgs& a) {
  if (!a.expr.empty()) {
    auto params = parse_params(a.params);
    std::set<std::string, std::less<>> names;
    for (const auto& [k, v] : params) names.insert(k);
    return gjw::PairFunction::custom(gjw::PairAST::parse(a.expr, names), params);
  }
  if (a.name == "power") return gjw::PairFunction::power(a.g);
  if (a.name == "exponential") return gjw::PairFunction::exponential(a.g);
  if (a.name == "gaussian") return gjw::PairFunction::gaussian(a.g);
  if (a.name == "sinh") return gjw::PairFunction::sinh(a.g, a.ell);
  if (a.name.empty()) throw gjw::ParameterError("one of --pair or --pair-expr is required");
  throw gjw::ParameterError("unknown pair '" + a.name + "'");
}

gjw::ModelSpec build_model(const ModelArgs& a) {
  std::optional<gjw::ConfinementSpec> conf;
  if (a.omega) conf = gjw::ConfinementSpec::harmonic(*a.omega);
  if (!a.confine_expr.empty()) {
    auto params = parse_params(a.confine_params);
    std::set<std::string, std::less<>> names;
    for (const auto& [k, v] : params) names.insert(k);
    conf = gjw::ConfinementSpec::custom(gjw::PairAST::parse(a.confine_expr, names), params);
  }
  return gjw::ModelSpec(build_graph(a.graph), build_pair(a.pair), a.dim, a.hbar, a.mass, conf);
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gjw::ParameterError("cannot write '" + path + "'");
  out << text;
}

// ---- graph

struct GraphCmd {
  GraphArgs graph;
  std::string dot;
  std::string edges_out;
};

int run_graph(const GraphCmd& c) {
  const gjw::Graph g = build_graph(c.graph);
  // counts move to stderr when an export goes to stdout
  std::ostream& out = c.dot == "-" || c.edges_out == "-" ? std::cerr : std::cout;
  out << "|V| = " << g.size() << "\n";
  out << "|E| = " << gjw::edge_count(g) << "\n";
  out << "p2 = " << gjw::two_path_count(g) << "\n";
  out << "degrees =";
  for (auto d : gjw::degree_sequence(g)) out << ' ' << d;
  out << "\nconnected = " << (gjw::is_connected(g) ? "true" : "false") << "\n";
  if (!c.dot.empty()) {
    std::ostringstream s;
    gjw::write_dot(s, g);
    write_text(c.dot, s.str());
  }
  if (!c.edges_out.empty()) {
    std::ostringstream s;
    gjw::write_edge_list(s, g);
    write_text(c.edges_out, s.str());
  }
  return kPass;
}

// ---- model

struct ModelCmd {
  ModelArgs model;
  std::vector<double> at;
  std::string report;
};

int run_model(const ModelCmd& c) {
  const auto model = build_model(c.model);
  auto inv = gjw::report::term_inventory(model);
  std::ostream& out = c.report == "-" ? std::cerr : std::cout;
  out << "pair: " << model.pair().describe() << "\n";
  out << "two-body: " << inv["two_body"]["form"].get<std::string>() << "\n";
  for (const auto& t : inv["two_body"]["terms"])
    out << "  edge " << t["i"] << "-" << t["j"] << " p=" << gjw::format_number(t["p"].get<double>()) << "\n";
  out << "three-body: " << inv["three_body"]["terms"].size() << " wedges\n";
  for (const auto& t : inv["three_body"]["terms"])
    out << "  wedge " << t["legs"][0] << "-" << t["center"] << "-" << t["legs"][1] << "\n";
  if (!inv["delta"]["known"].get<bool>()) {
    out << "delta: unknown (kinked custom pair)\n";
  } else {
    out << "delta: " << inv["delta"]["terms"].size() << " terms\n";
    for (const auto& t : inv["delta"]["terms"])
      out << "  delta(x" << t["i"] << " - x" << t["j"]
                << ") coefficient=" << gjw::format_number(t["coefficient"].get<double>()) << "\n";
  }
  if (!inv["confinement"].is_null()) {
    out << "v1: " << inv["confinement"]["v1"].get<std::string>() << "\n";
    out << "v2ll: " << inv["confinement"]["v2ll"].get<std::string>() << "\n";
  }
  if (inv["constants"].is_null()) {
    out << "constants: none\n";
  } else {
    const auto& k = inv["constants"];
    out << "constants: row=" << k["row"].get<std::string>() << " sector=" << k["sector"].get<std::string>()
              << " v2c=" << gjw::format_number(k["v2c"].get<double>())
              << " v3c=" << gjw::format_number(k["v3c"].get<double>())
              << " v1c=" << gjw::format_number(k["v1c"].get<double>())
              << " v2llc=" << gjw::format_number(k["v2llc"].get<double>()) << "\n";
    out << "e0 = " << gjw::format_number(k["e0"].get<double>()) << "\n";
  }
  gjw::report::Json body;
  body["terms"] = inv;
  if (!c.at.empty()) {
    const gjw::Configuration cfg(model.size(), model.dim(), c.at);
    body["breakdown"] = gjw::report::breakdown(gjw::potentials(model, cfg));
    out << "total potential at cfg = " << gjw::format_number(body["breakdown"]["total"].get<double>())
              << "\n";
  }
  if (!c.report.empty()) write_text(c.report, gjw::report::dump(gjw::report::document("model", model, body)));
  return kPass;
}

// ---- verify

struct VerifyCmd {
  ModelArgs model;
  gjw::VerifyOptions opts;
  std::string sector;
  std::optional<double> e0;
  std::string report = "-";
  std::string csv;
};

std::optional<gjw::Sector> parse_sector(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "free") return gjw::Sector::Free;
  if (s == "sorted") return gjw::Sector::Sorted;
  if (s == "extremal") return gjw::Sector::Extremal;
  throw gjw::ParameterError("unknown sector '" + s + "'");
}

int run_verify(VerifyCmd c) {
  const auto model = build_model(c.model);
  c.opts.sampling.sector = parse_sector(c.sector);
  c.opts.e0_override = c.e0;
  const auto rep = gjw::verify(model, c.opts);
  gjw::report::Json body;
  body["options"] = {{"box", c.opts.sampling.box},
                     {"min_gap", c.opts.sampling.min_gap},
                     {"residual_tol", c.opts.residual_tol},
                     {"convergence_min", c.opts.convergence_min},
                     {"drift_h", c.opts.drift_h},
                     {"drift_tol", c.opts.drift_tol},
                     {"identity_tol", c.opts.identity_tol},
                     {"table_tol", c.opts.table_tol}};
  body["verification"] = gjw::report::verification(rep);
  const std::string text = gjw::report::dump(gjw::report::document("verify", model, body));
  write_text(c.report, text);
  if (!c.csv.empty()) {
    std::ostringstream s;
    gjw::report::write_residual_csv(s, rep, model.dim());
    write_text(c.csv, s.str());
  }
  for (const auto& chk : rep.checks)
    std::cerr << (chk.passed ? "PASS " : "FAIL ") << chk.name << " value=" << gjw::format_number(chk.value)
              << " threshold=" << gjw::format_number(chk.threshold) << "\n";
  return rep.passed() ? kPass : kFail;
}

// ---- spectrum

struct SpectrumCmd {
  ModelArgs model;
  gjw::GridSpec grid;
  std::optional<double> half_width;
  gjw::SpectrumOptions opts;
  std::string report = "-";
  bool append = false;
  std::string vector_csv;
};

int run_spectrum(SpectrumCmd c) {
  const auto model = build_model(c.model);
  c.grid.half_width = c.half_width;
  gjw::SpectrumReport rep;
  try {
    rep = gjw::run_spectrum(model, c.grid, c.opts);
  } catch (const gjw::ConvergenceError& e) {
    std::cerr << "gjw: " << e.what() << "\n";
    return kFail;
  }
  gjw::report::Json doc;
  if (c.append && c.report != "-") {
    std::ifstream in(c.report);
    if (in) doc = gjw::report::Json::parse(in);
  }
  if (doc.is_null() || !doc.is_object()) doc = gjw::report::document("spectrum", model, gjw::report::Json::object());
  if (!doc.contains("schema_version") || doc["schema_version"] != gjw::report::kSchemaVersion)
    throw gjw::ParameterError("existing report has a different schema version");
  doc["spectrum"] = gjw::report::spectrum(rep);
  write_text(c.report, gjw::report::dump(doc));
  if (!c.vector_csv.empty()) {
    const auto op = gjw::discretize(model, c.grid);
    const auto eig = gjw::lowest_eigenpair(op, c.opts.tol, c.opts.max_iter, c.opts.seed);
    const auto psi = gjw::grid_wavefunction(model, c.grid);
    const double L = gjw::resolve_half_width(model, c.grid);
    const double dx = 2.0 * L / static_cast<double>(c.grid.points + 1);
    // Slice along the last axis through the middle of the others.
    std::size_t stride_mid = 0;
    for (std::size_t a = 0; a + 1 < model.size(); ++a) stride_mid = stride_mid * c.grid.points + c.grid.points / 2;
    std::ostringstream s;
    s << "x,ground,psi0\n";
    for (std::size_t k = 0; k < c.grid.points; ++k) {
      const std::size_t idx = stride_mid * c.grid.points + k;
      s << gjw::format_number(-L + static_cast<double>(k + 1) * dx) << ',' << gjw::format_number(eig.second[idx])
        << ',' << gjw::format_number(psi[idx]) << '\n';
    }
    write_text(c.vector_csv, s.str());
  }
  std::cerr << "lambda0 = " << gjw::format_number(rep.eigenvalues.front())
            << "  overlap = " << gjw::format_number(rep.overlap) << "  psd_min = " << gjw::format_number(rep.psd_min)
            << "  isa = " << rep.isa << "\n";
  return rep.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parent Hamiltonians of graph-Jastrow wavefunctions"};
  app.set_config("--config", "", "TOML/INI run configuration; command-line flags take precedence");
  app.require_subcommand(1);

  GraphCmd gc;
  auto* g = app.add_subcommand("graph", "build a graph, print counts, export DOT or edge list");
  add_graph_options(g, gc.graph);
  g->add_option("--dot", gc.dot, "write Graphviz DOT ('-' for stdout)");
  g->add_option("--write-edge-list", gc.edges_out, "write edge list ('-' for stdout)");

  ModelCmd mc;
  auto* m = app.add_subcommand("model", "print the parent Hamiltonian term inventory");
  add_model_options(m, mc.model);
  m->add_option("--at", mc.at, "evaluate every term at this configuration (particle-major)")->delimiter(',');
  m->add_option("--report", mc.report, "write JSON ('-' for stdout)");

  VerifyCmd vc;
  auto* v = app.add_subcommand("verify", "finite-difference eigenstate check on random configurations");
  v->set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  add_model_options(v, vc.model);
  v->add_option("--samples", vc.opts.samples)->check(CLI::PositiveNumber);
  v->add_option("--seed", vc.opts.seed)->required();
  v->add_option("--h", vc.opts.h, "finite-difference step");
  v->add_option("--box", vc.opts.sampling.box, "coordinates uniform in [-box, box]");
  v->add_option("--min-gap", vc.opts.sampling.min_gap, "minimum separation for guarded pairs");
  v->add_option("--sector", vc.sector, "free sorted extremal (default: implied by the model)");
  v->add_option("--e0", vc.e0, "override the ground energy");
  v->add_option("--residual-tol", vc.opts.residual_tol);
  v->add_option("--convergence-min", vc.opts.convergence_min);
  v->add_option("--drift-tol", vc.opts.drift_tol);
  v->add_option("--identity-tol", vc.opts.identity_tol);
  v->add_option("--threads", vc.opts.threads, "0 uses every core; output does not depend on it");
  v->add_option("--report", vc.report, "JSON report path ('-' for stdout)");
  v->add_option("--csv", vc.csv, "residual rows");

  SpectrumCmd sc;
  auto* s = app.add_subcommand("spectrum", "grid diagonalization of the confined Hamiltonian");
  add_model_options(s, sc.model);
  s->add_option("--points", sc.grid.points, "interior grid points per axis");
  s->add_option("--half-width", sc.half_width, "box half-width L");
  s->add_option("--multiple", sc.grid.multiple, "L in units of sqrt(hbar/(m omega))");
  s->add_option("--tail", sc.grid.tail, "pick L so that at most this Psi0 mass lies outside the box");
  s->add_option("--cap", sc.grid.cap, "value assigned to singular diagonal nodes");
  s->add_option("--eigenpairs", sc.opts.eigenpairs);
  s->add_option("--tol", sc.opts.tol);
  s->add_option("--trials", sc.opts.trials, "random vectors for the positivity probe");
  s->add_option("--seed", sc.opts.seed);
  s->add_option("--report", sc.report, "JSON report path ('-' for stdout)");
  s->add_flag("--append", sc.append, "add the spectrum section to an existing report");
  s->add_option("--vector-csv", sc.vector_csv, "ground vector slice along the last axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*g) return run_graph(gc);
    if (*m) return run_model(mc);
    if (*v) return run_verify(vc);
    if (*s) return run_spectrum(sc);
  } catch (const gjw::Error& e) {
    std::cerr << "gjw: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "gjw: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
