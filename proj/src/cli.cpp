#include "kgh/cli.hpp"

#include "kgh/errors.hpp"
#include "kgh/oracle.hpp"
#include "kgh/sweep.hpp"
#include "kgh/wavefunction.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace kgh::cli {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kConfigKeys{"v0", "s0",   "alpha",  "q",   "dim", "l",
                                           "n",  "mass", "format", "out", "tol"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw InvalidConfig("config key '" + key + "' needs a number, got '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw InvalidConfig("config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

std::string fmt(double v, const char* pattern = "%.3e") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json number_or_null(const std::optional<double>& v) {
  return v ? number_or_null(*v) : json(nullptr);
}

// Parameter set used by solve, verify and wavefunction.
struct SingleRun {
  PotentialParams params;
  QuantumState state;
};

SingleRun single_run(const RunConfig& cfg) {
  return {PotentialParams(cfg.v0.value_or(0.25), cfg.s0.value_or(0.0), cfg.alpha, cfg.q, cfg.mass),
          QuantumState(cfg.n, cfg.l, cfg.dim)};
}

json params_json(const PotentialParams& p, const QuantumState& s) {
  return {{"v0", p.v0()}, {"s0", p.s0()}, {"alpha", p.alpha()}, {"q", p.q()},
          {"m0", p.m0()}, {"dim", s.dim},  {"l", s.l},           {"n", s.n}};
}

json level_json(const EnergyLevel& lvl, double m0) {
  return {{"E", lvl.energy / m0},
          {"branch", to_string(lvl.branch)},
          {"residual", number_or_null(lvl.residual)},
          {"residual_verified", lvl.verified},
          {"kappa_sign", lvl.kappa_sign}};
}

TableSetup table_from_config(int id, const RunConfig& cfg) {
  TableSetup s = id == 1 ? table1_setup() : table2_setup();
  s.vector_coupling = cfg.v0.value_or(0.25);
  s.scalar_coupling = cfg.s0.value_or(0.25);
  s.m0 = cfg.mass;
  return s;
}

// Closed-form candidates for the configured case, unfiltered.
std::vector<EnergyLevel> closed_form(const PotentialParams& p, const QuantumState& s,
                                     Acceptance acc, double tol, std::string& constraint) {
  try {
    if (p.s0() == 0.0 && p.v0() != 0.0) return energy_pure_vector(p, s, acc, tol);
    if (p.v0() == 0.0 && p.s0() != 0.0) return energy_pure_scalar(p, s, acc, tol);
    return energy_explicit(p, s, acc, tol);
  } catch (const ConstraintViolated& e) {
    constraint = e.inequality;
  }
  return {};
}

// ---- solve ---------------------------------------------------------------

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SingleRun run = single_run(cfg);
  const double m0 = run.params.m0();
  SolveOptions opts;
  opts.residual_tolerance = cfg.tol;
  const std::vector<EnergyLevel> levels = solve_levels(run.params, run.state, opts);
  std::string constraint;
  const std::vector<EnergyLevel> candidates =
      closed_form(run.params, run.state, Acceptance::formula, cfg.tol, constraint);

  if (levels.empty()) err << "no bound states\n";
  if (cfg.format == "json") {
    json doc;
    doc["command"] = "solve";
    doc["energy_unit"] = "m0";
    doc["parameters"] = params_json(run.params, run.state);
    doc["levels"] = json::array();
    for (const EnergyLevel& l : levels) doc["levels"].push_back(level_json(l, m0));
    doc["closed_form_candidates"] = json::array();
    for (const EnergyLevel& l : candidates)
      doc["closed_form_candidates"].push_back(level_json(l, m0));
    doc["constraint_violated"] = constraint.empty() ? json(nullptr) : json(constraint);
    if (levels.empty()) doc["message"] = "no bound states";
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "q,alpha,n,case,E\n";
  for (const EnergyLevel& l : levels) {
    out << fmt(run.params.q(), "%g") << "," << fmt(run.params.alpha(), "%g") << "," << l.state.n
        << "," << to_string(l.branch) << "," << format_energy(l.energy / m0) << "\n";
  }
  return kExitOk;
}

// ---- wavefunction ----------------------------------------------------------

int cmd_wavefunction(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SingleRun run = single_run(cfg);
  SolveOptions opts;
  opts.residual_tolerance = cfg.tol;
  const std::vector<EnergyLevel> levels = solve_levels(run.params, run.state, opts);
  if (levels.empty()) {
    err << "no bound states\n";
    if (cfg.format == "json") {
      out << json{{"command", "wavefunction"}, {"message", "no bound states"}, {"samples", json::array()}}.dump(2)
          << "\n";
    } else {
      out << "r,R,g\n";
    }
    return kExitOk;
  }
  const EnergyLevel& lvl = levels.back(); // highest root: particle branch
  const RadialWavefunction w = normalized(make_radial_wavefunction(run.params, lvl));
  std::vector<double> rs;
  for (double r : node_grid(w, 500))
    if (r > 0.0) rs.push_back(r);

  char buf[64];
  if (cfg.format == "json") {
    json doc;
    doc["command"] = "wavefunction";
    doc["parameters"] = params_json(run.params, run.state);
    doc["level"] = level_json(lvl, run.params.m0());
    doc["norm"] = w.norm;
    doc["experimental"] = w.experimental;
    doc["nodes"] = node_count(w);
    doc["samples"] = json::array();
    for (double r : rs)
      doc["samples"].push_back({{"r", r}, {"R", radial_eval(w, r)}, {"g", reduced_eval(w, r)}});
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "r,R,g\n";
  for (double r : rs) {
    std::snprintf(buf, sizeof buf, "%.9e,", r);
    out << buf;
    std::snprintf(buf, sizeof buf, "%.9e,", radial_eval(w, r));
    out << buf;
    std::snprintf(buf, sizeof buf, "%.9e\n", reduced_eval(w, r));
    out << buf;
  }
  return kExitOk;
}

// ---- tables ----------------------------------------------------------------

int cmd_table(int id, const RunConfig& cfg, std::ostream& out) {
  const TableSetup setup = table_from_config(id, cfg);
  const std::vector<TableCell> cells = compute_table(setup, Execution::parallel, cfg.tol);
  if (cfg.format == "json") {
    json doc = json::parse(table_json(setup, cells));
    if (id == 2) {
      doc["absence_checks"] = json::array();
      for (const AbsenceCheck& a : table2_absence_checks()) {
        doc["absence_checks"].push_back({{"q", a.q},
                                         {"alpha", a.column.alpha},
                                         {"n", a.column.n},
                                         {"case", to_string(a.column.coupling)},
                                         {"roots", a.roots},
                                         {"capacity_nmax", a.capacity_nmax ? json(*a.capacity_nmax) : json(nullptr)},
                                         {"holds", a.holds}});
      }
    }
    out << doc.dump(2) << "\n";
  } else {
    out << table_csv(cells, setup.m0);
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

void verify_single(const RunConfig& cfg, std::vector<Check>& checks, json& doc) {
  const SingleRun run = single_run(cfg);
  const PotentialParams& p = run.params;
  const QuantumState& s = run.state;
  const double m0 = p.m0();

  SolveOptions sopts;
  sopts.residual_tolerance = cfg.tol;
  const std::vector<EnergyLevel> roots = solve_levels(p, s, sopts);
  std::string constraint;
  const std::vector<EnergyLevel> formula = closed_form(p, s, Acceptance::formula, cfg.tol, constraint);

  json sec;
  sec["parameters"] = params_json(p, s);
  sec["residual_roots"] = json::array();
  for (const EnergyLevel& l : roots) sec["residual_roots"].push_back(level_json(l, m0));
  sec["closed_form_candidates"] = json::array();
  for (const EnergyLevel& l : formula) sec["closed_form_candidates"].push_back(level_json(l, m0));
  sec["constraint_violated"] = constraint.empty() ? json(nullptr) : json(constraint);

  // every verified candidate must be a residual root and vice versa
  for (const EnergyLevel& c : formula) {
    if (!c.verified) continue;
    const bool found = std::any_of(roots.begin(), roots.end(), [&](const EnergyLevel& r) {
      return std::abs(r.energy - c.energy) <= 1e-9 * m0;
    });
    checks.push_back({"closed form in residual roots", found, "E=" + format_energy(c.energy / m0)});
  }
  for (const EnergyLevel& r : roots) {
    const bool found = std::any_of(formula.begin(), formula.end(), [&](const EnergyLevel& c) {
      return c.verified && std::abs(r.energy - c.energy) <= 1e-9 * m0;
    });
    checks.push_back({"residual root has a closed form", found, "E=" + format_energy(r.energy / m0)});
  }

  // shooting oracle on the residual roots
  const std::vector<ReportRow> rows = approximation_report(p, s.centrifugal(), roots);
  sec["oracle"] = json::array();
  for (const ReportRow& r : rows) {
    sec["oracle"].push_back({{"E_closed", r.e_closed / m0},
                             {"E_approx_oracle", number_or_null(r.e_approx)},
                             {"E_exact_oracle", number_or_null(r.e_exact)},
                             {"delta_approx", number_or_null(r.delta_approx)},
                             {"delta_exact", number_or_null(r.delta_exact)},
                             {"exact_supported", r.exact_supported},
                             {"outside_validity", r.outside_validity},
                             {"note", r.note}});
    checks.push_back({"oracle agrees with residual root", r.e_approx && r.delta_approx <= 1e-6 * m0,
                      "E=" + format_energy(r.e_closed / m0) + " delta=" + fmt(r.delta_approx)});
  }

  // constraint audit
  json audit;
  try {
    const DerivedParams d = derived_params(p, s, 0.0);
    audit["a_radicand"] = d.a_radicand;
    audit["delta"] = d.delta;
  } catch (const NonRealA& e) {
    audit["a_radicand"] = e.radicand;
  }
  if (p.s0() == 0.0) {
    const LevelCapacity cap = level_capacity(p, s.centrifugal());
    audit["capacity_bound"] = number_or_null(cap.bound);
    audit["capacity_nmax"] = cap.n_max ? json(*cap.n_max) : json(nullptr);
    audit["existence_condition"] = cap.existence_condition;
  }
  sec["constraint_audit"] = audit;
  doc["parameter_set"] = sec;
}

void verify_tables(const RunConfig& cfg, std::vector<Check>& checks, json& doc) {
  json sec = json::array();
  for (int id : {1, 2}) {
    const TableSetup setup = table_from_config(id, cfg);
    const std::vector<TableCell> cells = compute_table(setup, Execution::parallel, cfg.tol);

    std::vector<json> oracle(cells.size());
    for_each_index(cells.size(), Execution::parallel, [&](std::size_t i) {
      const TableCell& c = cells[i];
      if (!c.energy) return;
      const PotentialParams p = cell_params(setup, c.q, c.column);
      const CentrifugalSpec cs(setup.dim, setup.l);
      OracleOptions opts;
      opts.execution = Execution::serial;
      const auto lvl = nearest_level(p, cs, CentrifugalMode::approx, *c.energy, 1e-2, opts);
      const double delta = lvl ? std::abs(lvl->energy - *c.energy) : std::nan("");
      oracle[i] = {{"E_oracle", lvl ? json(lvl->energy) : json(nullptr)},
                   {"delta", number_or_null(delta)}};
    });

    int matched = 0, slack = 0, verified = 0, oracle_ok = 0, feasible = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const TableCell& c = cells[i];
      json row{{"table", id},
               {"q", c.q},
               {"alpha", c.column.alpha},
               {"n", c.column.n},
               {"case", to_string(c.column.coupling)},
               {"E", number_or_null(c.energy)},
               {"reference", number_or_null(c.reference)},
               {"residual", number_or_null(c.residual)},
               {"residual_verified", c.residual_verified}};
      std::string where = "table" + std::to_string(id) + " q=" + fmt(c.q, "%g") +
                          " alpha=" + fmt(c.column.alpha, "%g") + " n=" + std::to_string(c.column.n) +
                          " " + to_string(c.column.coupling);
      const bool dash_ok = c.energy.has_value() == c.reference.has_value();
      bool value_ok = dash_ok;
      if (c.energy && c.reference) {
        const double d = std::abs(*c.energy / setup.m0 - *c.reference);
        value_ok = d <= 1e-4;
        row["delta_reference"] = d;
        if (d > 1e-6) {
          ++slack;
          row["needs_rounding_slack"] = true;
        }
      }
      matched += value_ok;
      checks.push_back({"table cell matches reference", value_ok, where});
      if (c.energy) {
        ++feasible;
        verified += c.residual_verified;
        row["oracle"] = oracle[i];
        const bool ok = oracle[i]["delta"].is_number() &&
                        oracle[i]["delta"].get<double>() <= 1e-6 * setup.m0;
        oracle_ok += ok;
        checks.push_back({"table cell oracle equivalence", ok, where});
      }
      sec.push_back(row);
    }
    doc["table" + std::to_string(id) + "_summary"] = {{"cells", cells.size()},
                                                      {"feasible", feasible},
                                                      {"reference_matches", matched},
                                                      {"needs_rounding_slack", slack},
                                                      {"residual_verified", verified},
                                                      {"oracle_agrees", oracle_ok}};
  }
  doc["table_cells"] = sec;

  json absence = json::array();
  for (const AbsenceCheck& a : table2_absence_checks()) {
    absence.push_back({{"q", a.q},
                       {"alpha", a.column.alpha},
                       {"n", a.column.n},
                       {"case", to_string(a.column.coupling)},
                       {"roots", a.roots},
                       {"holds", a.holds}});
    checks.push_back({"table2 absence claim", a.holds,
                      "q=" + fmt(a.q, "%g") + " alpha=" + fmt(a.column.alpha, "%g") +
                          " n=" + std::to_string(a.column.n) + " " + to_string(a.column.coupling)});
  }
  doc["absence_checks"] = absence;
}

void verify_normalisation(json& doc) {
  json rows = json::array();
  struct Case {
    int j, lj, lprev;
  };
  for (Case c : {Case{2, 1, 0}, Case{2, 2, 1}, Case{3, 2, 0}, Case{3, 3, 2}, Case{4, 2, 1}}) {
    const double numeric = angular_norm(c.j, c.lj, c.lprev);
    const double printed = angular_norm_printed(c.j, c.lj, c.lprev);
    rows.push_back({{"j", c.j},
                    {"l_j", c.lj},
                    {"l_j_minus_1", c.lprev},
                    {"quadrature", numeric},
                    {"printed_gamma_form", number_or_null(printed)},
                    {"ratio", number_or_null(printed / numeric)}});
  }
  for (Case c : {Case{3, 1, 0}, Case{3, 2, 1}, Case{4, 2, 0}, Case{5, 1, 1}}) {
    const double numeric = angular_norm(c.j - 1, c.lj, c.lprev);
    const double printed = angular_norm_last_printed(c.j, c.lj, c.lprev);
    rows.push_back({{"dim", c.j},
                    {"l", c.lj},
                    {"l_dm2", c.lprev},
                    {"quadrature", numeric},
                    {"printed_gamma_form", number_or_null(printed)},
                    {"ratio", number_or_null(printed / numeric)}});
  }
  doc["angular_normalisation"] = rows;
}

void verify_woods_saxon(json& doc) {
  json rows = json::array();
  struct Case {
    int dim;
    double alpha, v0;
  };
  for (Case c : {Case{1, 1.0, 0.2}, Case{2, 20.0, 0.1}, Case{3, 1.0, 0.1}}) {
    const PotentialParams p(c.v0, 0.0, c.alpha, -1.0);
    const CentrifugalSpec cs(c.dim, 0);
    const LevelCapacity cap = ws_level_capacity(p, cs);
    std::size_t roots = 0;
    for (int n = 0; n <= 3; ++n) {
      SolveOptions o;
      o.branch = DeltaBranch::plus;
      roots += solve_levels(p, QuantumState(n, 0, c.dim), o).size();
    }
    rows.push_back({{"dim", c.dim},
                    {"alpha", c.alpha},
                    {"v0", c.v0},
                    {"capacity_bound", number_or_null(cap.bound)},
                    {"capacity_nmax", cap.n_max ? json(*cap.n_max) : json(nullptr)},
                    {"existence_condition", cap.existence_condition},
                    {"residual_roots_n0_to_3", roots},
                    {"consistent", (cap.n_max ? *cap.n_max + 1 : 0) == static_cast<int>(roots)}});
  }
  doc["woods_saxon_capacity"] = rows;
  doc["woods_saxon_note"] =
      "the printed level bound is compared with the residual scan; disagreements are reported, "
      "not counted as failures";
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<Check> checks;
  json doc;
  doc["command"] = "verify";
  verify_single(cfg, checks, doc);
  verify_tables(cfg, checks, doc);
  verify_normalisation(doc);
  verify_woods_saxon(doc);

  const auto failures = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; });
  doc["checks"] = checks.size();
  doc["failures"] = failures;
  json failed = json::array();
  for (const Check& c : checks)
    if (!c.pass) failed.push_back({{"check", c.name}, {"detail", c.detail}});
  doc["failed_checks"] = failed;

  if (cfg.format == "json") {
    out << doc.dump(2) << "\n";
  } else {
    out << "check,status,detail\n";
    for (const Check& c : checks) out << c.name << "," << (c.pass ? "pass" : "FAIL") << "," << c.detail << "\n";
  }
  return failures == 0 ? kExitOk : kExitVerificationFailed;
}

} // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
      throw InvalidConfig(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& entries,
                  const std::vector<std::string>& given) {
  for (const auto& [key, value] : entries) {
    if (std::find(given.begin(), given.end(), key) != given.end()) continue;
    if (key == "v0") cfg.v0 = to_double(key, value);
    else if (key == "s0") cfg.s0 = to_double(key, value);
    else if (key == "alpha") cfg.alpha = to_double(key, value);
    else if (key == "q") cfg.q = to_double(key, value);
    else if (key == "mass") cfg.mass = to_double(key, value);
    else if (key == "tol") cfg.tol = to_double(key, value);
    else if (key == "dim") cfg.dim = to_int(key, value);
    else if (key == "l") cfg.l = to_int(key, value);
    else if (key == "n") cfg.n = to_int(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "format") {
      if (value != "csv" && value != "json") throw InvalidConfig("format must be csv or json");
      cfg.format = value;
    } else {
      throw InvalidConfig("unknown key '" + key + "'");
    }
  }
}

std::string format_energy(double e) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", e);
  return buf;
}

std::string table_csv(const std::vector<TableCell>& cells, double m0) {
  std::ostringstream os;
  os << "q,alpha,n,case,E\n";
  for (const TableCell& c : cells) {
    os << fmt(c.q, "%g") << "," << fmt(c.column.alpha, "%g") << "," << c.column.n << ","
       << to_string(c.column.coupling) << "," << (c.energy ? format_energy(*c.energy / m0) : "-")
       << "\n";
  }
  return os.str();
}

std::string table_json(const TableSetup& setup, const std::vector<TableCell>& cells) {
  json doc;
  doc["table"] = setup.id;
  doc["energy_unit"] = "m0";
  doc["metadata"] = {{"m0", setup.m0},
                     {"vector_coupling", setup.vector_coupling},
                     {"scalar_coupling", setup.scalar_coupling},
                     {"dim", setup.dim},
                     {"l", setup.l},
                     {"evaluation", "explicit particle-branch formula, residual recorded"},
                     {"residual_tolerance", kResidualTolerance}};
  doc["cells"] = json::array();
  for (const TableCell& c : cells) {
    json row{{"q", c.q},
             {"alpha", c.column.alpha},
             {"n", c.column.n},
             {"case", to_string(c.column.coupling)}};
    if (c.energy) {
      row["E"] = *c.energy / setup.m0;
      row["display"] = format_energy(*c.energy / setup.m0);
      row["branch"] = "particle";
      row["residual"] = number_or_null(c.residual);
      row["residual_verified"] = c.residual_verified;
    } else {
      row["E"] = nullptr;
      row["display"] = "-";
      row["reason"] = c.reason;
    }
    row["reference"] = number_or_null(c.reference);
    doc["cells"].push_back(row);
  }
  return doc.dump(2) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Klein-Gordon bound states in general Hulthen-type potentials"};
  app.require_subcommand(1);

  RunConfig cfg;
  double v0 = 0.25, s0 = 0.0;
  std::string config_path;
  const std::vector<std::pair<std::string, std::string>> subs{
      {"table1", "ground-state energy table"},
      {"table2", "excited-state energy table"},
      {"solve", "energy levels for one parameter set"},
      {"verify", "closed form vs residual roots vs shooting oracle report"},
      {"wavefunction", "sampled radial eigenfunction"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--v0", v0, "vector coupling");
    sub->add_option("--s0", s0, "scalar coupling");
    sub->add_option("--alpha", cfg.alpha, "screening parameter");
    sub->add_option("--q", cfg.q, "deformation parameter");
    sub->add_option("--dim", cfg.dim, "spatial dimension");
    sub->add_option("--l", cfg.l, "orbital quantum number");
    sub->add_option("--n", cfg.n, "radial quantum number");
    sub->add_option("--mass", cfg.mass, "rest mass m0");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output file");
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--tol", cfg.tol, "residual tolerance (relative to m0)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg.mode = sub->get_name();
  std::vector<std::string> given;
  for (const char* key : {"v0", "s0", "alpha", "q", "dim", "l", "n", "mass", "format", "out", "tol"})
    if (sub->get_option(std::string("--") + key)->count() > 0) given.emplace_back(key);
  if (sub->get_option("--v0")->count() > 0) cfg.v0 = v0;
  if (sub->get_option("--s0")->count() > 0) cfg.s0 = s0;

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    if (!config_path.empty()) apply_config(cfg, read_config_file(config_path), given);
    if (!(cfg.tol > 0.0)) throw InvalidConfig("tol must be > 0");
    // validate the parameter set up front so bad input maps to exit code 2
    if (cfg.mode == "solve" || cfg.mode == "verify" || cfg.mode == "wavefunction")
      (void)single_run(cfg);
    else
      (void)PotentialParams(cfg.v0.value_or(0.25), cfg.s0.value_or(0.25), 1.0, 1.0, cfg.mass);
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw InvalidConfig("cannot open output file '" + cfg.out + "'");
      sink = &file;
    }
  } catch (const InvalidConfig& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const InvalidQuantumNumbers& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    if (cfg.mode == "table1") return cmd_table(1, cfg, *sink);
    if (cfg.mode == "table2") return cmd_table(2, cfg, *sink);
    if (cfg.mode == "solve") return cmd_solve(cfg, *sink, err);
    if (cfg.mode == "wavefunction") return cmd_wavefunction(cfg, *sink, err);
    return cmd_verify(cfg, *sink);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace kgh::cli
