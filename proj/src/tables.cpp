#include "kgh/tables.hpp"

#include "kgh/errors.hpp"
#include "kgh/sweep.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace kgh {

namespace {

constexpr double kDash = std::numeric_limits<double>::quiet_NaN();

const std::vector<double> kQGrid{0.1, 0.5, 1.0, 1.5, 2.0, 2.5, 5.0, 7.5, 10.0};

// Rows follow kQGrid; columns follow the setups below.
constexpr std::array<std::array<double, 6>, 9> kTable1{{
    {kDash, kDash, kDash, 0.755639, 0.947484, 0.946410},
    {kDash, 0.911438, 0.500000, 0.929812, 0.996314, 0.645297},
    {0.820971, 0.970804, 0.250000, 0.986425, 0.964541, 0.480683},
    {0.991673, 0.940945, 0.166683, 0.998606, 0.941246, 0.398341},
    {0.999840, 0.923893, 0.125000, 0.999903, 0.926256, 0.347332},
    {0.999140, 0.913089, 0.100000, 0.998350, 0.916087, 0.311871},
    {0.988667, 0.890301, 0.050000, 0.988537, 0.892966, 0.222136},
    {0.982893, 0.882371, 0.033334, 0.982996, 0.884414, 0.181787},
    {0.979613, 0.878345, 0.025000, 0.979771, 0.879977, 0.157607},
}};

constexpr std::array<std::array<double, 6>, 9> kTable2{{
    {kDash, kDash, kDash, 0.995674, 0.771938, 0.922413},
    {kDash, 0.830948, kDash, 0.984202, 0.571823, 0.829156},
    {0.996421, 0.347292, 0.880588, 0.954903, 0.450227, 0.779514},
    {0.949420, 0.229259, 0.769589, 0.935491, 0.381304, 0.752337},
    {0.928534, 0.171407, 0.737131, 0.922604, 0.336188, 0.735135},
    {0.916027, 0.136934, 0.719697, 0.913600, 0.303882, 0.723317},
    {0.891025, 0.068342, 0.688449, 0.892282, 0.219316, 0.695608},
    {0.882692, 0.045546, 0.678994, 0.884103, 0.180255, 0.684996},
    {0.878525, 0.034156, 0.674438, 0.879801, 0.156613, 0.679406},
}};

bool same(const TableColumn& a, const TableColumn& b) {
  return a.coupling == b.coupling && a.alpha == b.alpha && a.n == b.n;
}

} // namespace

std::string to_string(CouplingCase c) {
  return c == CouplingCase::pure_vector ? "pure_vector" : "pure_scalar";
}

TableSetup table1_setup() {
  TableSetup s;
  s.id = 1;
  s.q_values = kQGrid;
  for (CouplingCase c : {CouplingCase::pure_vector, CouplingCase::pure_scalar})
    for (double a : {0.5, 1.0, 2.0}) s.columns.push_back({c, a, 0});
  return s;
}

TableSetup table2_setup() {
  TableSetup s;
  s.id = 2;
  s.q_values = kQGrid;
  for (CouplingCase c : {CouplingCase::pure_vector, CouplingCase::pure_scalar}) {
    s.columns.push_back({c, 0.5, 1});
    s.columns.push_back({c, 1.0, 1});
    s.columns.push_back({c, 0.5, 2});
  }
  return s;
}

std::optional<double> reference_value(int table_id, double q, const TableColumn& col) {
  const TableSetup setup = table_id == 1 ? table1_setup() : table2_setup();
  const auto& data = table_id == 1 ? kTable1 : kTable2;
  for (std::size_t r = 0; r < kQGrid.size(); ++r) {
    if (kQGrid[r] != q) continue;
    for (std::size_t c = 0; c < setup.columns.size(); ++c) {
      if (!same(setup.columns[c], col)) continue;
      const double v = data[r][c];
      if (std::isnan(v)) return std::nullopt;
      return v;
    }
  }
  return std::nullopt;
}

PotentialParams cell_params(const TableSetup& setup, double q, const TableColumn& col) {
  const double v0 = col.coupling == CouplingCase::pure_vector ? setup.vector_coupling : 0.0;
  const double s0 = col.coupling == CouplingCase::pure_scalar ? setup.scalar_coupling : 0.0;
  return {v0, s0, col.alpha, q, setup.m0};
}

std::vector<TableCell> compute_table(const TableSetup& setup, Execution exec,
                                     double residual_tolerance) {
  const std::size_t ncol = setup.columns.size();
  std::vector<TableCell> cells(setup.q_values.size() * ncol);
  for_each_index(cells.size(), exec, [&](std::size_t idx) {
    const double q = setup.q_values[idx / ncol];
    const TableColumn& col = setup.columns[idx % ncol];
    TableCell cell{q, col, std::nullopt, "", 0.0, false, std::nullopt};
    const bool defaults = setup.vector_coupling == 0.25 && setup.scalar_coupling == 0.25 &&
                          setup.m0 == 1.0 && setup.dim == 1 && setup.l == 0;
    if (defaults) cell.reference = reference_value(setup.id, q, col);

    const PotentialParams p = cell_params(setup, q, col);
    const QuantumState s(col.n, setup.l, setup.dim);
    try {
      const std::vector<EnergyLevel> levels =
          col.coupling == CouplingCase::pure_vector
              ? energy_pure_vector(p, s, Acceptance::formula, residual_tolerance)
              : energy_pure_scalar(p, s, Acceptance::formula, residual_tolerance);
      for (const EnergyLevel& lvl : levels) {
        if (lvl.branch != Branch::particle || lvl.kappa_sign != +1) continue;
        cell.energy = lvl.energy;
        cell.residual = lvl.residual;
        cell.residual_verified = lvl.verified;
      }
      if (!cell.energy) cell.reason = "no particle-branch candidate";
    } catch (const ConstraintViolated& e) {
      cell.reason = e.inequality;
    }
    cells[idx] = cell;
  });
  return cells;
}

std::vector<AbsenceCheck> table2_absence_checks(Execution exec) {
  std::vector<TableColumn> cols;
  for (CouplingCase c : {CouplingCase::pure_vector, CouplingCase::pure_scalar}) {
    cols.push_back({c, 2.0, 1});
    cols.push_back({c, 1.0, 2});
    cols.push_back({c, 2.0, 2});
  }
  const TableSetup setup = table2_setup();
  std::vector<AbsenceCheck> out;
  for (double q : setup.q_values)
    for (const TableColumn& c : cols) out.push_back({q, c, 0, std::nullopt, false});

  SolveOptions opts;
  opts.execution = Execution::serial;
  for_each_index(out.size(), exec, [&](std::size_t i) {
    AbsenceCheck& a = out[i];
    const PotentialParams p = cell_params(setup, a.q, a.column);
    const QuantumState s(a.column.n, setup.l, setup.dim);
    a.roots = solve_levels(p, s, opts).size();
    if (a.column.coupling == CouplingCase::pure_vector)
      a.capacity_nmax = level_capacity(p, s.centrifugal()).n_max;
    a.holds = a.roots == 0;
  });
  return out;
}

} // namespace kgh
